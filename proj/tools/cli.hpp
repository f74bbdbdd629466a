#pragma once

#include <ostream>

namespace combandit::cli {

/// Entry point of the dartbench tool. Exit codes: 0 success, 1 configuration
/// or usage error, 2 runtime failure (including a failed verify suite).
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace combandit::cli
