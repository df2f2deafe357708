#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace finsleroid::cli {

enum ExitCode : int { ok = 0, check_failed = 1, bad_input = 2, geometric = 3, io_error = 4 };

// Entry point shared by the executable and the tests. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Number formatting used by every emitter.
std::string shortest(double x);   // shortest round-trip
std::string sig17(double x);      // 17 significant digits
std::string fixed6(double x);     // SVG coordinates

}  // namespace finsleroid::cli
