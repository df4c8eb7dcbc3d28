#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "opuc/scalar.hpp"
#include "opuc/verblunsky.hpp"

namespace opuc::cli {

enum ExitCode : int { kPass = 0, kVerifyFail = 1, kUsage = 2 };

/// "re,im" or a bare real.
cplx parse_complex(const std::string& text, const std::string& field);

/// A JSON list of [re, im] pairs, or {"alpha": [...], "terminal_unimodular": bool}.
VerblunskyData parse_coefficients(const std::string& json_text);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opuc::cli
