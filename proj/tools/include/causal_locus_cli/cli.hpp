#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace causal::cli {

enum ExitCode { kOk = 0, kParse = 2, kValidation = 3, kNumeric = 4 };

// Runs one command. The report goes to out, diagnostics and error objects to
// err. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace causal::cli
