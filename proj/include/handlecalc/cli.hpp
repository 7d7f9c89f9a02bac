#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace handlecalc::cli {

enum class Verbosity {
    Full,     // report block, then summary
    Report,   // report block only
    Summary,  // summary only
};

/// Reads HANDLECALC_REPORT ("full", "report", "summary"); Full when unset or unknown.
Verbosity verbosity_from_env();

/// Runs one command. `args` excludes the program name. File arguments may be
/// "-" for `in`. Returns 0 on success, 1 on a negative verdict (FAIL,
/// not equivalent within bound, violated implication), 2 on bad input or any
/// other error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        Verbosity verbosity = Verbosity::Full);

}  // namespace handlecalc::cli
