#pragma once
#include <iosfwd>

namespace regvec::cli {

enum ExitCode {
    kOk = 0,
    kInternal = 1,
    kParse = 2,
    kContract = 3,
    kNumeric = 4,
    kVerification = 5,
};

// Whole command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace regvec::cli
