#pragma once

#include <ostream>

namespace bicrypt::cli {

/// Process exit status of the bicrypt tool.
enum ExitCode : int {
    kOk = 0,
    /// verify: encrypted and plain paths disagree.
    kVerifyFailed = 1,
    /// Bad command line or an operation used out of contract.
    kUsage = 2,
    kParameter = 3,
    kCapacity = 4,
    kDepthBudget = 5,
    kShape = 6,
    kIndex = 7,
    kIngestion = 8,
    /// verify: the trace shows HE work or ciphertext flow inside the plaintext branch.
    kTaintFailed = 9,
    kInternal = 70,
};

/// Runs one command. Human-readable output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bicrypt::cli
