#pragma once

#include <stdexcept>

namespace tss3 {

// Model or call-site misuse detected at build/validation time (bad
// hyperparameters, too few categories, wrong binary setup).
struct ConfigurationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failure; the message carries the offending path.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Model file rejected: bad syntax, truncated content or a failed
// structural invariant. Nothing is partially loaded.
struct CorruptModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Model file declares a format version this build does not understand.
struct UnsupportedVersionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tss3
