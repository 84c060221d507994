#pragma once

#include <stdexcept>
#include <string>

namespace cmhd {

/// A run that started from valid inputs but hit a fatal condition mid-flight
/// (density floor breach, non-finite field). Distinct from invalid_argument
/// so the CLI can map it to its own exit code.
struct RuntimeAbort : std::runtime_error {
    int step = -1;
    RuntimeAbort(const std::string& msg, int step_ = -1)
        : std::runtime_error(msg), step(step_) {}
};

} // namespace cmhd
