#pragma once

#include "pathmoments/numeric.hpp"

#include <chrono>
#include <cstdlib>
#include <optional>
#include <string>

namespace pathmoments {

struct resource_budget_exceeded : error {
    using error::error;
};

/// Wall-clock deadline polled by long-running loops. A default-constructed
/// budget never expires.
class budget {
public:
    using clock = std::chrono::steady_clock;

    budget() = default;
    explicit budget(std::chrono::duration<double> limit)
        : deadline_(clock::now() + std::chrono::duration_cast<clock::duration>(limit)) {}

    /// Reads PATHMOMENTS_BUDGET_SECONDS; unset or empty means unlimited.
    static budget from_environment() {
        const char* raw = std::getenv("PATHMOMENTS_BUDGET_SECONDS");
        if (raw == nullptr || *raw == '\0') return {};
        char* end = nullptr;
        double seconds = std::strtod(raw, &end);
        if (end == raw || *end != '\0' || !(seconds >= 0))
            throw precondition_error("PATHMOMENTS_BUDGET_SECONDS must be a nonnegative number");
        return budget(std::chrono::duration<double>(seconds));
    }

    bool expired() const { return deadline_ && clock::now() >= *deadline_; }

    void check(const char* what) const {
        if (expired()) throw resource_budget_exceeded(std::string("compute budget exhausted during ") + what);
    }

private:
    std::optional<clock::time_point> deadline_;
};

}  // namespace pathmoments
