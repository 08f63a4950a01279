// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <span>

namespace irtune {

/// Counters for numerical guards taken while scoring. Shared across threads.
struct ScoreDiagnostics {
    std::atomic<std::uint64_t> clamped_logs{0};
    std::atomic<std::uint64_t> floored_terms{0};

    void merge_from(const ScoreDiagnostics& other) {
        clamped_logs += other.clamped_logs.load();
        floored_terms += other.floored_terms.load();
    }
};

/// Arguments of log/log2 at or below zero are clamped to this value.
inline constexpr double kLogClamp = 1e-10;

inline double clamp_log_arg(double x, ScoreDiagnostics* diag) {
    if (x <= 0.0) {
        if (diag != nullptr) diag->clamped_logs.fetch_add(1, std::memory_order_relaxed);
        return kLogClamp;
    }
    return x;
}

inline double safe_ln(double x, ScoreDiagnostics* diag) { return std::log(clamp_log_arg(x, diag)); }

inline double safe_log2(double x, ScoreDiagnostics* diag) {
    return std::log2(clamp_log_arg(x, diag));
}

/// Population standard deviation (denominator n, not n-1).
inline double population_stddev(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size()));
}

}  // namespace irtune
