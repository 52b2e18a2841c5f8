#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace floatconv::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 1;
inline constexpr int exit_numerical = 2;

struct VerifyReport {
    double max_residual;  // N, over the sample nodes
    double force_tolerance;  // N
    double energy_error;  // relative to the largest stored energy on the stroke
    double energy_tolerance;

    bool passed() const noexcept { return max_residual <= force_tolerance && energy_error <= energy_tolerance; }
};

/**
 * Balance and energy check of a profile against the configured spring and
 * counter. Tolerances are 1e-9 of peak force (1e-6 for spring counters,
 * matching their synthesis check) and 1e-6 relative energy, each widened by
 * the rounding bound of a 6-decimal profile file and the trapezoid bound of
 * the sampled payout.
 */
VerifyReport verify_profile(const RunConfig& config, const PulleyProfile& profile);

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace floatconv::cli
