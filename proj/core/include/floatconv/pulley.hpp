#pragma once

#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "floatconv/characteristic.hpp"

namespace floatconv {

constexpr double deg_to_rad(double deg) { return deg * (std::numbers::pi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / std::numbers::pi); }

struct PolarSample {
    double theta;  // rad
    double r;  // m
};

/**
 * Sampled polar curve r(theta) of a non-circular pulley, paired with the
 * radius R of the circular pulley that maps rotation to spring displacement.
 *
 * Samples start at theta = 0 and are uniformly spaced up to theta_max.
 * Between samples the radius is linearly interpolated, so payout (the
 * integral of r) is exact for affine profiles.
 */
class PulleyProfile {
public:
    /// Validates the sample grid; `slope` is the affine coefficient when r = slope * theta.
    PulleyProfile(double circular_radius, std::vector<PolarSample> samples,
                  std::optional<double> slope = std::nullopt);

    double circular_radius() const noexcept { return circular_radius_; }
    std::span<const PolarSample> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    double theta_max() const noexcept { return samples_.back().theta; }
    std::optional<double> slope() const noexcept { return slope_; }
    /// Clamp bounds of a truncated affine profile, r = clamp(a theta, lo, hi).
    std::optional<std::pair<double, double>> affine_bounds() const noexcept { return bounds_; }

    double radius_at(double theta) const;
    /// Cable length released by rotating from 0 to theta.
    double payout(double theta) const;
    /// Length of the pulley rim curve from 0 to theta; derivatives come from
    /// central differences on the sample grid.
    double arc_length(double theta, int panels = 2048) const;

private:
    friend PulleyProfile truncate_profile(const PulleyProfile&, double, double);

    double checked(double theta) const;
    std::size_t segment(double theta) const;
    double affine_radius(double theta) const;
    double affine_payout(double theta) const;

    double circular_radius_;
    std::vector<PolarSample> samples_;
    std::optional<double> slope_;
    std::optional<double> affine_;  // a of r = clamp(a theta, lo, hi)
    std::optional<std::pair<double, double>> bounds_;
    std::vector<double> cumulative_payout_;
    std::vector<double> node_slope_;  // dr/dtheta at each sample
};

enum class CounterKind { weight, spring };

/// Load that pulls the cable wound on the non-circular pulley.
class CounterElement {
public:
    /// Dead weight of magnitude `load` (mg, N).
    static CounterElement weight(double load);
    /// Secondary spring with tension t0 + k2 * payout.
    static CounterElement spring(double t0, double k2);

    CounterKind kind() const noexcept { return kind_; }
    double load() const noexcept { return load_; }
    double pretension() const noexcept { return t0_; }
    double stiffness() const noexcept { return k2_; }

    /// Cable tension after `payout` metres of cable have been released.
    double tension(double payout) const noexcept;
    /// Energy the counter element has released over `payout` metres.
    double released_energy(double payout) const noexcept;

private:
    CounterElement(CounterKind kind, double load, double t0, double k2)
        : kind_(kind), load_(load), t0_(t0), k2_(k2) {}

    CounterKind kind_;
    double load_ = 0.0;
    double t0_ = 0.0;
    double k2_ = 0.0;
};

/// theta = x / R.
double angle_for_displacement(double circular_radius, double x);
/// x = R * theta.
double displacement_for_angle(double circular_radius, double theta);

inline constexpr int default_profile_samples = 512;
inline constexpr int default_spring_steps = 2048;

/**
 * Profile that makes a dead weight `load` balance `target` at every angle:
 * r(theta) = R * F(R theta) / load. For a linear target the result is the
 * affine spiral r = a theta with a = k R^2 / load.
 *
 * theta_max defaults to target.x_max() / R.
 */
PulleyProfile synthesize_weight_counter(const ForceCharacteristic& target, double circular_radius,
                                        double load, int n_samples = default_profile_samples,
                                        std::optional<double> theta_max = std::nullopt);

/**
 * Profile balancing `target` against a secondary spring whose tension grows
 * with the paid-out cable. Integrates ds/dtheta = R F(R theta) / (T0 + k2 s)
 * with classical RK4 over n_steps uniform steps and samples r at each node.
 * The result is checked against realized_force within 1e-6 of peak force.
 */
PulleyProfile synthesize_spring_counter(const ForceCharacteristic& target, double circular_radius,
                                        const CounterElement& counter, int n_steps = default_spring_steps,
                                        std::optional<double> theta_max = std::nullopt);

/// Force the counter element exerts on the spring side: r(theta) T / R.
double realized_force(const PulleyProfile& profile, const CounterElement& counter, double theta);

inline double payout(const PulleyProfile& profile, double theta) { return profile.payout(theta); }

inline double arc_length(const PulleyProfile& profile, double theta, int panels = 2048) {
    return profile.arc_length(theta, panels);
}

/// Clamp every radius into [r_min, r_max], modelling a pulley that cannot be
/// fabricated below or above those radii. The theta grid is unchanged; an
/// affine input keeps its exact law, so the clamp corners are not smoothed
/// by interpolation.
PulleyProfile truncate_profile(const PulleyProfile& profile, double r_min,
                               double r_max = std::numeric_limits<double>::infinity());

/// F(R theta) - realized_force(theta); zero where the balance condition holds.
double balance_residual(const PulleyProfile& profile, const CounterElement& counter,
                        const ForceCharacteristic& target, double theta);

}  // namespace floatconv
