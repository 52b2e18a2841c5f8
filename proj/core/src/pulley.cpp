#include "floatconv/pulley.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "floatconv/error.hpp"

namespace floatconv {

namespace {

constexpr double domain_slop = 1e-12;
// Tolerated deviation from uniform spacing, as a fraction of the mean step.
// Profiles read back from 6-decimal CSV carry rounding in theta.
constexpr double spacing_tolerance = 1e-4;
constexpr double spring_verify_tolerance = 1e-6;

void require_positive(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0)
        throw ValidationError(std::string(name) + " must be finite and > 0, got " + std::to_string(v));
}

double resolve_theta_max(const ForceCharacteristic& target, double circular_radius,
                         std::optional<double> theta_max) {
    const double natural = target.x_max() / circular_radius;
    if (!theta_max) return natural;
    require_positive(*theta_max, "theta_max");
    if (*theta_max * circular_radius > target.x_max() * (1.0 + domain_slop))
        throw DomainError("target domain " + std::to_string(target.x_max()) + " m is shorter than R * theta_max = " +
                          std::to_string(*theta_max * circular_radius) + " m");
    return *theta_max;
}

double grid_theta(double theta_max, int i, int n_intervals) {
    return i == n_intervals ? theta_max : theta_max * i / n_intervals;
}

}  // namespace

// ---------------------------------------------------------------- profile

PulleyProfile::PulleyProfile(double circular_radius, std::vector<PolarSample> samples,
                             std::optional<double> slope)
    : circular_radius_(circular_radius), samples_(std::move(samples)), slope_(slope), affine_(slope) {
    require_positive(circular_radius_, "circular pulley radius R");
    if (samples_.size() < 2) throw ValidationError("pulley profile needs at least 2 samples");
    if (samples_.front().theta != 0.0) throw ValidationError("pulley profile must start at theta = 0");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto& s = samples_[i];
        if (!std::isfinite(s.theta) || !std::isfinite(s.r))
            throw ValidationError("non-finite pulley sample " + std::to_string(i));
        if (s.r < 0.0) throw ValidationError("negative pulley radius at sample " + std::to_string(i));
        if (i > 0 && !(s.theta > samples_[i - 1].theta))
            throw ValidationError("pulley theta must be strictly increasing (sample " + std::to_string(i) + ")");
    }
    const double step = theta_max() / static_cast<double>(samples_.size() - 1);
    for (std::size_t i = 1; i < samples_.size(); ++i) {
        const double d = samples_[i].theta - samples_[i - 1].theta;
        if (std::abs(d - step) > spacing_tolerance * step)
            throw ValidationError("pulley theta spacing is not uniform at sample " + std::to_string(i));
    }

    const std::size_t n = samples_.size();
    cumulative_payout_.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        const double h = samples_[i].theta - samples_[i - 1].theta;
        cumulative_payout_[i] = cumulative_payout_[i - 1] + 0.5 * h * (samples_[i].r + samples_[i - 1].r);
    }

    node_slope_.resize(n);
    node_slope_.front() = (samples_[1].r - samples_[0].r) / (samples_[1].theta - samples_[0].theta);
    node_slope_.back() = (samples_[n - 1].r - samples_[n - 2].r) / (samples_[n - 1].theta - samples_[n - 2].theta);
    for (std::size_t i = 1; i + 1 < n; ++i)
        node_slope_[i] = (samples_[i + 1].r - samples_[i - 1].r) / (samples_[i + 1].theta - samples_[i - 1].theta);
}

double PulleyProfile::checked(double theta) const {
    const double tmax = theta_max();
    const double slop = domain_slop * tmax;
    if (!(theta >= -slop && theta <= tmax + slop))
        throw DomainError("angle " + std::to_string(theta) + " rad outside [0, " + std::to_string(tmax) + "] rad");
    return std::clamp(theta, 0.0, tmax);
}

// Index i of the segment [theta_i, theta_i+1] containing theta.
std::size_t PulleyProfile::segment(double theta) const {
    auto hi = std::upper_bound(samples_.begin(), samples_.end(), theta,
                               [](double v, const PolarSample& s) { return v < s.theta; });
    const auto i = static_cast<std::size_t>(hi - samples_.begin());
    return std::min(i == 0 ? 0 : i - 1, samples_.size() - 2);
}

double PulleyProfile::affine_radius(double theta) const {
    const double r = *affine_ * theta;
    return bounds_ ? std::clamp(r, bounds_->first, bounds_->second) : r;
}

double PulleyProfile::affine_payout(double theta) const {
    const double a = *affine_;
    if (!bounds_) return 0.5 * a * theta * theta;
    const auto [lo, hi] = *bounds_;
    if (a <= 0.0) return std::clamp(0.0, lo, hi) * theta;
    const double t1 = std::min(theta, lo / a);
    const double t2 = std::clamp(theta, t1, std::max(t1, hi / a));
    return lo * t1 + 0.5 * a * (t2 * t2 - t1 * t1) + (theta > t2 ? hi * (theta - t2) : 0.0);
}

double PulleyProfile::radius_at(double theta) const {
    theta = checked(theta);
    if (affine_) return affine_radius(theta);
    const std::size_t i = segment(theta);
    const auto& a = samples_[i];
    const auto& b = samples_[i + 1];
    if (theta == a.theta) return a.r;
    if (theta == b.theta) return b.r;
    return a.r + (theta - a.theta) / (b.theta - a.theta) * (b.r - a.r);
}

double PulleyProfile::payout(double theta) const {
    theta = checked(theta);
    if (affine_) return affine_payout(theta);
    const std::size_t i = segment(theta);
    const double r = radius_at(theta);
    return cumulative_payout_[i] + 0.5 * (theta - samples_[i].theta) * (samples_[i].r + r);
}

double PulleyProfile::arc_length(double theta, int panels) const {
    theta = checked(theta);
    if (panels < 1) throw ValidationError("arc length needs at least one panel");
    if (theta == 0.0) return 0.0;

    auto integrand = [&](double phi) {
        if (affine_) {
            const double r = affine_radius(phi);
            const bool free = !bounds_ || (r > bounds_->first && r < bounds_->second);
            return std::hypot(r, free ? *affine_ : 0.0);
        }
        const std::size_t i = segment(phi);
        const auto& a = samples_[i];
        const auto& b = samples_[i + 1];
        const double w = (phi - a.theta) / (b.theta - a.theta);
        const double r = a.r + w * (b.r - a.r);
        const double dr = node_slope_[i] + w * (node_slope_[i + 1] - node_slope_[i]);
        return std::hypot(r, dr);
    };

    const double h = theta / panels;
    double sum = 0.5 * (integrand(0.0) + integrand(theta));
    for (int k = 1; k < panels; ++k) sum += integrand(k * h);
    return sum * h;
}

// ---------------------------------------------------------------- counter

CounterElement CounterElement::weight(double load) {
    require_positive(load, "counter weight load");
    return {CounterKind::weight, load, 0.0, 0.0};
}

CounterElement CounterElement::spring(double t0, double k2) {
    if (!std::isfinite(t0) || t0 < 0.0) throw ValidationError("counter spring pretension must be >= 0");
    if (!std::isfinite(k2) || k2 < 0.0) throw ValidationError("counter spring stiffness must be >= 0");
    return {CounterKind::spring, 0.0, t0, k2};
}

double CounterElement::tension(double payout) const noexcept {
    return kind_ == CounterKind::weight ? load_ : t0_ + k2_ * payout;
}

double CounterElement::released_energy(double payout) const noexcept {
    return kind_ == CounterKind::weight ? load_ * payout : t0_ * payout + 0.5 * k2_ * payout * payout;
}

// ---------------------------------------------------------------- kinematics

double angle_for_displacement(double circular_radius, double x) {
    require_positive(circular_radius, "circular pulley radius R");
    return x / circular_radius;
}

double displacement_for_angle(double circular_radius, double theta) {
    require_positive(circular_radius, "circular pulley radius R");
    return circular_radius * theta;
}

// ---------------------------------------------------------------- synthesis

PulleyProfile synthesize_weight_counter(const ForceCharacteristic& target, double circular_radius,
                                        double load, int n_samples, std::optional<double> theta_max) {
    require_positive(circular_radius, "circular pulley radius R");
    require_positive(load, "counter weight load");
    if (n_samples < 2) throw ValidationError("pulley synthesis needs at least 2 samples");
    const double tmax = resolve_theta_max(target, circular_radius, theta_max);

    std::optional<double> slope;
    if (target.kind() == CharacteristicKind::linear)
        slope = target.stiffness() * circular_radius * circular_radius / load;

    const int intervals = n_samples - 1;
    std::vector<PolarSample> samples(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const double theta = grid_theta(tmax, i, intervals);
        const double r = slope ? *slope * theta : circular_radius * target.force_at(circular_radius * theta) / load;
        if (r < 0.0)
            throw ValidationError("target force is negative at x = " + std::to_string(circular_radius * theta) +
                                  " m; a cable can only pull");
        samples[static_cast<std::size_t>(i)] = {theta, r};
    }
    return PulleyProfile(circular_radius, std::move(samples), slope);
}

PulleyProfile synthesize_spring_counter(const ForceCharacteristic& target, double circular_radius,
                                        const CounterElement& counter, int n_steps,
                                        std::optional<double> theta_max) {
    if (counter.kind() != CounterKind::spring)
        throw ValidationError("spring-counter synthesis needs a spring counter element");
    require_positive(circular_radius, "circular pulley radius R");
    if (n_steps < 1) throw ValidationError("spring-counter synthesis needs at least one step");

    const double t0 = counter.pretension();
    const double k2 = counter.stiffness();
    if (t0 <= 0.0) {
        if (target.force_at(0.0) > 0.0)
            throw SingularityError("zero pretension cannot balance a non-zero force at theta = 0");
        throw SingularityError("zero pretension leaves r(0) indeterminate");
    }
    if (k2 == 0.0) return synthesize_weight_counter(target, circular_radius, t0, n_steps + 1, theta_max);

    const double tmax = resolve_theta_max(target, circular_radius, theta_max);
    const double R = circular_radius;

    auto tension = [&](double s) {
        const double t = t0 + k2 * s;
        if (!(t > 0.0)) throw SingularityError("counter spring tension reached " + std::to_string(t) + " N");
        return t;
    };
    auto arm = [&](double theta, double s) { return R * target.force_at(R * theta) / tension(s); };

    std::vector<PolarSample> samples(static_cast<std::size_t>(n_steps) + 1);
    double s = 0.0;
    double theta = 0.0;
    samples[0] = {0.0, arm(0.0, 0.0)};
    for (int i = 0; i < n_steps; ++i) {
        const double next = grid_theta(tmax, i + 1, n_steps);
        const double h = next - theta;
        const double k1 = arm(theta, s);
        const double k2s = arm(theta + 0.5 * h, s + 0.5 * h * k1);
        const double k3 = arm(theta + 0.5 * h, s + 0.5 * h * k2s);
        const double k4 = arm(next, s + h * k3);
        s += h / 6.0 * (k1 + 2.0 * k2s + 2.0 * k3 + k4);
        theta = next;
        const double r = arm(theta, s);
        if (r < 0.0)
            throw ValidationError("target force is negative at x = " + std::to_string(R * theta) +
                                  " m; a cable can only pull");
        samples[static_cast<std::size_t>(i) + 1] = {theta, r};
    }
    PulleyProfile profile(R, std::move(samples));

    double peak = 0.0;
    double worst = 0.0;
    for (const auto& smp : profile.samples()) {
        const double f = target.force_at(R * smp.theta);
        peak = std::max(peak, std::abs(f));
        worst = std::max(worst, std::abs(f - realized_force(profile, counter, smp.theta)));
    }
    if (worst > spring_verify_tolerance * peak)
        throw NumericalError("spring-counter profile misses the target by " + std::to_string(worst) +
                             " N (peak " + std::to_string(peak) + " N); increase n_steps");
    return profile;
}

// ---------------------------------------------------------------- analysis

double realized_force(const PulleyProfile& profile, const CounterElement& counter, double theta) {
    const double r = profile.radius_at(theta);
    const double s = counter.kind() == CounterKind::spring ? profile.payout(theta) : 0.0;
    return r * counter.tension(s) / profile.circular_radius();
}

PulleyProfile truncate_profile(const PulleyProfile& profile, double r_min, double r_max) {
    if (!(r_min >= 0.0) || !(r_min < r_max))
        throw ValidationError("truncation bounds must satisfy 0 <= r_min < r_max");
    std::vector<PolarSample> samples(profile.samples().begin(), profile.samples().end());
    bool changed = false;
    for (auto& s : samples) {
        const double r = std::clamp(s.r, r_min, r_max);
        changed = changed || r != s.r;
        s.r = r;
    }
    PulleyProfile out(profile.circular_radius(), std::move(samples), changed ? std::nullopt : profile.slope());
    if (changed && profile.affine_) {
        out.affine_ = profile.affine_;
        out.bounds_ = {r_min, r_max};
        if (profile.bounds_)
            out.bounds_ = {std::max(r_min, profile.bounds_->first), std::min(r_max, profile.bounds_->second)};
        if (!(out.bounds_->first < out.bounds_->second)) {
            out.affine_.reset();
            out.bounds_.reset();
        }
    }
    return out;
}

double balance_residual(const PulleyProfile& profile, const CounterElement& counter,
                        const ForceCharacteristic& target, double theta) {
    const double x = profile.circular_radius() * theta;
    return target.force_at(x) - realized_force(profile, counter, theta);
}

}  // namespace floatconv
