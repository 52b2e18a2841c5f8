#include "floatconv/converter.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "floatconv/error.hpp"

namespace floatconv {

namespace {

constexpr double root_tolerance_m = 1e-9;
constexpr double force_tolerance_n = 1e-9;
constexpr int scan_points = 4097;

double counter_angle(const FloatingConverter& conv, double u) {
    return angle_for_displacement(conv.profile.circular_radius(), u - conv.gap_x);
}

double check_u(const FloatingConverter& conv, double u) {
    const double hi = conv.max_displacement();
    if (!(u >= -1e-12 * hi && u <= hi * (1.0 + 1e-12)))
        throw DomainError("balance-point displacement " + std::to_string(u) + " m outside [0, " +
                          std::to_string(hi) + "] m");
    return std::clamp(u, 0.0, hi);
}

}  // namespace

FloatingConverter::FloatingConverter(ForceCharacteristic left_, PulleyProfile profile_, CounterElement counter_,
                                     double gap, double mu, double f0)
    : left(std::move(left_)), profile(std::move(profile_)), counter(counter_), gap_x(gap), friction_mu(mu),
      friction_f0(f0) {
    if (!std::isfinite(gap_x) || gap_x < 0.0) throw ValidationError("gap_x must be >= 0");
    if (!std::isfinite(friction_mu) || friction_mu < 0.0 || friction_mu >= 1.0)
        throw ValidationError("friction mu must lie in [0, 1)");
    if (!std::isfinite(friction_f0) || friction_f0 < 0.0) throw ValidationError("friction offset must be >= 0");
}

double FloatingConverter::max_displacement() const {
    return std::min(left.x_max(), gap_x + displacement_for_angle(profile.circular_radius(), profile.theta_max()));
}

FloatingConverter FloatingConverter::with_gap(double gap) const {
    return {left, profile, counter, gap, friction_mu, friction_f0};
}

double counter_force(const FloatingConverter& conv, double u) {
    u = check_u(conv, u);
    if (u < conv.gap_x) return 0.0;
    return realized_force(conv.profile, conv.counter, counter_angle(conv, u));
}

double operating_force(const FloatingConverter& conv, double u) {
    u = check_u(conv, u);
    return conv.left.force_at(u) - counter_force(conv, u);
}

double friction_band(const FloatingConverter& conv, double u) {
    return conv.friction_mu * std::abs(counter_force(conv, u)) + conv.friction_f0;
}

SweepTable sweep(const FloatingConverter& conv, double u_min, double u_max, int n) {
    if (n < 2) throw ValidationError("sweep needs at least 2 points");
    if (!(u_min >= 0.0) || !(u_min < u_max)) throw ValidationError("sweep range must satisfy 0 <= u_min < u_max");
    check_u(conv, u_max);

    SweepTable table;
    table.rows.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double u = i == n - 1 ? u_max : u_min + (u_max - u_min) * i / (n - 1);
        const double spring = conv.left.force_at(u);
        const double counter = counter_force(conv, u);
        const double ideal = spring - counter;
        const double band = conv.friction_mu * std::abs(counter) + conv.friction_f0;
        table.rows.push_back({u, spring, counter, ideal, ideal + band, ideal - band});
    }
    return table;
}

SweepSummary SweepTable::summary(double gap_x) const {
    double engaged_sum = 0.0;
    int engaged = 0;
    double peak_spring = 0.0;
    double worst_op = 0.0;
    double pointwise = 0.0;
    for (const auto& row : rows) {
        if (row.u >= gap_x) {
            engaged_sum += row.op_force_ideal;
            ++engaged;
        }
        const double op = std::max(std::abs(row.op_force_plus), std::abs(row.op_force_minus));
        peak_spring = std::max(peak_spring, std::abs(row.spring_force));
        worst_op = std::max(worst_op, op);
        if (row.spring_force != 0.0) pointwise = std::max(pointwise, op / std::abs(row.spring_force));
    }
    return {engaged > 0 ? engaged_sum / engaged : 0.0, peak_spring > 0.0 ? worst_op / peak_spring : 0.0,
            pointwise};
}

double EnergyLedger::closure_error() const {
    const double scale = std::max({std::abs(delta_spring), std::abs(delta_counter), std::abs(operator_work)});
    const double err = std::abs(operator_work - (delta_spring + delta_counter));
    return scale > 0.0 ? err / scale : err;
}

EnergyLedger energy_ledger(const FloatingConverter& conv, double u0, double u1, int points) {
    check_u(conv, u0);
    check_u(conv, u1);
    if (points < 2) throw ValidationError("energy ledger needs at least 2 quadrature points");

    auto counter_energy = [&](double u) {
        if (u <= conv.gap_x) return 0.0;
        return conv.counter.released_energy(conv.profile.payout(counter_angle(conv, u)));
    };

    EnergyLedger ledger{};
    ledger.delta_spring = conv.left.stored_energy(u1) - conv.left.stored_energy(u0);
    ledger.delta_counter = -(counter_energy(u1) - counter_energy(u0));

    // split at gap_x: the counter force may jump there when f(0) != 0
    auto piece = [&](double a, double b, bool engaged) {
        double sum = 0.0;
        double prev_u = a;
        double prev_f = engaged ? operating_force(conv, a) : conv.left.force_at(a);
        for (int i = 1; i < points; ++i) {
            const double u = i == points - 1 ? b : a + (b - a) * i / (points - 1);
            const double f = engaged ? operating_force(conv, u) : conv.left.force_at(u);
            sum += 0.5 * (prev_f + f) * (u - prev_u);
            prev_u = u;
            prev_f = f;
        }
        return sum;
    };
    const double lo = std::min(u0, u1);
    const double hi = std::max(u0, u1);
    double work = 0.0;
    if (lo < conv.gap_x && conv.gap_x < hi)
        work = piece(lo, conv.gap_x, false) + piece(conv.gap_x, hi, true);
    else
        work = piece(lo, hi, lo >= conv.gap_x);
    if (u1 < u0) work = -work;
    ledger.operator_work = work;
    return ledger;
}

Equilibrium equilibrium_displacement(const FloatingConverter& conv, double applied) {
    const double lo = conv.gap_x;
    const double hi = conv.max_displacement();
    if (!(lo < hi)) throw DomainError("gap leaves no engaged range for an equilibrium");

    auto residual = [&](double u) { return operating_force(conv, u) - applied; };
    auto at = [&](int i) { return i == scan_points - 1 ? hi : lo + (hi - lo) * i / (scan_points - 1); };

    bool all_zero = true;
    for (int i = 0; i < scan_points && all_zero; ++i) all_zero = std::abs(residual(at(i))) <= force_tolerance_n;
    if (all_zero) return {Equilibrium::Kind::indeterminate, 0.0};

    const double r0 = residual(lo);
    if (std::abs(r0) <= force_tolerance_n) return {Equilibrium::Kind::unique, lo};
    const bool negative = r0 < 0.0;
    // still strictly on the starting side of zero
    auto before_root = [&](double u) {
        const double r = residual(u);
        return std::abs(r) > force_tolerance_n && (r < 0.0) == negative;
    };

    for (int i = 1; i < scan_points; ++i) {
        const double u = at(i);
        if (before_root(u)) continue;
        double a = at(i - 1);
        double b = u;
        while (b - a > root_tolerance_m) {
            const double mid = 0.5 * (a + b);
            if (before_root(mid))
                a = mid;
            else
                b = mid;
        }
        return {Equilibrium::Kind::unique, 0.5 * (a + b)};
    }
    throw NoRootError("operating force minus " + std::to_string(applied) +
                      " N does not change sign on the engaged range");
}

}  // namespace floatconv
