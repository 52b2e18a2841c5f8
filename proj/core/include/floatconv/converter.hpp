#pragma once

#include <vector>

#include "floatconv/characteristic.hpp"
#include "floatconv/pulley.hpp"

namespace floatconv {

/**
 * A working spring in series with a pulley-realized inverse element. The
 * operator displaces the balance point u; the counter cable engages once u
 * passes the offset gap.
 */
struct FloatingConverter {
    ForceCharacteristic left;
    PulleyProfile profile;
    CounterElement counter;
    double gap_x = 0.0;  // m
    double friction_mu = 0.0;  // fraction of transmitted counter force
    double friction_f0 = 0.0;  // N

    FloatingConverter(ForceCharacteristic left, PulleyProfile profile, CounterElement counter,
                      double gap_x = 0.0, double friction_mu = 0.0, double friction_f0 = 0.0);

    /// Upper end of the displacement range both elements can cover.
    double max_displacement() const;
    FloatingConverter with_gap(double gap) const;
};

/// Counter force at balance-point displacement u; zero while the cable is slack (u < gap_x).
double counter_force(const FloatingConverter& conv, double u);

/// Force the operator must apply at the balance point: f(u) minus the counter force.
double operating_force(const FloatingConverter& conv, double u);

/// Half-width of the Coulomb friction band at u.
double friction_band(const FloatingConverter& conv, double u);

struct SweepRow {
    double u;
    double spring_force;
    double counter_force;
    double op_force_ideal;
    double op_force_plus;
    double op_force_minus;
};

struct SweepSummary {
    double op_force_const;  // mean ideal operating force over engaged rows
    double ratio_peak;  // worst |operating force incl. friction| / peak spring force
    double ratio_pointwise_max;  // worst |operating force| / spring force at the same row
};

struct SweepTable {
    std::vector<SweepRow> rows;

    SweepSummary summary(double gap_x) const;
};

/// Uniform grid of n rows over [u_min, u_max], inclusive.
SweepTable sweep(const FloatingConverter& conv, double u_min, double u_max, int n);

struct EnergyLedger {
    double delta_spring;  // J
    double delta_counter;  // J, negative when the counter releases energy
    double operator_work;  // J

    /// |operator_work - (delta_spring + delta_counter)| relative to the largest term.
    double closure_error() const;
};

inline constexpr int ledger_points = 1024;

EnergyLedger energy_ledger(const FloatingConverter& conv, double u0, double u1, int points = ledger_points);

/// Result of solving operating_force(u) = applied on the engaged range [gap_x, max].
struct Equilibrium {
    enum class Kind { unique, indeterminate };
    Kind kind;
    double u;  // meaningful only for Kind::unique

    bool indeterminate() const noexcept { return kind == Kind::indeterminate; }
};

/// Bisection to 1e-9 m on the first sign change of the residual. Every u is
/// an equilibrium when the residual is zero everywhere (Kind::indeterminate).
/// Throws NoRootError when the residual never changes sign.
Equilibrium equilibrium_displacement(const FloatingConverter& conv, double applied);

}  // namespace floatconv
