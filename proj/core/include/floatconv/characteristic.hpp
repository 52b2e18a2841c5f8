#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace floatconv {

enum class CharacteristicKind { linear, constant, power_law, tabulated, negated };

std::string_view to_string(CharacteristicKind kind);

struct TablePoint {
    double x;  // m
    double force;  // N
};

/**
 * Force-displacement law of an elastic element on the closed domain
 * [0, x_max]. Values are immutable; copies share the wrapped element of a
 * negated characteristic.
 */
class ForceCharacteristic {
public:
    static constexpr int default_panels = 2048;

    /// F = k x.
    static ForceCharacteristic linear(double k, double x_max);
    /// F = f0 everywhere on the domain.
    static ForceCharacteristic constant(double f0, double x_max);
    /// F = c / (x + d)^p; a generic stand-in for magnet-like attraction. Requires d > 0, p >= 1.
    static ForceCharacteristic power_law(double c, double d, double p, double x_max);
    /// Piecewise-linear through `points`; x strictly increasing from 0, x_max is the last knot.
    static ForceCharacteristic tabulated(std::vector<TablePoint> points);

    CharacteristicKind kind() const noexcept;
    double x_max() const noexcept { return x_max_; }

    // Parameter accessors; each returns 0 (or empty) for kinds that do not own the field.
    double stiffness() const noexcept;
    double constant_force() const noexcept;
    std::span<const TablePoint> points() const noexcept;
    const ForceCharacteristic* inner() const noexcept;

    /// Throws DomainError outside [0, x_max].
    double force_at(double x) const;

    /// Integral of force_at over [0, x]. Closed form where one exists; the
    /// tabulated law is integrated exactly per segment; power laws use the
    /// composite trapezoid rule with `panels` panels.
    double stored_energy(double x, int panels = default_panels) const;

    /// Composite trapezoid integral of force_at over [0, x], regardless of kind.
    double trapezoid_energy(double x, int panels = default_panels) const;

    /// Smallest x with force_at(x) == force for a monotone law. Throws
    /// UnreachableForce when the force lies outside [force_at(0), force_at(x_max)].
    double displacement_at_force(double force) const;

private:
    struct Linear { double k; };
    struct Constant { double f0; };
    struct PowerLaw { double c, d, p; };
    struct Tabulated { std::vector<TablePoint> points; };
    struct Negated { std::shared_ptr<const ForceCharacteristic> inner; };
    using Law = std::variant<Linear, Constant, PowerLaw, Tabulated, Negated>;

    ForceCharacteristic(Law law, double x_max) : law_(std::move(law)), x_max_(x_max) {}

    double checked(double x) const;
    double evaluate(double x) const;

    Law law_;
    double x_max_;

    friend ForceCharacteristic invert(const ForceCharacteristic& c);
};

/// The inverse-characteristic element: force_at(invert(c), x) == -force_at(c, x).
ForceCharacteristic invert(const ForceCharacteristic& c);

inline double force_at(const ForceCharacteristic& c, double x) { return c.force_at(x); }

inline double stored_energy(const ForceCharacteristic& c, double x,
                            int panels = ForceCharacteristic::default_panels) {
    return c.stored_energy(x, panels);
}

}  // namespace floatconv
