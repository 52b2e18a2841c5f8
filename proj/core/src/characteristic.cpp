#include "floatconv/characteristic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "floatconv/error.hpp"

namespace floatconv {

namespace {

// Rounding slop tolerated at the domain ends, relative to x_max. Arguments
// inside the slop are clamped onto the closed domain.
constexpr double domain_slop = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite_positive(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0)
        throw ValidationError(std::string(name) + " must be finite and > 0, got " + std::to_string(v));
}

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw ValidationError(std::string(name) + " must be finite");
}

}  // namespace

std::string_view to_string(CharacteristicKind kind) {
    switch (kind) {
        case CharacteristicKind::linear: return "linear";
        case CharacteristicKind::constant: return "constant";
        case CharacteristicKind::power_law: return "power_law";
        case CharacteristicKind::tabulated: return "tabulated";
        case CharacteristicKind::negated: return "negated";
    }
    return "unknown";
}

ForceCharacteristic ForceCharacteristic::linear(double k, double x_max) {
    require_finite(k, "stiffness k");
    require_finite_positive(x_max, "x_max");
    return {Linear{k}, x_max};
}

ForceCharacteristic ForceCharacteristic::constant(double f0, double x_max) {
    require_finite(f0, "constant force f0");
    require_finite_positive(x_max, "x_max");
    return {Constant{f0}, x_max};
}

ForceCharacteristic ForceCharacteristic::power_law(double c, double d, double p, double x_max) {
    require_finite(c, "power-law coefficient c");
    require_finite_positive(d, "power-law offset d");
    require_finite_positive(x_max, "x_max");
    if (!std::isfinite(p) || p < 1.0) throw ValidationError("power-law exponent p must be >= 1");
    return {PowerLaw{c, d, p}, x_max};
}

ForceCharacteristic ForceCharacteristic::tabulated(std::vector<TablePoint> points) {
    if (points.size() < 2) throw ValidationError("tabulated characteristic needs at least 2 points");
    if (points.front().x != 0.0) throw ValidationError("tabulated characteristic must start at x = 0");
    for (std::size_t i = 0; i < points.size(); ++i) {
        require_finite(points[i].x, "tabulated x");
        require_finite(points[i].force, "tabulated force");
        if (i > 0 && !(points[i].x > points[i - 1].x))
            throw ValidationError("tabulated x must be strictly increasing (point " + std::to_string(i) + ")");
    }
    const double x_max = points.back().x;
    return {Tabulated{std::move(points)}, x_max};
}

ForceCharacteristic invert(const ForceCharacteristic& c) {
    return {ForceCharacteristic::Negated{std::make_shared<const ForceCharacteristic>(c)}, c.x_max()};
}

CharacteristicKind ForceCharacteristic::kind() const noexcept {
    return static_cast<CharacteristicKind>(law_.index());
}

double ForceCharacteristic::stiffness() const noexcept {
    if (const auto* l = std::get_if<Linear>(&law_)) return l->k;
    return 0.0;
}

double ForceCharacteristic::constant_force() const noexcept {
    if (const auto* c = std::get_if<Constant>(&law_)) return c->f0;
    return 0.0;
}

std::span<const TablePoint> ForceCharacteristic::points() const noexcept {
    if (const auto* t = std::get_if<Tabulated>(&law_)) return t->points;
    return {};
}

const ForceCharacteristic* ForceCharacteristic::inner() const noexcept {
    if (const auto* n = std::get_if<Negated>(&law_)) return n->inner.get();
    return nullptr;
}

double ForceCharacteristic::checked(double x) const {
    const double slop = domain_slop * x_max_;
    if (!(x >= -slop && x <= x_max_ + slop))
        throw DomainError("displacement " + std::to_string(x) + " m outside [0, " + std::to_string(x_max_) + "] m");
    return std::clamp(x, 0.0, x_max_);
}

double ForceCharacteristic::force_at(double x) const { return evaluate(checked(x)); }

double ForceCharacteristic::evaluate(double x) const {
    return std::visit(
        overloaded{
            [&](const Linear& l) { return l.k * x; },
            [&](const Constant& c) { return c.f0; },
            [&](const PowerLaw& pl) { return pl.c / std::pow(x + pl.d, pl.p); },
            [&](const Tabulated& t) {
                const auto& pts = t.points;
                auto hi = std::upper_bound(pts.begin(), pts.end(), x,
                                           [](double v, const TablePoint& p) { return v < p.x; });
                if (hi == pts.end()) return pts.back().force;
                auto lo = hi - 1;
                if (x == lo->x) return lo->force;
                const double w = (x - lo->x) / (hi->x - lo->x);
                return lo->force + w * (hi->force - lo->force);
            },
            [&](const Negated& n) { return -n.inner->evaluate(x); },
        },
        law_);
}

double ForceCharacteristic::trapezoid_energy(double x, int panels) const {
    x = checked(x);
    if (panels < 1) throw ValidationError("quadrature needs at least one panel");
    if (x == 0.0) return 0.0;
    const double h = x / panels;
    double sum = 0.5 * (evaluate(0.0) + evaluate(x));
    for (int i = 1; i < panels; ++i) sum += evaluate(i * h);
    return sum * h;
}

double ForceCharacteristic::stored_energy(double x, int panels) const {
    x = checked(x);
    return std::visit(
        overloaded{
            [&](const Linear& l) { return 0.5 * l.k * x * x; },
            [&](const Constant& c) { return c.f0 * x; },
            [&](const PowerLaw&) { return trapezoid_energy(x, panels); },
            [&](const Tabulated& t) {
                // trapezoid on the knots is exact for a piecewise-linear law
                const auto& pts = t.points;
                double e = 0.0;
                for (std::size_t i = 1; i < pts.size() && pts[i - 1].x < x; ++i) {
                    const double x1 = std::min(pts[i].x, x);
                    const double f1 = x1 == pts[i].x ? pts[i].force : evaluate(x1);
                    e += 0.5 * (pts[i - 1].force + f1) * (x1 - pts[i - 1].x);
                }
                return e;
            },
            [&](const Negated& n) { return -n.inner->stored_energy(x, panels); },
        },
        law_);
}

double ForceCharacteristic::displacement_at_force(double force) const {
    const double f_lo = evaluate(0.0);
    const double f_hi = evaluate(x_max_);
    const double lo_f = std::min(f_lo, f_hi);
    const double hi_f = std::max(f_lo, f_hi);
    const double tol = 1e-12 * std::max({1.0, std::abs(lo_f), std::abs(hi_f)});
    if (!(force >= lo_f - tol && force <= hi_f + tol))
        throw UnreachableForce("force " + std::to_string(force) + " N outside characteristic range [" +
                               std::to_string(lo_f) + ", " + std::to_string(hi_f) + "] N");
    if (std::abs(force - f_lo) <= tol) return 0.0;

    if (const auto* l = std::get_if<Linear>(&law_)) return std::min(force / l->k, x_max_);

    if (const auto* t = std::get_if<Tabulated>(&law_)) {
        const auto& pts = t->points;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            const double a = pts[i - 1].force;
            const double b = pts[i].force;
            if ((force - a) * (force - b) > 0.0) continue;
            if (a == b) return pts[i - 1].x;
            return pts[i - 1].x + (force - a) / (b - a) * (pts[i].x - pts[i - 1].x);
        }
        return x_max_;
    }

    // bisection on the first crossing for the remaining monotone laws
    const bool rising = f_hi >= f_lo;
    double lo = 0.0;
    double hi = x_max_;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * x_max_; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = evaluate(mid);
        if (rising ? f < force : f > force)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

}  // namespace floatconv
