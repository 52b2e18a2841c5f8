#pragma once

#include <string>
#include <string_view>

#include "floatconv/converter.hpp"
#include "floatconv/gripper.hpp"
#include "floatconv/pulley.hpp"

namespace floatconv {

inline constexpr std::string_view profile_csv_header = "theta_deg,r_mm";
inline constexpr std::string_view sweep_csv_header =
    "u_mm,spring_force_n,counter_force_n,op_force_ideal_n,op_force_plus_n,op_force_minus_n";
inline constexpr std::string_view trace_csv_header = "tick,phase,jaw_mm,grip_n,actuator_n,latch";

/// Fixed 6-decimal formatting with '.' as separator, independent of locale. Never emits "-0.000000".
std::string format_fixed6(double value);

struct SvgOptions {
    double scale = 10.0;  // px per mm
    double stroke_width = 1.0;  // px
    double margin = 2.0;  // mm
    bool close_curve = false;
    double axis_marker_radius = 1.0;  // mm
};

/// Pulley rim as a single SVG path in mm (y up in the model, flipped for the screen).
std::string profile_to_svg(const PulleyProfile& profile, const SvgOptions& opts = {});

std::string profile_to_csv(const PulleyProfile& profile);
/// The profile file carries no circular-pulley radius; the caller supplies it.
PulleyProfile read_profile_csv(std::string_view text, double circular_radius);

std::string sweep_to_csv(const SweepTable& table);
std::string trace_to_csv(const GraspTrace& trace);

}  // namespace floatconv
