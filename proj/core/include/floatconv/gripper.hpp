#pragma once

#include <string_view>
#include <vector>

#include "floatconv/converter.hpp"

namespace floatconv {

/**
 * Converter in series with a fast positioning stage. The stage closes most
 * of the distance to the object; the converter then loads the object
 * through its working spring while a force-capped actuator holds the
 * balance point. A torque-diode latch keeps the stage from being
 * back-driven by the grip reaction.
 */
struct GripperModel {
    FloatingConverter converter;
    double stage_travel = 0.0;  // m
    double stage_step = 0.0;  // m per tick
    bool latch_holds = true;
    double actuator_force_cap = 0.0;  // N
    double object_position = 0.0;  // m from jaw start
    bool object_rigid = true;

    /// Throws ValidationError on non-physical parameters or compliant objects.
    void validate() const;
};

struct GraspPlan {
    double gap_x;  // jaw-to-object distance left after positioning, m
    double converter_stroke;  // balance-point displacement producing the target grip, m
    double stage_position;  // jaw position at the end of positioning, m
    int positioning_ticks;
    double target_grip;  // N
};

/// Throws UnreachableForce or UnreachableObject.
GraspPlan plan_grasp(const GripperModel& model, double target_grip);

enum class GraspPhase { positioning, gripping, done };

std::string_view to_string(GraspPhase phase);

struct GraspRow {
    int tick;
    GraspPhase phase;
    double jaw_position;  // m
    double grip_force;  // N
    double actuator_force;  // N
    bool latch_engaged;
};

struct GraspTrace {
    std::vector<GraspRow> rows;

    double max_grip_force() const;
    double max_actuator_force() const;
    double final_grip_force() const;
    /// max grip force / max actuator force over the trace.
    double amplification() const;
};

struct GraspOptions {
    // Balance-point advance per gripping tick; 0 uses the stage step.
    double grip_step = 0.0;
};

inline constexpr double grip_force_tolerance_n = 1e-6;

/**
 * Ticks through positioning then gripping. The actuator must supply the
 * operating force plus the friction band at every gripping tick; the run
 * stops with ActuatorStall once that exceeds the cap. Without a holding
 * latch a rigid object's reaction back-drives the stage (BackdriveFault).
 */
GraspTrace simulate_grasp(const GripperModel& model, const GraspPlan& plan, const GraspOptions& options = {});

}  // namespace floatconv
