#include "floatconv/gripper.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "floatconv/error.hpp"

namespace floatconv {

namespace {

// Slack for stage arithmetic so that an object exactly n steps away is
// reached in n - 1 whole steps despite rounding of n * step.
constexpr double step_slop = 1e-9;

}  // namespace

void GripperModel::validate() const {
    if (!std::isfinite(stage_step) || stage_step <= 0.0) throw ValidationError("stage_step must be > 0");
    if (!std::isfinite(stage_travel) || stage_travel < 0.0) throw ValidationError("stage_travel must be >= 0");
    if (!std::isfinite(actuator_force_cap) || actuator_force_cap <= 0.0)
        throw ValidationError("actuator_force_cap must be > 0");
    if (!std::isfinite(object_position) || object_position <= 0.0)
        throw ValidationError("object_position must be > 0");
    if (!object_rigid) throw ValidationError("compliant objects are not supported; grip force needs a rigid object");
}

std::string_view to_string(GraspPhase phase) {
    switch (phase) {
        case GraspPhase::positioning: return "positioning";
        case GraspPhase::gripping: return "gripping";
        case GraspPhase::done: return "done";
    }
    return "unknown";
}

GraspPlan plan_grasp(const GripperModel& model, double target_grip) {
    model.validate();
    if (!std::isfinite(target_grip) || target_grip < 0.0) throw ValidationError("target grip force must be >= 0");
    const ForceCharacteristic& spring = model.converter.left;
    if (target_grip > spring.force_at(spring.x_max()))
        throw UnreachableForce("target grip " + std::to_string(target_grip) + " N exceeds the spring maximum " +
                               std::to_string(spring.force_at(spring.x_max())) + " N");
    const double stroke = spring.displacement_at_force(target_grip);

    if (model.object_position > model.stage_travel + stroke)
        throw UnreachableObject("object at " + std::to_string(model.object_position) +
                                " m is beyond stage travel plus converter stroke (" +
                                std::to_string(model.stage_travel + stroke) + " m)");

    const int steps_short = static_cast<int>(std::ceil(model.object_position / model.stage_step - step_slop)) - 1;
    const int steps_travel = static_cast<int>(std::floor(model.stage_travel / model.stage_step + step_slop));
    const int steps = std::max(0, std::min(steps_short, steps_travel));
    const double stage = steps * model.stage_step;
    return {model.object_position - stage, stroke, stage, steps, target_grip};
}

GraspTrace simulate_grasp(const GripperModel& model, const GraspPlan& plan, const GraspOptions& options) {
    model.validate();
    const FloatingConverter conv = model.converter.with_gap(plan.gap_x);
    if (plan.converter_stroke > conv.max_displacement() * (1.0 + 1e-12))
        throw DomainError("converter stroke " + std::to_string(plan.converter_stroke) +
                          " m exceeds the converter range " + std::to_string(conv.max_displacement()) + " m");
    const double grip_step = options.grip_step > 0.0 ? options.grip_step : model.stage_step;

    GraspTrace trace;
    int tick = 0;
    for (int i = 1; i <= plan.positioning_ticks; ++i)
        trace.rows.push_back({++tick, GraspPhase::positioning, i * model.stage_step, 0.0, 0.0, false});

    double u = 0.0;
    double grip = conv.left.force_at(0.0);
    double actuator = 0.0;
    double jaw = plan.stage_position;
    for (int j = 1; std::abs(grip - plan.target_grip) > grip_force_tolerance_n; ++j) {
        if (u >= plan.converter_stroke)
            throw NumericalError("converter stroke exhausted at " + std::to_string(grip) + " N, target " +
                                 std::to_string(plan.target_grip) + " N");
        u = std::min(j * grip_step, plan.converter_stroke);
        const double required = operating_force(conv, u) + friction_band(conv, u);
        if (std::abs(required) > model.actuator_force_cap)
            throw ActuatorStall(static_cast<std::size_t>(j), required, model.actuator_force_cap);
        grip = conv.left.force_at(u);
        if (!model.latch_holds && grip > 0.0)
            throw BackdriveFault("grip reaction of " + std::to_string(grip) +
                                 " N back-drives the positioning stage without a holding latch");
        actuator = required;
        jaw = std::max(jaw, plan.stage_position + std::min(u, plan.gap_x));
        trace.rows.push_back({++tick, GraspPhase::gripping, jaw, grip, actuator, model.latch_holds && grip > 0.0});
    }
    trace.rows.push_back({++tick, GraspPhase::done, jaw, grip, actuator, model.latch_holds && grip > 0.0});
    return trace;
}

double GraspTrace::max_grip_force() const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, r.grip_force);
    return m;
}

double GraspTrace::max_actuator_force() const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, std::abs(r.actuator_force));
    return m;
}

double GraspTrace::final_grip_force() const { return rows.empty() ? 0.0 : rows.back().grip_force; }

double GraspTrace::amplification() const {
    const double act = max_actuator_force();
    return act > 0.0 ? max_grip_force() / act : 0.0;
}

}  // namespace floatconv
