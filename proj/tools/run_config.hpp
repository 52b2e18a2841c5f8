#pragma once

#include <filesystem>
#include <optional>
#include <string_view>

#include "floatconv/converter.hpp"
#include "floatconv/gripper.hpp"
#include "floatconv/pulley.hpp"

namespace floatconv::cli {

struct PulleyConfig {
    double circular_radius = 0.0;  // m
    std::optional<double> theta_max_deg;
    int samples = default_profile_samples;
    int spring_steps = default_spring_steps;
    std::optional<double> r_min;  // m
    std::optional<double> r_max;  // m

    bool truncated() const noexcept { return r_min.has_value() || r_max.has_value(); }
};

struct FrictionConfig {
    double mu = 0.0;
    double offset = 0.0;  // N
};

struct GripperConfig {
    double stage_travel = 0.0;  // m
    double stage_step = 0.0;  // m
    bool latch = true;
    double actuator_cap = 0.0;  // N
    double object_position = 0.0;  // m
};

struct SweepConfig {
    std::optional<double> u_min;  // m
    std::optional<double> u_max;  // m
    int points = 201;
};

struct RunConfig {
    ForceCharacteristic spring;
    PulleyConfig pulley;
    CounterElement counter;
    FrictionConfig friction;
    double gap_x = 0.0;  // m
    std::optional<GripperConfig> gripper;
    SweepConfig sweep;
};

/// Strict parse: unknown keys, missing required keys and wrong types raise
/// ConfigError naming the offending key.
RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::filesystem::path& path);

ForceCharacteristic parse_characteristic_json(std::string_view json_text);

/// Synthesized profile, before any truncation.
PulleyProfile build_ideal_profile(const RunConfig& config);
/// Synthesized profile with the configured fabrication bounds applied.
PulleyProfile build_profile(const RunConfig& config);
FloatingConverter build_converter(const RunConfig& config, PulleyProfile profile);
GripperModel build_gripper(const RunConfig& config, PulleyProfile profile);

}  // namespace floatconv::cli
