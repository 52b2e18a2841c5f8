#include "run_config.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "floatconv/error.hpp"

namespace floatconv::cli {

namespace {

using nlohmann::json;

// View of one JSON object that rejects keys outside `allowed`.
class Section {
public:
    Section(const json& j, std::string path, std::initializer_list<std::string_view> allowed)
        : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError("'" + label() + "' must be an object");
        for (const auto& [key, _] : j_.items()) {
            bool known = false;
            for (auto a : allowed) known = known || key == a;
            if (!known) throw ConfigError("unknown key '" + qualified(key) + "'");
        }
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json& at(const std::string& key) const {
        if (!j_.contains(key)) throw ConfigError("missing key '" + qualified(key) + "'");
        return j_.at(key);
    }

    double number(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_number()) throw ConfigError("key '" + qualified(key) + "' must be a number");
        return v.get<double>();
    }

    std::optional<double> optional_number(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return number(key);
    }

    int integer(const std::string& key, int fallback) const {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (!v.is_number_integer()) throw ConfigError("key '" + qualified(key) + "' must be an integer");
        return v.get<int>();
    }

    bool boolean(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_boolean()) throw ConfigError("key '" + qualified(key) + "' must be true or false");
        return v.get<bool>();
    }

    std::string text(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_string()) throw ConfigError("key '" + qualified(key) + "' must be a string");
        return v.get<std::string>();
    }

    std::string qualified(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    std::string label() const { return path_.empty() ? "<root>" : path_; }

    const json& j_;
    std::string path_;
};

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

ForceCharacteristic characteristic_from(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw ConfigError("missing key '" + path + ".type'");
    const std::string type = j.at("type").get<std::string>();
    if (type == "linear") {
        Section s(j, path, {"type", "k_n_per_m", "max_extension_m"});
        return ForceCharacteristic::linear(s.number("k_n_per_m"), s.number("max_extension_m"));
    }
    if (type == "constant") {
        Section s(j, path, {"type", "force_n", "max_extension_m"});
        return ForceCharacteristic::constant(s.number("force_n"), s.number("max_extension_m"));
    }
    if (type == "power_law") {
        Section s(j, path, {"type", "c", "d_m", "p", "max_extension_m"});
        return ForceCharacteristic::power_law(s.number("c"), s.number("d_m"), s.number("p"),
                                              s.number("max_extension_m"));
    }
    if (type == "tabulated") {
        Section s(j, path, {"type", "points"});
        const json& pts = s.at("points");
        if (!pts.is_array()) throw ConfigError("key '" + path + ".points' must be an array of [x_m, force_n]");
        std::vector<TablePoint> points;
        for (const auto& p : pts) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                throw ConfigError("key '" + path + ".points' must be an array of [x_m, force_n]");
            points.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        return ForceCharacteristic::tabulated(std::move(points));
    }
    throw ConfigError("unknown characteristic type '" + type + "' at '" + path + ".type'");
}

CounterElement counter_from(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
        throw ConfigError("missing key 'counter.type'");
    const std::string type = j.at("type").get<std::string>();
    if (type == "weight") {
        Section s(j, "counter", {"type", "load_n"});
        return CounterElement::weight(s.number("load_n"));
    }
    if (type == "spring") {
        Section s(j, "counter", {"type", "t0_n", "k2_n_per_m"});
        return CounterElement::spring(s.number("t0_n"), s.number("k2_n_per_m"));
    }
    throw ConfigError("unknown counter type '" + type + "' at 'counter.type'");
}

}  // namespace

ForceCharacteristic parse_characteristic_json(std::string_view json_text) {
    return characteristic_from(parse_json(json_text), "spring");
}

RunConfig parse_run_config(std::string_view json_text) {
    const json root = parse_json(json_text);
    Section top(root, "", {"spring", "pulley", "counter", "friction", "gap_x_m", "gripper", "sweep"});

    ForceCharacteristic spring = characteristic_from(top.at("spring"), "spring");
    CounterElement counter = counter_from(top.at("counter"));

    PulleyConfig pulley;
    {
        Section s(top.at("pulley"), "pulley",
                  {"circular_radius_m", "theta_max_deg", "samples", "spring_steps", "r_min_m", "r_max_m"});
        pulley.circular_radius = s.number("circular_radius_m");
        pulley.theta_max_deg = s.optional_number("theta_max_deg");
        pulley.samples = s.integer("samples", default_profile_samples);
        pulley.spring_steps = s.integer("spring_steps", default_spring_steps);
        pulley.r_min = s.optional_number("r_min_m");
        pulley.r_max = s.optional_number("r_max_m");
    }

    FrictionConfig friction;
    if (top.has("friction")) {
        Section s(top.at("friction"), "friction", {"mu", "offset_n"});
        friction.mu = s.number("mu");
        friction.offset = s.number("offset_n");
    }

    std::optional<GripperConfig> gripper;
    if (top.has("gripper")) {
        Section s(top.at("gripper"), "gripper",
                  {"stage_travel_m", "stage_step_m", "latch", "actuator_cap_n", "object_position_m"});
        gripper = GripperConfig{s.number("stage_travel_m"), s.number("stage_step_m"), s.boolean("latch"),
                                s.number("actuator_cap_n"), s.number("object_position_m")};
    }

    SweepConfig sweep;
    if (top.has("sweep")) {
        Section s(top.at("sweep"), "sweep", {"u_min_m", "u_max_m", "points"});
        sweep.u_min = s.optional_number("u_min_m");
        sweep.u_max = s.optional_number("u_max_m");
        sweep.points = s.integer("points", sweep.points);
    }

    const double gap = top.has("gap_x_m") ? top.number("gap_x_m") : 0.0;
    return RunConfig{std::move(spring), pulley, counter, friction, gap, gripper, sweep};
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str());
}

PulleyProfile build_ideal_profile(const RunConfig& config) {
    std::optional<double> theta_max;
    if (config.pulley.theta_max_deg) theta_max = deg_to_rad(*config.pulley.theta_max_deg);
    if (config.counter.kind() == CounterKind::weight)
        return synthesize_weight_counter(config.spring, config.pulley.circular_radius, config.counter.load(),
                                         config.pulley.samples, theta_max);
    return synthesize_spring_counter(config.spring, config.pulley.circular_radius, config.counter,
                                     config.pulley.spring_steps, theta_max);
}

PulleyProfile build_profile(const RunConfig& config) {
    PulleyProfile profile = build_ideal_profile(config);
    if (!config.pulley.truncated()) return profile;
    return truncate_profile(profile, config.pulley.r_min.value_or(0.0),
                            config.pulley.r_max.value_or(std::numeric_limits<double>::infinity()));
}

FloatingConverter build_converter(const RunConfig& config, PulleyProfile profile) {
    return FloatingConverter(config.spring, std::move(profile), config.counter, config.gap_x, config.friction.mu,
                             config.friction.offset);
}

GripperModel build_gripper(const RunConfig& config, PulleyProfile profile) {
    if (!config.gripper) throw ConfigError("missing key 'gripper'");
    const GripperConfig& g = *config.gripper;
    return GripperModel{build_converter(config, std::move(profile)),
                        g.stage_travel,
                        g.stage_step,
                        g.latch,
                        g.actuator_cap,
                        g.object_position,
                        true};
}

}  // namespace floatconv::cli
