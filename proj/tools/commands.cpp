#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "floatconv/error.hpp"
#include "floatconv/export.hpp"

namespace floatconv::cli {

namespace {

// Half a unit in the last place of the 6-decimal profile file.
constexpr double theta_rounding_rad = deg_to_rad(0.5e-6);
constexpr double radius_rounding_m = 0.5e-6 * 1e-3;

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error("IOError", what) {}
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << content;
    if (!out) throw IoError("write to '" + path + "' failed");
}

int exit_code_for(const Error& e) {
    if (dynamic_cast<const SingularityError*>(&e) || dynamic_cast<const NumericalError*>(&e) ||
        dynamic_cast<const NoRootError*>(&e) || dynamic_cast<const ActuatorStall*>(&e) ||
        dynamic_cast<const BackdriveFault*>(&e))
        return exit_numerical;
    return exit_invalid;
}

int cmd_synthesize(const std::string& config_path, const std::string& out_path, std::ostream& out) {
    const RunConfig config = load_run_config(config_path);
    const PulleyProfile profile = build_profile(config);
    write_file(out_path, profile_to_csv(profile));

    const auto samples = profile.samples();
    const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end(),
                                              [](const PolarSample& a, const PolarSample& b) { return a.r < b.r; });
    const auto ideal_slope = build_ideal_profile(config).slope();
    out << "a_mm_per_rad=" << (ideal_slope ? format_fixed6(*ideal_slope * 1e3) : std::string("none"))
        << " theta_max_deg=" << format_fixed6(rad_to_deg(profile.theta_max()))
        << " r_min_mm=" << format_fixed6(lo->r * 1e3) << " r_max_mm=" << format_fixed6(hi->r * 1e3) << '\n';
    return exit_ok;
}

int cmd_verify(const std::string& config_path, const std::string& profile_path, std::ostream& out) {
    const RunConfig config = load_run_config(config_path);
    const PulleyProfile profile = read_profile_csv(read_file(profile_path), config.pulley.circular_radius);
    const VerifyReport report = verify_profile(config, profile);
    out << "max_balance_residual_n=" << report.max_residual << " force_tolerance_n=" << report.force_tolerance
        << " energy_identity_error=" << report.energy_error << " energy_tolerance=" << report.energy_tolerance
        << '\n';
    if (!report.passed()) throw NumericalError("profile fails verification");
    return exit_ok;
}

int cmd_sweep(const std::string& config_path, std::optional<double> gap_mm, const std::string& out_path,
              std::ostream& out) {
    RunConfig config = load_run_config(config_path);
    if (gap_mm) config.gap_x = *gap_mm * 1e-3;
    const FloatingConverter conv = build_converter(config, build_profile(config));
    const double u_min = config.sweep.u_min.value_or(0.0);
    const double u_max = config.sweep.u_max.value_or(conv.max_displacement());
    const SweepTable table = sweep(conv, u_min, u_max, config.sweep.points);
    write_file(out_path, sweep_to_csv(table));

    const SweepSummary s = table.summary(conv.gap_x);
    out << "op_force_const_n=" << format_fixed6(s.op_force_const) << " ratio_peak=" << format_fixed6(s.ratio_peak)
        << '\n';
    out << "ratio_pointwise_max=" << format_fixed6(s.ratio_pointwise_max) << '\n';
    return exit_ok;
}

int cmd_grasp(const std::string& config_path, double target, const std::string& out_path, std::ostream& out) {
    const RunConfig config = load_run_config(config_path);
    const GripperModel model = build_gripper(config, build_profile(config));
    const GraspPlan plan = plan_grasp(model, target);
    const GraspTrace trace = simulate_grasp(model, plan);
    write_file(out_path, trace_to_csv(trace));
    out << "amplification=" << format_fixed6(trace.amplification())
        << " max_actuator_n=" << format_fixed6(trace.max_actuator_force())
        << " final_grip_n=" << format_fixed6(trace.final_grip_force()) << " gap_mm=" << format_fixed6(plan.gap_x * 1e3)
        << '\n';
    return exit_ok;
}

int cmd_export_svg(const std::string& profile_path, const std::string& out_path, double scale) {
    // the circular-pulley radius does not enter the rim geometry
    const PulleyProfile profile = read_profile_csv(read_file(profile_path), 1.0);
    SvgOptions opts;
    opts.scale = scale;
    write_file(out_path, profile_to_svg(profile, opts));
    return exit_ok;
}

}  // namespace

VerifyReport verify_profile(const RunConfig& config, const PulleyProfile& profile) {
    const ForceCharacteristic& spring = config.spring;
    const CounterElement& counter = config.counter;
    const double R = profile.circular_radius();
    const auto samples = profile.samples();
    const std::size_t n = samples.size();
    const bool spring_counter = counter.kind() == CounterKind::spring;
    const double t_max = counter.tension(profile.payout(profile.theta_max()));

    double peak = 0.0;
    double max_slope = 0.0;
    double r_max = 0.0;
    double max_residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = R * samples[i].theta;
        const double f = spring.force_at(x);
        peak = std::max(peak, std::abs(f));
        r_max = std::max(r_max, samples[i].r);
        max_residual = std::max(max_residual, std::abs(balance_residual(profile, counter, spring, samples[i].theta)));
        if (i + 1 < n) {
            const double x1 = R * samples[i + 1].theta;
            max_slope = std::max(max_slope, std::abs(spring.force_at(x1) - f) / (x1 - x));
        }
    }
    const double base = spring_counter ? 1e-6 : 1e-9;
    double force_tol = base * peak + max_slope * R * theta_rounding_rad + t_max / R * radius_rounding_m;
    if (spring_counter)
        force_tol += counter.stiffness() * profile.theta_max() * radius_rounding_m * r_max / R;

    // trapezoid bound on the payout integral, from second differences of r
    const double h = profile.theta_max() / static_cast<double>(n - 1);
    double curvature = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i)
        curvature = std::max(curvature, std::abs(samples[i + 1].r - 2.0 * samples[i].r + samples[i - 1].r) / (h * h));
    const double payout_bound = t_max * profile.theta_max() * (h * h / 12.0 * curvature + radius_rounding_m);

    double energy_quadrature = 0.0;
    if (spring.kind() == CharacteristicKind::power_law)
        energy_quadrature = std::abs(spring.trapezoid_energy(spring.x_max(), ForceCharacteristic::default_panels) -
                                     spring.trapezoid_energy(spring.x_max(), ForceCharacteristic::default_panels / 2)) /
                            3.0;

    double e_max = 0.0;
    double e_err = 0.0;
    for (const auto& s : samples) {
        const double stored = spring.stored_energy(R * s.theta);
        const double released = counter.released_energy(profile.payout(s.theta));
        e_max = std::max(e_max, std::abs(stored));
        e_err = std::max(e_err, std::abs(released - stored));
    }
    const double energy_error = e_max > 0.0 ? e_err / e_max : e_err;
    const double energy_tol = 1e-6 + (e_max > 0.0 ? (payout_bound + energy_quadrature) / e_max : 0.0);
    return {max_residual, force_tol, energy_error, energy_tol};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Non-circular pulley synthesis and floating converter simulation", "floatconv"};
    app.require_subcommand(1);

    std::string config_path, out_path, profile_path;
    std::optional<double> gap_mm;
    double target = 0.0;
    double scale = 10.0;

    auto* synth = app.add_subcommand("synthesize", "Synthesize a pulley profile and write it as CSV");
    synth->add_option("--config", config_path, "JSON run configuration")->required();
    synth->add_option("--out", out_path, "Profile CSV to write")->required();

    auto* verify = app.add_subcommand("verify", "Check a profile against the configured spring and counter");
    verify->add_option("--config", config_path, "JSON run configuration")->required();
    verify->add_option("--profile", profile_path, "Profile CSV to check")->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep the operating force over the balance-point stroke");
    sweep_cmd->add_option("--config", config_path, "JSON run configuration")->required();
    sweep_cmd->add_option("--gap-mm", gap_mm, "Override the offset gap, mm");
    sweep_cmd->add_option("--out", out_path, "Sweep CSV to write")->required();

    auto* grasp = app.add_subcommand("grasp", "Plan and simulate a grasp");
    grasp->add_option("--config", config_path, "JSON run configuration")->required();
    grasp->add_option("--target-force-n", target, "Target grip force, N")->required();
    grasp->add_option("--out", out_path, "Trace CSV to write")->required();

    auto* svg = app.add_subcommand("export-svg", "Render a profile CSV as SVG");
    svg->add_option("--profile", profile_path, "Profile CSV")->required();
    svg->add_option("--out", out_path, "SVG file to write")->required();
    svg->add_option("--scale", scale, "Pixels per mm");

    std::vector<const char*> argv{"floatconv"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "ERR:UsageError:" << e.what() << '\n';
        return exit_invalid;
    }

    try {
        if (*synth) return cmd_synthesize(config_path, out_path, out);
        if (*verify) return cmd_verify(config_path, profile_path, out);
        if (*sweep_cmd) return cmd_sweep(config_path, gap_mm, out_path, out);
        if (*grasp) return cmd_grasp(config_path, target, out_path, out);
        if (*svg) return cmd_export_svg(profile_path, out_path, scale);
    } catch (const Error& e) {
        err << "ERR:" << e.kind() << ':' << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "ERR:InternalError:" << e.what() << '\n';
        return exit_numerical;
    }
    return exit_invalid;
}

}  // namespace floatconv::cli
