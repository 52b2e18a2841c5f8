// Acceptance gate. One PASS/FAIL line per criterion; nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "floatconv/floatconv.hpp"
#include "oracles.hpp"

using namespace floatconv;
namespace fs = std::filesystem;

namespace {

// Tolerances and limits.
constexpr double balance_rel_tol = 1e-9;
constexpr double slope_rel_tol = 1e-12;
constexpr double energy_identity_rel_tol = 1e-9;
constexpr double ledger_closure_tol = 1e-6;
constexpr double constant_force_tol_n = 1e-9;
constexpr double ratio_tol = 1e-9;
constexpr double friction_ratio_limit = 0.003 + 1e-6;
constexpr double truncation_offset_tol_n = 5e-7;
constexpr double truncation_zero_theta = 2.007;
constexpr double truncation_zero_tol_rad = 5e-4;
constexpr double spring_counter_rel_tol = 1e-6;
constexpr double gripper_force_tol_n = 1e-6;
constexpr double arc_length_rel_tol = 1e-6;
constexpr double csv_quantum = 5e-7;
constexpr double runtime_limit_s = 1.0;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body, bool timed = false) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("unexpected exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (timed && secs >= runtime_limit_s) {
        o.pass = false;
        o.detail += " runtime limit exceeded";
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s (%s; %.3f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(),
                secs);
}

std::string fmt(const char* f, double v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

FloatingConverter matched_linear(double k, double x_max, double R, double load, double gap, double mu = 0.0) {
    const auto spring = ForceCharacteristic::linear(k, x_max);
    return FloatingConverter(spring, synthesize_weight_counter(spring, R, load), CounterElement::weight(load), gap, mu);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (code != 0) std::fprintf(stderr, "%s", err.str().c_str());
    return code;
}

Outcome balance_exactness() {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> k(10.0, 500.0), xm(0.05, 0.3), R(0.005, 0.05), load(1.0, 50.0),
        f(0.0, 20.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        ForceCharacteristic target = ForceCharacteristic::linear(1.0, 1.0);
        if (trial % 2 == 0) {
            target = ForceCharacteristic::linear(k(rng), xm(rng));
        } else {
            std::vector<TablePoint> pts{{0.0, f(rng)}};
            const double x_max = xm(rng);
            for (int i = 1; i <= 9; ++i) pts.push_back({x_max * i / 9.0, f(rng)});
            target = ForceCharacteristic::tabulated(pts);
        }
        const double r = R(rng);
        const auto counter = CounterElement::weight(load(rng));
        const auto p = synthesize_weight_counter(target, r, counter.load());
        double peak = 0.0, residual = 0.0;
        for (int i = 0; i < 512; ++i) {
            const double th = p.theta_max() * i / 511.0;
            peak = std::max(peak, std::abs(target.force_at(r * th)));
            residual = std::max(residual, std::abs(balance_residual(p, counter, target, th)));
        }
        worst = std::max(worst, residual / peak);
    }
    return {worst <= balance_rel_tol, fmt("worst residual/peak %.3e", worst)};
}

Outcome slope_closed_form() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> k(1.0, 1000.0), R(0.001, 0.1), mg(0.1, 100.0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double kk = k(rng), rr = R(rng), w = mg(rng);
        const auto p = synthesize_weight_counter(ForceCharacteristic::linear(kk, 0.2), rr, w);
        if (!p.slope()) return {false, "no slope reported"};
        worst = std::max(worst, oracle::relative(*p.slope(), kk * rr * rr / w));
    }
    return {worst <= slope_rel_tol, fmt("worst relative error %.3e", worst)};
}

Outcome energy_identity() {
    const double k = 124.55, R = 0.02, load = 10.0;
    const auto spring = ForceCharacteristic::linear(k, 0.2);
    const auto p = synthesize_weight_counter(spring, R, load);
    double worst = 0.0;
    for (int i = 1; i <= 2000; ++i) {
        const double th = p.theta_max() * i / 2000.0;
        const double stored = 0.5 * k * (R * th) * (R * th);
        worst = std::max(worst, oracle::relative(load * p.payout(th), stored));
    }

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto tab = ForceCharacteristic::tabulated({{0.0, 1.0}, {0.03, 4.0}, {0.09, 5.5}, {0.12, 12.0}});
    const FloatingConverter convs[] = {
        matched_linear(124.55, 0.2, 0.02, 10.0, 0.0),
        matched_linear(100.0, 0.12, 0.02, 10.0, 0.01),
        FloatingConverter(tab, synthesize_weight_counter(tab, 0.015, 6.0), CounterElement::weight(6.0), 0.005),
        FloatingConverter(spring, synthesize_spring_counter(spring, R, CounterElement::spring(10.0, 50.0)),
                          CounterElement::spring(10.0, 50.0), 0.0),
    };
    double closure = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto& c = convs[i % 4];
        const double u0 = unit(rng) * c.max_displacement(), u1 = unit(rng) * c.max_displacement();
        closure = std::max(closure, energy_ledger(c, u0, u1).closure_error());
    }
    const bool pass = worst <= energy_identity_rel_tol && closure <= ledger_closure_tol;
    return {pass, fmt("identity %.3e", worst) + fmt(", ledger closure %.3e", closure)};
}

Outcome constant_operating_force() {
    const double k = 124.55;
    const auto base = matched_linear(k, 0.2, 0.02, 10.0, 0.0);
    double worst = 0.0, doubling = 0.0;
    for (double x : {0.005, 0.010, 0.020}) {
        const auto c = base.with_gap(x);
        const auto c2 = base.with_gap(2 * x);
        for (int i = 0; i <= 1000; ++i) {
            const double u = 2 * x + (c.max_displacement() - 2 * x) * i / 1000.0;
            worst = std::max(worst, std::abs(operating_force(c, u) - k * x));
            doubling = std::max(doubling, std::abs(operating_force(c2, u) - 2.0 * operating_force(c, u)));
        }
    }
    const bool pass = worst <= constant_force_tol_n && doubling <= constant_force_tol_n;
    return {pass, fmt("max |F - kx| %.3e N", worst) + fmt(", doubling error %.3e N", doubling)};
}

Outcome ratio_calibration() {
    const double k = 124.55, u_max = 0.2, R = 0.02, load = 10.0;
    const auto spring = ForceCharacteristic::linear(k, u_max);
    const auto profile = synthesize_weight_counter(spring, R, load, default_profile_samples, u_max / R);

    const auto at = [&](double gap, double mu) {
        const FloatingConverter c(spring, profile, CounterElement::weight(load), gap, mu);
        return sweep(c, 0.0, u_max, 201).summary(gap);
    };
    const double r10 = at(0.010, 0.0).ratio_peak;
    const double r20 = at(0.020, 0.0).ratio_peak;
    const double r0 = at(0.0, 0.003).ratio_peak;

    // Regression note: hardware measured about 8% at 20 mm; the ideal model gives 10%.
    const double measured_20mm = 0.08;
    const bool deviation_documented = std::abs(r20 - measured_20mm) > 0.01;

    const bool pass = std::abs(r10 - 0.05) <= ratio_tol && std::abs(r20 - 0.10) <= ratio_tol &&
                      r0 <= friction_ratio_limit && deviation_documented;
    return {pass, fmt("x=10mm %.9f", r10) + fmt(", x=20mm %.9f", r20) + fmt(" (hardware ~%.2f)", measured_20mm) +
                      fmt(", x=0 mu=0.003 %.9f", r0)};
}

Outcome truncation_offset() {
    const double R = 0.02, load = 10.0;
    const auto spring = ForceCharacteristic::linear(124.55, 0.2);
    const auto counter = CounterElement::weight(load);
    const auto p = truncate_profile(synthesize_weight_counter(spring, R, load, 512, deg_to_rad(345.0)), 0.010, 0.040);
    const double at_zero = balance_residual(p, counter, spring, 0.0);
    const double zero = oracle::first_sign_change(
        [&](double th) { return balance_residual(p, counter, spring, th); }, 0.0, p.theta_max(), 200001, 1e-12);
    const bool pass = std::abs(at_zero + 5.0) <= truncation_offset_tol_n &&
                      std::abs(zero - truncation_zero_theta) <= truncation_zero_tol_rad;
    return {pass, fmt("residual(0) %.6f N", at_zero) + fmt(", zero crossing at %.5f rad", zero)};
}

Outcome spring_counter_oracle() {
    const double k = 100.0, R = 0.02, t0 = 10.0, k2 = 50.0;
    const auto spring = ForceCharacteristic::linear(k, 0.12);
    const int n = 2048;
    const auto p = synthesize_spring_counter(spring, R, CounterElement::spring(t0, k2), n);
    const auto fine = oracle::spring_counter_radii([&](double x) { return k * x; }, R, t0, k2, p.theta_max(), n, 10);

    double worst = 0.0, closed = 0.0;
    const auto samples = p.samples();
    for (std::size_t i = 1; i < samples.size(); ++i) {
        worst = std::max(worst, oracle::relative(samples[i].r, fine[i]));
        closed = std::max(closed,
                          oracle::relative(samples[i].r,
                                           oracle::spring_counter_radius_closed_form(k, R, t0, k2, samples[i].theta)));
    }

    const auto zero_k2 = synthesize_spring_counter(spring, R, CounterElement::spring(t0, 0.0), n);
    const auto weight = synthesize_weight_counter(spring, R, t0, n + 1);
    bool identical = zero_k2.size() == weight.size();
    for (std::size_t i = 0; identical && i < weight.size(); ++i)
        identical = zero_k2.samples()[i].r == weight.samples()[i].r &&
                    zero_k2.samples()[i].theta == weight.samples()[i].theta;

    const bool pass = worst <= spring_counter_rel_tol && closed <= spring_counter_rel_tol && identical;
    return {pass, fmt("vs 10x RK4 %.3e", worst) + fmt(", vs closed form %.3e", closed) +
                      (identical ? ", k2=0 identical to weight case" : ", k2=0 differs from weight case")};
}

Outcome gripper_amplification() {
    const auto spring = ForceCharacteristic::linear(100.0, 0.12);
    const FloatingConverter conv(spring, synthesize_weight_counter(spring, 0.02, 10.0), CounterElement::weight(10.0));
    const auto make = [&](double cap, bool latch) { return GripperModel{conv, 0.1, 0.01, latch, cap, 0.05, true}; };

    const auto m = make(2.0, true);
    const auto plan = plan_grasp(m, 10.0);
    const auto trace = simulate_grasp(m, plan);
    const bool completes = trace.rows.back().phase == GraspPhase::done &&
                           std::abs(plan.gap_x - 0.010) <= 1e-12 &&
                           std::abs(trace.max_actuator_force() - 1.0) <= gripper_force_tol_n &&
                           std::abs(trace.final_grip_force() - 10.0) <= gripper_force_tol_n &&
                           std::abs(trace.amplification() - 10.0) <= 1e-6;

    bool stall = false, backdrive = false;
    try {
        const auto weak = make(0.5, true);
        simulate_grasp(weak, plan_grasp(weak, 10.0));
    } catch (const ActuatorStall&) {
        stall = true;
    }
    try {
        const auto loose = make(2.0, false);
        simulate_grasp(loose, plan_grasp(loose, 10.0));
    } catch (const BackdriveFault&) {
        backdrive = true;
    }
    return {completes && stall && backdrive,
            fmt("max actuator %.6f N", trace.max_actuator_force()) + fmt(", final grip %.6f N", trace.final_grip_force()) +
                fmt(", amplification %.3f", trace.amplification()) + (stall ? ", stall raised" : ", no stall") +
                (backdrive ? ", backdrive raised" : ", no backdrive")};
}

Outcome arc_length_oracle() {
    double worst = 0.0;
    for (double a : {0.001, 0.004982, 0.02}) {
        for (double theta_max : {1.0, 2.0 * std::numbers::pi, 10.0}) {
            const auto p = oracle::affine_profile(0.02, 0.0, a, theta_max, 512);
            worst = std::max(worst, oracle::relative(arc_length(p, theta_max, 2048), oracle::spiral_arc_length(a, theta_max)));
        }
    }
    return {worst <= arc_length_rel_tol, fmt("worst relative error %.3e", worst)};
}

Outcome io_determinism() {
    const auto dir = fs::temp_directory_path() / "floatconv_acceptance";
    fs::create_directories(dir);
    const fs::path configs{FLOATCONV_CONFIG_DIR};

    bool lossless = true;
    for (const char* name : {"ideal_linear.json", "prototype.json", "spring_counter.json"}) {
        const auto config = cli::load_run_config((configs / name).string());
        const auto profile = cli::build_profile(config);
        const auto csv = profile_to_csv(profile);
        const auto back = read_profile_csv(csv, profile.circular_radius());
        for (std::size_t i = 0; i < profile.size(); ++i)
            lossless = lossless && std::abs(back.samples()[i].r - profile.samples()[i].r) * 1e3 <= csv_quantum + 1e-12 &&
                       std::abs(rad_to_deg(back.samples()[i].theta - profile.samples()[i].theta)) <= csv_quantum + 1e-12;
        lossless = lossless && profile_to_csv(back) == csv;
    }

    bool identical = true, pipeline = true;
    for (const char* name : {"ideal_linear.json", "spring_counter.json", "calibration.json"}) {
        const auto config = (configs / name).string();
        const auto a = (dir / (std::string(name) + ".a.csv")).string();
        const auto b = (dir / (std::string(name) + ".b.csv")).string();
        const auto sa = (dir / (std::string(name) + ".a.svg")).string();
        const auto sb = (dir / (std::string(name) + ".b.svg")).string();
        pipeline = pipeline && cli({"synthesize", "--config", config, "--out", a}) == 0 &&
                   cli({"synthesize", "--config", config, "--out", b}) == 0 &&
                   cli({"verify", "--config", config, "--profile", a}) == 0 &&
                   cli({"export-svg", "--profile", a, "--out", sa}) == 0 &&
                   cli({"export-svg", "--profile", b, "--out", sb}) == 0;
        identical = identical && slurp(a) == slurp(b) && slurp(sa) == slurp(sb) && !slurp(a).empty();
    }
    const auto s1 = (dir / "sweep1.csv").string(), s2 = (dir / "sweep2.csv").string();
    const auto calibration = (configs / "calibration.json").string();
    pipeline = pipeline && cli({"sweep", "--config", calibration, "--out", s1}) == 0 &&
               cli({"sweep", "--config", calibration, "--out", s2}) == 0;
    identical = identical && slurp(s1) == slurp(s2);

    return {lossless && identical && pipeline, std::string(lossless ? "round trip lossless" : "round trip lossy") +
                                                   (identical ? ", outputs identical" : ", outputs differ") +
                                                   (pipeline ? ", synthesize->verify exit 0" : ", pipeline failed")};
}

}  // namespace

int main() {
    report(1, "balance exactness of weight-counter synthesis", balance_exactness, true);
    report(2, "spiral slope equals k R^2 / mg", slope_closed_form, true);
    report(3, "energy identity and ledger closure", energy_identity);
    report(4, "constant operating force k x under an offset gap", constant_operating_force);
    report(5, "operating-force ratio calibration", ratio_calibration, true);
    report(6, "truncation offset of the prototype pulley", truncation_offset);
    report(7, "spring-counter synthesis against independent integration", spring_counter_oracle);
    report(8, "gripper force amplification, stall and backdrive", gripper_amplification);
    report(9, "arc length against the spiral closed form", arc_length_oracle);
    report(10, "I/O determinism and synthesize-verify pipeline", io_determinism);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
