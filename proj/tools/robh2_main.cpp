// Command-line front end: analyze, synth, simulate, example.
//
// Reports are printed to stdout as JSON and are byte-identical across runs
// for fixed inputs and seeds (wall-clock timings only appear under --timings).
// Exit codes: 0 success, 1 no certificate / solver failure, 2 invalid input.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <robh2/estimators.hpp>
#include <robh2/example_plants.hpp>
#include <robh2/json_io.hpp>
#include <robh2/simulate.hpp>
#include <robh2/synthesis.hpp>

namespace {

using nlohmann::ordered_json;
using namespace robh2;

constexpr const char* kToolVersion = "0.1.0";

struct GlobalFlags {
    double tol = 1e-7;
    std::uint64_t seed = 0;
    int max_iter = 200;
    bool timings = false;
};

SolveOptions solve_options(const GlobalFlags& g) {
    SolveOptions o;
    o.tol = g.tol;
    o.max_iter = g.max_iter;
    return o;
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ordered_json base_report(const std::string& command, const GlobalFlags& g) {
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["command"] = command;
    j["seed"] = g.seed;
    j["tol"] = g.tol;
    j["max_iter"] = g.max_iter;
    return j;
}

ordered_json margins_json(const MarginReport& margins) {
    ordered_json j = ordered_json::array();
    for (std::size_t i = 0; i < margins.margins.size(); ++i)
        j.push_back({{"constraint", margins.names[i]}, {"margin", margins.margins[i]}});
    return j;
}

void emit(ordered_json& report, const GlobalFlags& g, const Stopwatch& watch) {
    if (g.timings) report["timings"] = {{"total_s", watch.seconds()}};
    std::cout << report.dump(2) << "\n";
}

LftPlant load_plant(const std::string& path, ordered_json& report) {
    const std::string text = read_file(path);
    report["input_digest"] = content_digest(text);
    return plant_from_json(text);
}

ClosedLoopLft close_with(const LftPlant& plant, const ControllerFile& controller) {
    if (controller.type == ControllerFile::Type::state_feedback)
        return close_state_feedback(plant, controller.F);
    return close_output_feedback(plant, controller.lft);
}

int cmd_analyze(const std::string& plant_path, const GlobalFlags& g) {
    Stopwatch watch;
    ordered_json report = base_report("analyze", g);
    const LftPlant plant = load_plant(plant_path, report);
    const ValidatedPlant vp = validate_plant(plant);
    if (!vp->is_discrete()) throw DimensionMismatch("analyze expects a discrete-time plant");

    try {
        const AnalysisCertificate cert = analyze_robust_h2(open_loop(vp.get()), solve_options(g));
        report["status"] = to_string(cert.solver_status);
        report["gamma"] = cert.gamma;
        report["iterations"] = cert.iterations;
        report["margins"] = margins_json(cert.margins);
        emit(report, g, watch);
        return 0;
    } catch (const InfeasibleError& e) {
        report["status"] = "infeasible";
        report["message"] = e.what();
        emit(report, g, watch);
        std::cerr << "infeasible: " << e.what() << "\n";
        return 1;
    }
}

int cmd_synth(const std::string& mode, const std::string& plant_path, const std::string& out_path,
              const GlobalFlags& g) {
    Stopwatch watch;
    ordered_json report = base_report("synth", g);
    report["mode"] = mode;
    const LftPlant plant = load_plant(plant_path, report);
    const ValidatedPlant vp = validate_plant(plant);

    const AssumptionReport assumptions = check_assumptions(vp.get());
    report["stabilizable"] = assumptions.stabilizable;
    report["detectable"] = assumptions.detectable;

    try {
        ControllerFile out;
        double gamma = 0.0;
        ClosedLoopLft closed;
        if (mode == "sf") {
            const SfSynthesisResult result = synthesize_sf(vp, solve_options(g));
            gamma = result.gamma;
            out.type = ControllerFile::Type::state_feedback;
            out.F = result.F;
            closed = close_state_feedback(vp.get(), result.F);
            report["solver_status"] = to_string(result.solver_status);
        } else {
            const GsSynthesisResult result = synthesize_gs(vp, solve_options(g));
            gamma = result.gamma;
            out.type = ControllerFile::Type::lft_output_feedback;
            out.lft = result.controller;
            closed = close_output_feedback(vp.get(), result.controller);
            report["solver_status"] = to_string(result.solver_status);
            report["hat_residual"] = result.hat_residual;
        }
        report["gamma"] = gamma;

        // Independent closed-loop re-verification before claiming success.
        const AnalysisCertificate recheck = analyze_robust_h2(closed, solve_options(g));
        report["verified_gamma"] = recheck.gamma;
        report["verified_margin"] = recheck.margins.min_margin();

        if (!out_path.empty()) {
            write_file(out_path, controller_to_json(out));
            report["controller_file"] = out_path;
        }
        emit(report, g, watch);
        return 0;
    } catch (const InfeasibleError& e) {
        report["status"] = "infeasible";
        report["message"] = e.what();
        emit(report, g, watch);
        std::cerr << "infeasible: " << e.what() << "\n";
        return 1;
    }
}

int cmd_simulate(const std::string& plant_path, const std::string& controller_path,
                 bool white_noise, bool induced, double step_magnitude, int horizon, int grid,
                 int runs, int burn_in, const std::vector<double>& delta_values,
                 const std::string& csv_path, const GlobalFlags& g) {
    Stopwatch watch;
    ordered_json report = base_report("simulate", g);
    const LftPlant plant = load_plant(plant_path, report);
    const ValidatedPlant vp = validate_plant(plant);
    const std::string ktext = read_file(controller_path);
    report["controller_digest"] = content_digest(ktext);
    const ControllerFile controller = controller_from_json(ktext);
    const ClosedLoopLft closed = close_with(vp.get(), controller);

    const int scenarios = (white_noise ? 1 : 0) + (induced ? 1 : 0) +
                          (step_magnitude != 0.0 ? 1 : 0);
    if (scenarios != 1)
        throw StructuralViolation("pick exactly one of --white-noise, --induced, --step");

    // Frozen Delta from per-block values (zeros by default). Doubled
    // structures take the base block values.
    auto frozen_delta = [&]() {
        UncertaintyStructure s = closed.structure;
        const int nblocks =
            static_cast<int>(s.scalar_blocks.size() + s.full_blocks.size());
        Vector values = Vector::Zero(nblocks);
        if (!delta_values.empty()) {
            if (static_cast<int>(delta_values.size()) != nblocks)
                throw DimensionMismatch("--delta needs one value per uncertainty block");
            for (int i = 0; i < nblocks; ++i) values(i) = delta_values[i];
        }
        return frozen_uncertainty(s, values);
    };

    if (white_noise) {
        WhiteNoiseOptions opt;
        opt.seed = g.seed;
        if (runs > 0) opt.n_runs = runs;
        if (horizon > 0) opt.horizon = horizon;
        if (burn_in >= 0) opt.burn_in = burn_in;
        const GainEstimate est = estimate_h2_white_noise(closed, closed.structure, opt);
        report["estimate"] = {{"kind", "white_noise_rms"},
                              {"value", est.value},
                              {"standard_error", est.standard_error},
                              {"runs", est.runs},
                              {"samples_per_run", est.samples_per_run}};
    } else if (induced) {
        const auto deltas = scalar_delta_grid(closed.structure, grid > 0 ? grid : 3);
        const GainEstimate est =
            estimate_induced_gain(closed, deltas, default_freq_grid(512));
        report["estimate"] = {{"kind", "induced_l2_lower_bound"},
                              {"value", est.value},
                              {"grid_points", est.runs},
                              {"frequencies", est.samples_per_run}};
    } else {
        const DiscreteLti frozen = freeze_closed_loop(closed, frozen_delta());
        const int t = horizon > 0 ? horizon : 1000;
        const SimulationRun run = step_disturbance_response(frozen, step_magnitude, t);
        double peak = 0.0, tail = 0.0;
        for (int k = 0; k < t; ++k)
            peak = std::max(peak, run.outputs.col(k).cwiseAbs().maxCoeff());
        if (t > 0) tail = run.outputs.col(t - 1).cwiseAbs().maxCoeff();
        report["step"] = {{"magnitude", step_magnitude},
                          {"horizon", t},
                          {"peak_output", peak},
                          {"final_output", tail}};
        if (!csv_path.empty()) {
            write_file(csv_path, run.to_csv());
            report["csv_file"] = csv_path;
        }
    }
    emit(report, g, watch);
    return 0;
}

int cmd_example(const std::string& name, const std::string& emit_dir, const GlobalFlags& g) {
    Stopwatch watch;
    ordered_json report = base_report("example", g);
    report["name"] = name;
    std::filesystem::create_directories(emit_dir);

    std::vector<std::pair<std::string, std::string>> files;
    if (name == "two-disk") {
        const TwoDiskBuild build = build_two_disk();
        files.emplace_back("two_disk_raw.json", plant_to_json(build.raw));
        files.emplace_back("two_disk_weighted.json", plant_to_json(build.weighted));
    } else if (name == "amb") {
        const AmbBuild build = build_amb();
        files.emplace_back("amb_lft_continuous.json", plant_to_json(build.lft.plant));
        files.emplace_back("amb_weighted.json", plant_to_json(build.weighted));
    } else {
        throw StructuralViolation("unknown example: " + name +
                                  " (expected two-disk or amb)");
    }
    ordered_json out = ordered_json::array();
    for (const auto& [fname, text] : files) {
        const std::string path = (std::filesystem::path(emit_dir) / fname).string();
        write_file(path, text);
        out.push_back(path);
    }
    report["files"] = out;
    emit(report, g, watch);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust and gain-scheduled H2 design for discrete-time LFT systems"};
    app.require_subcommand(1);

    GlobalFlags g;
    app.add_option("--tol", g.tol, "solver tolerance")->capture_default_str();
    app.add_option("--seed", g.seed, "random seed")->capture_default_str();
    app.add_option("--max-iter", g.max_iter, "solver iteration limit")->capture_default_str();
    app.add_flag("--timings", g.timings, "include wall-clock timings in the report");

    std::string plant_path, controller_path, out_path, mode, example_name, emit_dir = ".",
                csv_path;
    bool white_noise = false, induced = false;
    double step_magnitude = 0.0;
    int horizon = 0, grid = 0, runs = 0, burn_in = -1;
    std::vector<double> delta_values;

    auto* analyze = app.add_subcommand("analyze", "robust H2 analysis of a plant file");
    analyze->add_option("plant", plant_path, "plant JSON file")->required();

    auto* synth = app.add_subcommand("synth", "controller synthesis (sf or gs)");
    synth->add_option("mode", mode, "sf (state feedback) or gs (gain scheduling)")
        ->required()
        ->check(CLI::IsMember({"sf", "gs"}));
    synth->add_option("plant", plant_path, "plant JSON file")->required();
    synth->add_option("-o,--output", out_path, "controller output file");

    auto* simulate = app.add_subcommand("simulate", "closed-loop simulation and estimators");
    simulate->add_option("plant", plant_path, "plant JSON file")->required();
    simulate->add_option("controller", controller_path, "controller JSON file")->required();
    simulate->add_flag("--white-noise", white_noise, "white-noise RMS estimate");
    simulate->add_flag("--induced", induced, "frozen-grid induced-gain lower bound");
    simulate->add_option("--step", step_magnitude, "step disturbance magnitude");
    simulate->add_option("--horizon", horizon, "simulation horizon (steps)");
    simulate->add_option("--grid", grid, "grid points per uncertainty block");
    simulate->add_option("--runs", runs, "white-noise run count");
    simulate->add_option("--burn-in", burn_in, "white-noise burn-in steps");
    simulate->add_option("--delta", delta_values, "frozen per-block uncertainty values")
        ->delimiter(',');
    simulate->add_option("--csv", csv_path, "trajectory CSV output file");

    auto* example = app.add_subcommand("example", "emit a built-in benchmark plant");
    example->add_option("name", example_name, "two-disk or amb")->required();
    example->add_option("--emit", emit_dir, "output directory")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(plant_path, g);
        if (synth->parsed()) return cmd_synth(mode, plant_path, out_path, g);
        if (simulate->parsed())
            return cmd_simulate(plant_path, controller_path, white_noise, induced,
                                step_magnitude, horizon, grid, runs, burn_in, delta_values,
                                csv_path, g);
        if (example->parsed()) return cmd_example(example_name, emit_dir, g);
    } catch (const SolverFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
