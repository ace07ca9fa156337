// covertrate: command-line front end for the solver and the Monte Carlo
// harness.
//
//   covertrate solve          --config c.json [--gains g_ab,g_ac,g_au,g_aw | --draw i]
//   covertrate sweep          --config c.json [--seed N] [--draws N] [--out f.csv]
//   covertrate oracle-compare --config c.json [--seed N] [--draws N] [--out f.csv]
//   covertrate detect-sim     --config c.json [--seed N] [--out f.csv]
//
// Exit codes: 0 success, 2 configuration error, 3 infeasible everywhere.

#include "covertrate/config.hpp"
#include "covertrate/harness.hpp"
#include "covertrate/rates.hpp"
#include "covertrate/robust.hpp"
#include "covertrate/solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace covert;

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> draws;
    std::string out_path;
    std::vector<double> gains;
    std::int64_t draw_index = 0;
};

config::ExperimentConfig load(const Options& o) {
    config::ExperimentConfig cfg = o.config_path.empty()
                                       ? config::ExperimentConfig{}
                                       : config::load_config(o.config_path);
    if (o.seed) cfg.seed = *o.seed;
    if (o.draws) cfg.draws = *o.draws;
    cfg.validate();
    return cfg;
}

// Writes to --out when given, stdout otherwise.
template <class Fn>
void emit(const Options& o, Fn&& write) {
    if (o.out_path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw config::ConfigError(o.out_path + ": cannot open for writing");
    write(f);
}

bool all_infeasible(const std::vector<harness::ResultRow>& rows) {
    return std::all_of(rows.begin(), rows.end(),
                       [](const harness::ResultRow& r) { return r.infeasible_frac >= 1.0; });
}

nlohmann::json to_json(const solver::SolveResult& r) {
    nlohmann::json j;
    j["mode"] = std::string(solver::to_string(r.mode));
    j["rho_s"] = r.policy.rho_s;
    j["rho_cs"] = r.policy.rho_cs;
    j["total_power"] = r.policy.total_power;
    j["sec_rate_psi0"] = r.rates.sec_rate_psi0;
    j["sec_rate_psi1"] = r.rates.sec_rate_psi1;
    j["covert_rate"] = r.rates.covert_rate;
    j["average_rate"] = r.rates.average_rate;
    j["iterations"] = r.iterations;
    j["objective_trace"] = r.objective_trace;
    return j;
}

int run_solve(const Options& o) {
    const auto base = load(o);
    const auto cfg =
        config::with_sweep_value(base, base.sweep.variable, base.sweep.values.front());
    model::ChannelRealization ch;
    if (!o.gains.empty()) {
        if (o.gains.size() != 4 ||
            std::any_of(o.gains.begin(), o.gains.end(), [](double g) { return g < 0.0; })) {
            throw config::ConfigError("--gains: expected four nonnegative values");
        }
        ch = {o.gains[0], o.gains[1], o.gains[2], o.gains[3]};
    } else {
        ch = harness::draw_channel(cfg.seed, o.draw_index);
    }
    const auto snrs = model::link_snrs(cfg.geometry, cfg.noise, cfg.total_power, ch);
    const auto slots = cfg.slots();

    solver::SolveResult r;
    switch (cfg.mode) {
        case config::RunMode::Joint:
            r = solver::dc_solve(snrs, slots, cfg.qos, cfg.solver);
            break;
        case config::RunMode::Sic:
            r = solver::sic_solve(snrs, slots, cfg.qos, rates::sic_indicator(cfg.geometry, ch),
                                  cfg.solver);
            break;
        case config::RunMode::AnAuto:
            r = solver::an_solve(snrs, slots, cfg.qos, cfg.solver);
            break;
        case config::RunMode::Robust:
            r = robust::robust_solve(ch, cfg.geometry, cfg.noise, cfg.total_power, slots,
                                     cfg.qos, cfg.budget, cfg.solver, cfg.bound_model);
            break;
    }
    nlohmann::json j = to_json(r);
    j["gamma_b"] = snrs.gamma_b;
    j["gamma_c"] = snrs.gamma_c;
    j["gamma_u"] = snrs.gamma_u;
    j["gamma_w"] = snrs.gamma_w;
    emit(o, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
    return r.feasible() ? 0 : kExitInfeasible;
}

int run_sweep(const Options& o) {
    const auto cfg = load(o);
    const auto rows = harness::run_sweep(cfg);
    emit(o, [&](std::ostream& out) { harness::write_sweep_csv(out, rows); });
    return all_infeasible(rows) ? kExitInfeasible : 0;
}

int run_oracle_compare(const Options& o) {
    const auto cfg = load(o);
    const auto rows = harness::oracle_gap_report(cfg);
    emit(o, [&](std::ostream& out) { harness::write_gap_csv(out, rows); });
    return all_infeasible(rows) ? kExitInfeasible : 0;
}

int run_detect_sim(const Options& o) {
    const auto cfg = load(o);
    const auto rows = harness::detect_sim(cfg);
    emit(o, [&](std::ostream& out) { harness::write_detect_csv(out, rows); });
    return 0;
}

void add_common(CLI::App* cmd, Options& o, bool with_draws) {
    cmd->add_option("--config", o.config_path, "JSON experiment configuration");
    cmd->add_option("--seed", o.seed, "override the configured seed");
    if (with_draws) cmd->add_option("--draws", o.draws, "override the Monte Carlo draw count");
    cmd->add_option("--out", o.out_path, "output path (stdout when omitted)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Power allocation and Monte Carlo evaluation for joint secrecy and "
                 "covert transmission"};
    app.require_subcommand(1);
    app.footer(std::string("CSV columns:\n  sweep:          ") + harness::kSweepHeader +
               "\n  oracle-compare: " + harness::kGapHeader +
               "\n  detect-sim:     " + harness::kDetectHeader +
               "\nExit codes: 0 success, 2 configuration error, 3 infeasible everywhere.");

    Options o;
    auto* solve = app.add_subcommand("solve", "solve one channel realization, print JSON");
    add_common(solve, o, false);
    solve->add_option("--gains", o.gains, "|h|^2 for the ab, ac, au, aw links")
        ->delimiter(',')
        ->expected(4);
    solve->add_option("--draw", o.draw_index, "use Monte Carlo draw i of the seed instead");

    auto* sweep = app.add_subcommand("sweep", "ergodic rate over the configured sweep");
    add_common(sweep, o, true);
    auto* oracle = app.add_subcommand("oracle-compare", "solver vs exhaustive grid search");
    add_common(oracle, o, true);
    auto* detect = app.add_subcommand("detect-sim", "closed-form vs simulated detection");
    add_common(detect, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*solve) return run_solve(o);
        if (*sweep) return run_sweep(o);
        if (*oracle) return run_oracle_compare(o);
        if (*detect) return run_detect_sim(o);
    } catch (const config::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
