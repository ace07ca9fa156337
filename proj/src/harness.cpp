#include "covertrate/harness.hpp"

#include "covertrate/detection.hpp"
#include "covertrate/rates.hpp"
#include "covertrate/robust.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace covert::harness {

namespace {

using config::RunMode;
using solver::RateFamily;

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) return upper;
    const double lower = *std::max_element(v.begin(), v.begin() + mid);
    return 0.5 * (lower + upper);
}

double mean_of(const std::vector<double>& v) {
    return v.empty() ? 0.0 : pairwise_sum(v) / static_cast<double>(v.size());
}

}  // namespace

model::ChannelRealization draw_channel(std::uint64_t seed, std::int64_t index) {
    auto rng = model::make_stream(seed, static_cast<std::uint64_t>(index));
    return model::sample_channel(rng);
}

DrawOutcome evaluate_draw(const ExperimentConfig& cfg, std::int64_t index,
                          bool with_oracle) {
    const auto ch = draw_channel(cfg.seed, index);
    const auto slots = cfg.slots();
    const auto snrs = model::link_snrs(cfg.geometry, cfg.noise, cfg.total_power, ch);

    DrawOutcome out;
    solver::SolveResult oracle;
    switch (cfg.mode) {
        case RunMode::Joint:
            out.result = solver::dc_solve(snrs, slots, cfg.qos, cfg.solver);
            if (with_oracle) {
                oracle = solver::grid_oracle(snrs, slots, cfg.qos, cfg.oracle_grid,
                                             RateFamily::standard());
            }
            break;
        case RunMode::Sic: {
            const auto a = rates::sic_indicator(cfg.geometry, ch);
            out.result = solver::sic_solve(snrs, slots, cfg.qos, a, cfg.solver);
            if (with_oracle) {
                oracle = solver::grid_oracle(snrs, slots, cfg.qos, cfg.oracle_grid,
                                             RateFamily::sic(a));
            }
            break;
        }
        case RunMode::AnAuto:
            out.result = solver::an_solve(snrs, slots, cfg.qos, cfg.solver);
            if (with_oracle) {
                oracle = solver::grid_oracle(snrs, slots, cfg.qos, cfg.oracle_grid,
                                             RateFamily::artificial_noise());
            }
            break;
        case RunMode::Robust: {
            const auto bounds = robust::worst_case_snr_bounds(
                ch, cfg.geometry, cfg.noise, cfg.total_power, cfg.budget, cfg.bound_model);
            out.result = robust::robust_solve(bounds, slots, cfg.qos, cfg.solver);
            if (with_oracle) {
                oracle = robust::robust_grid_oracle(bounds, slots, cfg.qos, cfg.oracle_grid);
            }
            break;
        }
    }
    if (with_oracle && oracle.feasible()) {
        const double best = oracle.rates.average_rate;
        const double got = out.result.feasible() ? out.result.rates.average_rate : 0.0;
        out.oracle_rate = best;
        out.gap = best > 0.0 ? (best - got) / best : 0.0;
    }
    return out;
}

std::vector<DrawOutcome> evaluate_draws(const ExperimentConfig& cfg, bool with_oracle,
                                        Execution exec) {
    std::vector<DrawOutcome> out(static_cast<std::size_t>(cfg.draws));
    for_each_index(cfg.draws, exec, [&](std::int64_t i) {
        out[static_cast<std::size_t>(i)] = evaluate_draw(cfg, i, with_oracle);
    });
    return out;
}

GapStats gap_stats(const std::vector<DrawOutcome>& outcomes) {
    GapStats s;
    std::vector<double> gaps;
    for (const auto& o : outcomes) {
        if (!o.gap) continue;
        gaps.push_back(*o.gap);
        if (!o.result.feasible()) ++s.sca_infeasible;
    }
    s.compared = static_cast<std::int64_t>(gaps.size());
    if (gaps.empty()) return s;
    s.median = median_of(gaps);
    s.mean = mean_of(gaps);
    s.max = *std::max_element(gaps.begin(), gaps.end());
    return s;
}

ResultRow summarize(const ExperimentConfig& cfg, double sweep_value,
                    const std::vector<DrawOutcome>& outcomes) {
    std::vector<double> rate;
    std::vector<double> rho;
    for (const auto& o : outcomes) {
        if (!o.result.feasible()) continue;
        rate.push_back(o.result.rates.average_rate);
        rho.push_back(o.result.policy.rho_cs);
    }
    ResultRow row;
    row.sweep_var = cfg.sweep.variable;
    row.sweep_value = sweep_value;
    row.mode = std::string(config::to_string(cfg.mode));
    row.ergodic_rate = mean_of(rate);
    row.mean_rho_cs = mean_of(rho);
    row.infeasible_frac =
        outcomes.empty() ? 0.0
                         : static_cast<double>(outcomes.size() - rate.size()) /
                               static_cast<double>(outcomes.size());
    row.draws = static_cast<std::int64_t>(outcomes.size());
    row.seed = cfg.seed;
    const bool compared = std::any_of(outcomes.begin(), outcomes.end(),
                                      [](const DrawOutcome& o) { return o.gap.has_value(); });
    if (compared) {
        row.gaps = gap_stats(outcomes);
        row.oracle_gap_median = row.gaps->median;
    }
    return row;
}

namespace {

std::vector<ResultRow> sweep_rows(const ExperimentConfig& cfg, bool with_oracle,
                                  Execution exec) {
    std::vector<ResultRow> rows;
    for (double v : cfg.sweep.values) {
        const auto point = config::with_sweep_value(cfg, cfg.sweep.variable, v);
        rows.push_back(summarize(point, v, evaluate_draws(point, with_oracle, exec)));
    }
    return rows;
}

}  // namespace

std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg, Execution exec) {
    return sweep_rows(cfg, cfg.oracle_compare, exec);
}

std::vector<ResultRow> oracle_gap_report(const ExperimentConfig& cfg, Execution exec) {
    return sweep_rows(cfg, true, exec);
}

std::vector<DetectRow> detect_sim(const ExperimentConfig& cfg, Execution exec) {
    const model::PowerPolicy pol{cfg.detection.rho_s, 1.0, cfg.total_power};
    const auto psi = detection::psi_params(pol, cfg.geometry.d_aw, cfg.geometry.alpha);
    const double s2 = cfg.noise.sigma2_w;
    std::vector<double> thetas;
    for (double k : cfg.detection.thresholds_psi1) thetas.push_back(s2 + k * psi.psi1);

    std::vector<DetectRow> rows;
    for (int n : cfg.detection.n_values) {
        const auto emp = detection::simulate_detection(
            n, cfg.detection.trials, pol, cfg.geometry, cfg.noise, thetas, cfg.seed, exec);
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            DetectRow r;
            r.n = n;
            r.theta = thetas[i];
            r.p_fa_closed = detection::fa_prob(thetas[i], s2, psi.psi0);
            r.p_md_closed = detection::md_prob(thetas[i], s2, psi.psi1);
            r.p_fa_emp = emp[i].p_fa;
            r.p_md_emp = emp[i].p_md;
            r.trials = cfg.detection.trials;
            r.seed = cfg.seed;
            rows.push_back(r);
        }
    }
    return rows;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_sweep_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << kSweepHeader << '\n';
    for (const auto& r : rows) {
        out << r.sweep_var << ',' << format_double(r.sweep_value) << ',' << r.mode << ','
            << format_double(r.ergodic_rate) << ',' << format_double(r.mean_rho_cs) << ','
            << format_double(r.infeasible_frac) << ','
            << (r.oracle_gap_median ? format_double(*r.oracle_gap_median) : "") << ','
            << r.draws << ',' << r.seed << '\n';
    }
}

void write_gap_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << kGapHeader << '\n';
    for (const auto& r : rows) {
        const GapStats g = r.gaps.value_or(GapStats{});
        out << r.sweep_var << ',' << format_double(r.sweep_value) << ',' << r.mode << ','
            << g.compared << ',' << format_double(g.median) << ','
            << format_double(g.mean) << ',' << format_double(g.max) << ','
            << g.sca_infeasible << ',' << r.draws << ',' << r.seed << '\n';
    }
}

void write_detect_csv(std::ostream& out, const std::vector<DetectRow>& rows) {
    out << kDetectHeader << '\n';
    for (const auto& r : rows) {
        out << r.n << ',' << format_double(r.theta) << ',' << format_double(r.p_fa_closed)
            << ',' << format_double(r.p_md_closed) << ',' << format_double(r.p_fa_emp)
            << ',' << format_double(r.p_md_emp) << ',' << r.trials << ',' << r.seed
            << '\n';
    }
}

}  // namespace covert::harness
