// Monte Carlo experiment driver: per-draw solves, ergodic averaging over
// sweeps, oracle-gap statistics, the detection simulation table, and the
// CSV writers behind the command-line tool.
//
// Draw i of every sweep value uses random stream (seed, i), so sweep points
// share channel realizations. Per-draw results are stored by index and
// reduced with pairwise summation, which keeps every output bit-identical
// between the serial and the OpenMP path.
#pragma once

#include "covertrate/config.hpp"
#include "covertrate/parallel.hpp"
#include "covertrate/solver.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace covert::harness {

using config::ExperimentConfig;

struct DrawOutcome {
    solver::SolveResult result;
    std::optional<double> oracle_rate;  ///< set when the oracle was run and feasible
    std::optional<double> gap;          ///< (oracle - sca) / oracle
};

/// Channel realization for draw `index`.
model::ChannelRealization draw_channel(std::uint64_t seed, std::int64_t index);

/// Solves draw `index` in cfg.mode; runs the oracle on cfg.oracle_grid points
/// when with_oracle is set.
DrawOutcome evaluate_draw(const ExperimentConfig& cfg, std::int64_t index,
                          bool with_oracle);

std::vector<DrawOutcome> evaluate_draws(const ExperimentConfig& cfg, bool with_oracle,
                                        Execution exec = Execution::Parallel);

struct GapStats {
    std::int64_t compared = 0;  ///< draws where the oracle was feasible
    double median = 0.0;
    double mean = 0.0;
    double max = 0.0;
    std::int64_t sca_infeasible = 0;  ///< oracle feasible but the solver reported infeasible
};

GapStats gap_stats(const std::vector<DrawOutcome>& outcomes);

struct ResultRow {
    std::string sweep_var;
    double sweep_value = 0.0;
    std::string mode;
    double ergodic_rate = 0.0;   ///< mean over feasible draws, 0 when there are none
    double mean_rho_cs = 0.0;    ///< same averaging
    double infeasible_frac = 0.0;
    std::optional<double> oracle_gap_median;
    std::int64_t draws = 0;
    std::uint64_t seed = 0;
    std::optional<GapStats> gaps;
};

ResultRow summarize(const ExperimentConfig& cfg, double sweep_value,
                    const std::vector<DrawOutcome>& outcomes);

/// One row per sweep value.
std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg,
                                 Execution exec = Execution::Parallel);

/// run_sweep with the oracle forced on; each row carries full gap statistics.
std::vector<ResultRow> oracle_gap_report(const ExperimentConfig& cfg,
                                         Execution exec = Execution::Parallel);

struct DetectRow {
    int n = 0;
    double theta = 0.0;
    double p_fa_closed = 0.0;
    double p_md_closed = 0.0;
    double p_fa_emp = 0.0;
    double p_md_emp = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
};

/// Closed-form and simulated FA/MD at theta = sigma2_w + k*psi1 for every k
/// in cfg.detection.thresholds_psi1 and every n in cfg.detection.n_values,
/// at the first sweep-free operating point of cfg.
std::vector<DetectRow> detect_sim(const ExperimentConfig& cfg,
                                  Execution exec = Execution::Parallel);

/// Shortest round-trip decimal form.
std::string format_double(double x);

inline constexpr const char* kSweepHeader =
    "sweep_var,sweep_value,mode,ergodic_rate,mean_rho_cs,infeasible_frac,"
    "oracle_gap_median,draws,seed";
inline constexpr const char* kGapHeader =
    "sweep_var,sweep_value,mode,compared,gap_median,gap_mean,gap_max,"
    "sca_infeasible,draws,seed";
inline constexpr const char* kDetectHeader =
    "n,theta,p_fa_closed,p_md_closed,p_fa_emp,p_md_emp,trials,seed";

void write_sweep_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_gap_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_detect_csv(std::ostream& out, const std::vector<DetectRow>& rows);

}  // namespace covert::harness
