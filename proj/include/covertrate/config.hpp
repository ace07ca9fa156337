// Experiment configuration: one JSON document. Fields ending in `_db` are
// converted with linear = 10^(dB/10) at load time; every other number is
// taken as linear. Unknown keys are rejected so typos do not silently fall
// back to defaults.
#pragma once

#include "covertrate/model.hpp"
#include "covertrate/robust.hpp"
#include "covertrate/solver.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace covert::config {

/// Thrown for unreadable files, malformed JSON (message carries line and
/// column) and invalid values (message carries the JSON path).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RunMode { Joint, Sic, AnAuto, Robust };

std::string_view to_string(RunMode m);
std::optional<RunMode> parse_run_mode(std::string_view s);

struct Sweep {
    std::string variable = "P_db";
    std::vector<double> values{3.0};
};

struct DetectionSetup {
    double rho_s = 1.0;
    std::vector<int> n_values{10, 100, 5000};
    std::int64_t trials = 20000;
    /// Thresholds as theta = sigma2_w + k * psi1 for each listed k.
    std::vector<double> thresholds_psi1{0.0, 0.75, 1.5, 2.25, 3.0};
};

/// Defaults: d_au = d_aw = 5 m, alpha = 4, R_sec_min = 0.5, R_cov_min = 0.1,
/// 1 - epsilon = 0.9, p_r1 = 0.5, P = 3 dB, sigma2_b = sigma2_c = -33 dB,
/// sigma2_u = sigma2_w = -30 dB, 10^4 draws.
struct ExperimentConfig {
    model::NetworkGeometry geometry{};
    model::NoiseProfile noise{model::db_to_linear(-33.0), model::db_to_linear(-33.0),
                              model::db_to_linear(-30.0), model::db_to_linear(-30.0)};
    double total_power = model::db_to_linear(3.0);
    double p_r1 = 0.5;
    model::QosRequirements qos{};
    robust::UncertaintyBudget budget{};
    robust::BoundModel bound_model = robust::BoundModel::Additive;
    Sweep sweep{};
    std::int64_t draws = 10000;
    std::uint64_t seed = 1;
    RunMode mode = RunMode::Joint;
    bool oracle_compare = false;
    int oracle_grid = 100001;  ///< grid for oracle comparisons
    solver::SolverConfig solver{};
    DetectionSetup detection{};

    model::SlotModel slots() const { return model::SlotModel::from_covert_probability(p_r1); }

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Names accepted as sweep.variable.
const std::vector<std::string>& sweep_variables();

/// Copy of cfg with the sweep variable set to value (dB names converted).
ExperimentConfig with_sweep_value(const ExperimentConfig& cfg, std::string_view variable,
                                  double value);

ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::string& path);

}  // namespace covert::config
