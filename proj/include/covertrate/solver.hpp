// Power-allocation optimizer for the joint secrecy / covert problem.
//
// With rho_s fixed at one (the Psi0 secrecy term is increasing in rho_s when
// gamma_b > gamma_u, and rho_s = 1 makes the warden's hypotheses identical),
// the problem is one-dimensional in rho_cs:
//
//   max  base + p_r1 * [S(rho)]^+ + C(rho)
//   s.t. base + p_r1 * [S(rho)]^+ >= R_sec_min      (average secrecy)
//        C(rho) >= R_cov_min                          (covert rate)
//
// where base is the weighted Psi0 secrecy rate, S the Psi1 secrecy rate and
// C the weighted covert rate. S and C are differences of concave logs. Each
// successive convex approximation step replaces the convex parts of S and C
// with tangents, giving concave minorants and convex inner approximations of
// the constraints. The clamp [.]^+ is handled by maximizing over the region
// where the linearized S is nonnegative and, when base alone meets
// R_sec_min, also over the whole range with the S term dropped. Each step is
// solved by scalar search, so no conic solver is needed.
#pragma once

#include "covertrate/log_affine.hpp"
#include "covertrate/model.hpp"
#include "covertrate/rates.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace covert::solver {

using model::LinkSnrs;
using model::PowerPolicy;
using model::QosRequirements;
using model::SlotModel;
using rates::RateBreakdown;
using rates::SicIndicator;

/// Feasibility slack applied to every constraint check.
inline constexpr double kFeasibilityTol = 1e-12;

struct SolverConfig {
    double vartheta = 1e-6;    ///< stop when |rho(k+1) - rho(k)| <= vartheta
    int max_iters = 100;
    double init_rho_cs = 0.5;
    int oracle_grid = 1001;    ///< grid used for the infeasible-start fallback

    void validate() const;
};

enum class SolveMode { Joint, ArtificialNoise, Infeasible };

std::string_view to_string(SolveMode mode);

struct SolveResult {
    PowerPolicy policy;
    RateBreakdown rates;
    SolveMode mode = SolveMode::Infeasible;
    int iterations = 0;
    std::vector<double> objective_trace;

    bool feasible() const { return mode != SolveMode::Infeasible; }
    double objective() const { return rates.average_rate; }
};

/// One-dimensional problem in rho_cs; see the file comment.
struct ScalarProblem {
    double p_r1 = 0.5;
    double base = 0.0;
    bool has_secrecy = true;
    LogAffineSum psi1_secrecy;  ///< S(rho), unweighted
    LogAffineSum covert;        ///< C(rho), already weighted by p_r1
    double r_sec_min = 0.0;
    double r_cov_min = 0.0;

    double secrecy_value(double rho) const;
    double true_objective(double rho) const;
    bool feasible(double rho, double tol = kFeasibilityTol) const;

    /// base + p_r1*[S~(rho)]^+ + C~(rho) expanded at rho_prev; a minorant of
    /// true_objective that touches it at rho_prev.
    double surrogate(double rho, double rho_prev) const;
};

ScalarProblem standard_problem(const LinkSnrs& snrs, const SlotModel& slots,
                               const QosRequirements& qos);
ScalarProblem sic_problem(const LinkSnrs& snrs, const SlotModel& slots,
                          const QosRequirements& qos, SicIndicator a);
ScalarProblem an_problem(const LinkSnrs& snrs, const SlotModel& slots,
                         const QosRequirements& qos);

/// Optimal Psi0 power-allocation factor when gamma_b > gamma_u.
constexpr double fix_rho_s() { return 1.0; }

/// Largest rho_cs meeting the covert-rate constraint,
///   ((1 + gamma_c) 2^(-r_cov_min/p_r1) - 1) / gamma_c  clamped to [0,1],
/// or nullopt when even rho_cs = 0 falls short.
std::optional<double> feasible_rho_cs_upper(double gamma_c, double p_r1,
                                            double r_cov_min);

/// Gamma(rho) = p_r1 log2(1 + rho gamma_c): the concave term subtracted in
/// the covert rate.
double covert_interference(double rho, double gamma_c, double p_r1);
/// dGamma/drho = p_r1/ln2 * gamma_c / (1 + rho gamma_c)
double covert_interference_gradient(double rho, double gamma_c, double p_r1);
/// First-order expansion of Gamma at rho_prev.
double covert_interference_tangent(double rho, double rho_prev, double gamma_c,
                                   double p_r1);

/// Surrogate of the standard average rate at rho (expanded at rho_prev).
double surrogate_objective(double rho, double rho_prev, const LinkSnrs& snrs,
                           const SlotModel& slots);

/// Maximizer of the surrogate over [0,1] intersected with the linearized
/// constraints. A negative linearized Psi1 secrecy term is allowed only when
/// the Psi0 slots meet the secrecy target on their own. nullopt when the set
/// is empty.
std::optional<double> sca_step(const ScalarProblem& problem, double rho_prev);
std::optional<double> sca_step(double rho_prev, const LinkSnrs& snrs,
                               const SlotModel& slots, const QosRequirements& qos);

struct ScaOutcome {
    bool feasible = false;
    double rho_cs = 0.0;
    int iterations = 0;
    std::vector<double> objective_trace;
};

/// Successive convex approximation from cfg.init_rho_cs. An infeasible start
/// is replaced by the feasible grid point (cfg.oracle_grid points) nearest to
/// it; no feasible grid point means the problem is reported infeasible.
ScaOutcome sca_solve(const ScalarProblem& problem, const SolverConfig& cfg);

/// Iterative power allocation. Dispatches to an_solve when gamma_b <= gamma_u.
SolveResult dc_solve(const LinkSnrs& snrs, const SlotModel& slots,
                     const QosRequirements& qos, const SolverConfig& cfg = {});

/// Artificial-noise mode: the covert rate decreases in rho_cs, so rho_cs = 0
/// whenever it is feasible.
SolveResult an_solve(const LinkSnrs& snrs, const SlotModel& slots,
                     const QosRequirements& qos, const SolverConfig& cfg = {});

/// Same pipeline with the SIC rate expressions.
SolveResult sic_solve(const LinkSnrs& snrs, const SlotModel& slots,
                      const QosRequirements& qos, SicIndicator a,
                      const SolverConfig& cfg = {});

struct RateFamily {
    enum class Kind { Standard, Sic, ArtificialNoise };
    Kind kind = Kind::Standard;
    SicIndicator a{};

    static RateFamily standard() { return {Kind::Standard, {}}; }
    static RateFamily sic(SicIndicator a) { return {Kind::Sic, a}; }
    static RateFamily artificial_noise() { return {Kind::ArtificialNoise, {}}; }
};

/// Exhaustive search of the true objective and constraints on a uniform
/// grid of grid_points values over [0,1]. Returns the first best feasible
/// point.
std::optional<double> grid_search(const ScalarProblem& problem, int grid_points);

/// Exhaustive-search baseline. Standard and SIC families dispatch to the
/// artificial-noise problem when gamma_b <= gamma_u, mirroring the solvers.
SolveResult grid_oracle(const LinkSnrs& snrs, const SlotModel& slots,
                        const QosRequirements& qos, int grid_points,
                        RateFamily family);

}  // namespace covert::solver
