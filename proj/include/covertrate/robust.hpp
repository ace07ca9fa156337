// Robust variants: bounded warden-location error and bounded channel
// estimation error. The worst-case rate is obtained by substituting lower
// and upper SNR bounds into every term, so the robust problem keeps the
// one-dimensional log-affine structure and runs through the same solver.
#pragma once

#include "covertrate/model.hpp"
#include "covertrate/rates.hpp"
#include "covertrate/solver.hpp"

#include <optional>
#include <string_view>

namespace covert::robust {

using model::ChannelRealization;
using model::NetworkGeometry;
using model::NoiseProfile;
using model::PowerPolicy;
using model::QosRequirements;
using model::SlotModel;
using rates::RateBreakdown;
using solver::SolveResult;
using solver::SolverConfig;

/// eps_d bounds the warden distance error in meters; eps_b, eps_c, eps_u
/// bound |e_h|^2 of the channel estimation error on each link.
struct UncertaintyBudget {
    double eps_d = 0.0;
    double eps_b = 0.0;
    double eps_c = 0.0;
    double eps_u = 0.0;

    void validate() const;
};

/// How a budget eps turns an estimate g = |h^|^2 into bounds on |h^ + e|^2.
///  - Additive: e is a complex error with |e|^2 <= eps, so the true gain lies
///    in [(|h^| - sqrt(eps))^2, (|h^| + sqrt(eps))^2] (lower end clamped at 0
///    when |h^|^2 < eps).
///  - Gain: eps bounds the error on |h|^2 itself, [max(g - eps, 0), g + eps].
enum class BoundModel { Additive, Gain };

std::string_view to_string(BoundModel m);
std::optional<BoundModel> parse_bound_model(std::string_view s);

/// Lower/upper gain bound for one link.
struct GainInterval {
    double lo = 0.0;
    double hi = 0.0;
};

GainInterval gain_bounds(double g_hat, double eps, BoundModel model);

struct SnrBounds {
    double gamma_b_lb = 0.0, gamma_b_ub = 0.0;
    double gamma_c_lb = 0.0, gamma_c_ub = 0.0;
    double gamma_u_lb = 0.0, gamma_u_ub = 0.0;
    double total_power = 1.0;
};

/// Per-link SNR bounds P*gain/(d^alpha sigma^2) from the channel estimates.
/// The warden link has no estimate and is not bounded.
SnrBounds worst_case_snr_bounds(const ChannelRealization& estimates,
                                const NetworkGeometry& geo, const NoiseProfile& noise,
                                double total_power, const UncertaintyBudget& budget,
                                BoundModel model = BoundModel::Additive);

/// Worst-case rate terms: Bob and Carol see their lower-bound SNR in the
/// numerator and the upper bound in their interference, the untrusted user
/// the opposite. Zero budgets reproduce rates::average_rate exactly.
RateBreakdown robust_average_rate_lb(const PowerPolicy& pol, const SlotModel& slots,
                                     const SnrBounds& bounds);

/// The worst-case rate as a scalar problem in rho_cs (rho_s = 1). With equal
/// bounds it is built exactly like solver::standard_problem.
solver::ScalarProblem robust_problem(const SnrBounds& bounds, const SlotModel& slots,
                                     const QosRequirements& qos);

/// Joint mode when gamma_b_lb > gamma_u_ub, otherwise artificial noise with
/// the covert term at its Carol bounds.
SolveResult robust_solve(const SnrBounds& bounds, const SlotModel& slots,
                         const QosRequirements& qos, const SolverConfig& cfg = {});

SolveResult robust_solve(const ChannelRealization& estimates, const NetworkGeometry& geo,
                         const NoiseProfile& noise, double total_power,
                         const SlotModel& slots, const QosRequirements& qos,
                         const UncertaintyBudget& budget, const SolverConfig& cfg = {},
                         BoundModel model = BoundModel::Additive);

/// Grid search on the worst-case objective and constraints.
SolveResult robust_grid_oracle(const SnrBounds& bounds, const SlotModel& slots,
                               const QosRequirements& qos, int grid_points);

/// Worst-case detection error over warden distances d_aw_hat +- eps_d. With
/// rho_s = 1 the hypotheses coincide at every distance and the sum is 1.
/// The minimized error sum depends on psi1/psi0 = 1/rho_s only, but both
/// distance extremes are still evaluated.
double worst_case_min_error_sum(const PowerPolicy& pol, double d_aw_hat, double eps_d,
                                double alpha, double sigma2_w);

bool robust_covertness(const PowerPolicy& pol, double d_aw_hat, double eps_d,
                       double alpha, double sigma2_w, double epsilon);

}  // namespace covert::robust
