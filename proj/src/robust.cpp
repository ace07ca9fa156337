#include "covertrate/robust.hpp"

#include "covertrate/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covert::robust {

namespace {

using rates::log2_1p;
using rates::positive_part;
using solver::LogAffineSum;
using solver::ScalarProblem;
using solver::SolveMode;

SolveResult infeasible_result(double total_power) {
    SolveResult r;
    r.policy = PowerPolicy{1.0, 1.0, total_power};
    r.mode = SolveMode::Infeasible;
    return r;
}

bool joint_mode(const SnrBounds& b) { return b.gamma_b_lb > b.gamma_u_ub; }

SolveResult an_result(const SnrBounds& b, const SlotModel& slots,
                      const QosRequirements& qos) {
    // rho_cs = 0 leaves Carol interference-free, so only her lower bound matters
    const double best = slots.p_r1() * log2_1p(b.gamma_c_lb);
    if (!(best >= qos.r_cov_min - solver::kFeasibilityTol)) {
        return infeasible_result(b.total_power);
    }
    SolveResult r;
    r.policy = PowerPolicy{solver::fix_rho_s(), 0.0, b.total_power};
    r.rates.covert_rate = best;
    r.rates.average_rate = best;
    r.mode = SolveMode::ArtificialNoise;
    r.objective_trace.push_back(best);
    return r;
}

SolveResult joint_result(double rho_cs, const SnrBounds& b, const SlotModel& slots) {
    SolveResult r;
    r.policy = PowerPolicy{solver::fix_rho_s(), rho_cs, b.total_power};
    r.rates = robust_average_rate_lb(r.policy, slots, b);
    r.mode = SolveMode::Joint;
    return r;
}

}  // namespace

void UncertaintyBudget::validate() const {
    if (!(eps_d >= 0.0 && eps_b >= 0.0 && eps_c >= 0.0 && eps_u >= 0.0)) {
        throw std::invalid_argument("uncertainty budgets must be >= 0");
    }
}

std::string_view to_string(BoundModel m) {
    return m == BoundModel::Additive ? "additive" : "gain";
}

std::optional<BoundModel> parse_bound_model(std::string_view s) {
    if (s == "additive") return BoundModel::Additive;
    if (s == "gain") return BoundModel::Gain;
    return std::nullopt;
}

GainInterval gain_bounds(double g_hat, double eps, BoundModel model) {
    if (model == BoundModel::Gain) return {std::max(g_hat - eps, 0.0), g_hat + eps};
    // (|h| -+ sqrt(eps))^2 expanded, so eps = 0 returns g_hat unchanged
    const double cross = 2.0 * std::sqrt(g_hat * eps);
    const double lo = g_hat > eps ? std::max(g_hat - cross + eps, 0.0) : 0.0;
    return {lo, g_hat + cross + eps};
}

SnrBounds worst_case_snr_bounds(const ChannelRealization& est,
                                const NetworkGeometry& geo, const NoiseProfile& noise,
                                double P, const UncertaintyBudget& budget,
                                BoundModel model) {
    budget.validate();
    if (!(P > 0.0)) throw std::invalid_argument("total power must be > 0");
    auto snr = [&](double g, double d, double s2) {
        return model::link_snr(P, g, d, geo.alpha, s2);
    };
    const auto b = gain_bounds(est.g_ab, budget.eps_b, model);
    const auto c = gain_bounds(est.g_ac, budget.eps_c, model);
    const auto u = gain_bounds(est.g_au, budget.eps_u, model);
    SnrBounds out;
    out.gamma_b_lb = snr(b.lo, geo.d_ab, noise.sigma2_b);
    out.gamma_b_ub = snr(b.hi, geo.d_ab, noise.sigma2_b);
    out.gamma_c_lb = snr(c.lo, geo.d_ac, noise.sigma2_c);
    out.gamma_c_ub = snr(c.hi, geo.d_ac, noise.sigma2_c);
    out.gamma_u_lb = snr(u.lo, geo.d_au, noise.sigma2_u);
    out.gamma_u_ub = snr(u.hi, geo.d_au, noise.sigma2_u);
    out.total_power = P;
    return out;
}

RateBreakdown robust_average_rate_lb(const PowerPolicy& pol, const SlotModel& slots,
                                     const SnrBounds& b) {
    const double rs = pol.rho_s;
    const double rc = pol.rho_cs;
    const double bob1 = rc * b.gamma_b_lb / (1.0 + (1.0 - rc) * b.gamma_b_ub);
    const double unt1 = rc * b.gamma_u_ub / (1.0 + (1.0 - rc) * b.gamma_u_lb);
    const double carol = (1.0 - rc) * b.gamma_c_lb / (1.0 + rc * b.gamma_c_ub);
    RateBreakdown r;
    r.sec_rate_psi0 =
        positive_part(log2_1p(rs * b.gamma_b_lb) - log2_1p(rs * b.gamma_u_ub));
    r.sec_rate_psi1 = positive_part(log2_1p(bob1) - log2_1p(unt1));
    r.covert_rate = slots.p_r1() * log2_1p(carol);
    r.average_rate = slots.p_r0() * r.sec_rate_psi0 +
                     slots.p_r1() * r.sec_rate_psi1 + r.covert_rate;
    return r;
}

ScalarProblem robust_problem(const SnrBounds& b, const SlotModel& slots,
                             const QosRequirements& qos) {
    ScalarProblem p;
    p.p_r1 = slots.p_r1();
    p.base = slots.p_r0() * positive_part(log2_1p(b.gamma_b_lb) - log2_1p(b.gamma_u_ub));

    // Bob: 1 + rho*bl/(1 + (1-rho)*bu) = ((1+bu) + (bl-bu) rho) / ((1+bu) - bu rho)
    if (b.gamma_b_lb == b.gamma_b_ub) {
        p.psi1_secrecy.add_constant(log2_1p(b.gamma_b_lb));
    } else {
        p.psi1_secrecy.add_log(1.0, 1.0 + b.gamma_b_ub, b.gamma_b_lb - b.gamma_b_ub);
    }
    // untrusted: ((1+ul) + (uu-ul) rho) / ((1+ul) - ul rho)
    if (b.gamma_u_lb == b.gamma_u_ub) {
        p.psi1_secrecy.add_constant(-log2_1p(b.gamma_u_ub));
    } else {
        p.psi1_secrecy.add_log(-1.0, 1.0 + b.gamma_u_lb, b.gamma_u_ub - b.gamma_u_lb);
    }
    p.psi1_secrecy.add_log(-1.0, 1.0 + b.gamma_b_ub, -b.gamma_b_ub)
        .add_log(1.0, 1.0 + b.gamma_u_lb, -b.gamma_u_lb);

    // Carol: ((1+cl) + (cu-cl) rho) / (1 + cu rho)
    if (b.gamma_c_lb == b.gamma_c_ub) {
        p.covert.add_constant(p.p_r1 * log2_1p(b.gamma_c_lb));
    } else {
        p.covert.add_log(p.p_r1, 1.0 + b.gamma_c_lb, b.gamma_c_ub - b.gamma_c_lb);
    }
    p.covert.add_log(-p.p_r1, 1.0, b.gamma_c_ub);

    p.r_sec_min = qos.r_sec_min;
    p.r_cov_min = qos.r_cov_min;
    return p;
}

SolveResult robust_solve(const SnrBounds& b, const SlotModel& slots,
                         const QosRequirements& qos, const SolverConfig& cfg) {
    if (!joint_mode(b)) return an_result(b, slots, qos);
    const auto sca = solver::sca_solve(robust_problem(b, slots, qos), cfg);
    if (!sca.feasible) return infeasible_result(b.total_power);
    SolveResult r = joint_result(sca.rho_cs, b, slots);
    r.iterations = sca.iterations;
    r.objective_trace = sca.objective_trace;
    return r;
}

SolveResult robust_solve(const ChannelRealization& estimates, const NetworkGeometry& geo,
                         const NoiseProfile& noise, double total_power,
                         const SlotModel& slots, const QosRequirements& qos,
                         const UncertaintyBudget& budget, const SolverConfig& cfg,
                         BoundModel model) {
    return robust_solve(
        worst_case_snr_bounds(estimates, geo, noise, total_power, budget, model), slots,
        qos, cfg);
}

SolveResult robust_grid_oracle(const SnrBounds& b, const SlotModel& slots,
                               const QosRequirements& qos, int grid_points) {
    if (!joint_mode(b)) return an_result(b, slots, qos);
    const auto rho = solver::grid_search(robust_problem(b, slots, qos), grid_points);
    if (!rho) return infeasible_result(b.total_power);
    SolveResult r = joint_result(*rho, b, slots);
    r.objective_trace.push_back(r.rates.average_rate);
    return r;
}

double worst_case_min_error_sum(const PowerPolicy& pol, double d_aw_hat, double eps_d,
                                double alpha, double sigma2_w) {
    if (!(d_aw_hat > 0.0) || !(eps_d >= 0.0)) {
        throw std::invalid_argument("warden distance must be > 0 and eps_d >= 0");
    }
    // a warden closer than the estimate allows is kept at a positive distance
    const double d_near = std::max(d_aw_hat - eps_d, d_aw_hat * 1e-6);
    const double d_far = d_aw_hat + eps_d;
    double worst = 1.0;
    for (double d : {d_near, d_far}) {
        const auto psi = detection::psi_params(pol, d, alpha);
        worst = std::min(worst, detection::min_error_sum(sigma2_w, psi).min_error_sum);
    }
    return worst;
}

bool robust_covertness(const PowerPolicy& pol, double d_aw_hat, double eps_d,
                       double alpha, double sigma2_w, double epsilon) {
    return worst_case_min_error_sum(pol, d_aw_hat, eps_d, alpha, sigma2_w) >=
           1.0 - epsilon;
}

}  // namespace covert::robust
