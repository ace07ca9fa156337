#include "covertrate/solver.hpp"

#include "covertrate/scalar_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace covert::solver {

namespace {

using rates::log2_1p;
using rates::positive_part;

SolveResult infeasible_result(double total_power) {
    SolveResult r;
    r.policy = PowerPolicy{1.0, 1.0, total_power};
    r.mode = SolveMode::Infeasible;
    return r;
}

// Secrecy level that p_r1 * S~ must reach, folded with eta >= 0.
std::optional<double> psi1_secrecy_level(const ScalarProblem& p) {
    if (p.p_r1 > 0.0) return std::max(0.0, (p.r_sec_min - p.base) / p.p_r1);
    if (p.base >= p.r_sec_min - kFeasibilityTol) return 0.0;
    return std::nullopt;
}

std::optional<Interval> superlevel(const LogAffineSum& f, Interval range, double level) {
    if (f.is_affine()) {
        return affine_superlevel_interval(f.constant(), f.linear(), range.lo, range.hi,
                                          level);
    }
    return superlevel_interval([&f](double x) { return f.value(x); }, range.lo,
                               range.hi, level);
}

// Largest rho with covert(rho) >= r_cov_min; the covert term is nonincreasing
// in rho for every rate family.
std::optional<double> covert_upper(const ScalarProblem& p) {
    // bisect on the exact level so the point stays inside the step's slack
    double level = p.r_cov_min;
    if (!(p.covert.value(0.0) >= level)) level -= kFeasibilityTol;
    if (!(p.covert.value(0.0) >= level)) return std::nullopt;
    if (p.covert.value(1.0) >= level) return 1.0;
    double good = 0.0;
    double bad = 1.0;
    for (int k = 0; k < 200 && bad - good > 1e-16; ++k) {
        const double mid = 0.5 * (good + bad);
        if (p.covert.value(mid) >= level) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    return good;
}

std::optional<double> feasible_start(const ScalarProblem& p, const SolverConfig& cfg) {
    if (p.feasible(cfg.init_rho_cs)) return cfg.init_rho_cs;
    std::optional<double> best;
    double best_dist = 0.0;
    auto consider = [&](double rho) {
        if (!p.feasible(rho)) return;
        const double dist = std::abs(rho - cfg.init_rho_cs);
        if (!best || dist < best_dist) {
            best = rho;
            best_dist = dist;
        }
    };
    const int n = cfg.oracle_grid;
    for (int i = 0; i < n; ++i) consider(static_cast<double>(i) / (n - 1));
    // The secrecy side is nondecreasing in rho for the nominal families, so
    // the covert boundary is the last place a narrow feasible set can hide.
    if (auto hi = covert_upper(p)) consider(*hi);
    return best;
}

}  // namespace

void SolverConfig::validate() const {
    if (!(vartheta > 0.0)) throw std::invalid_argument("vartheta must be > 0");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (!(init_rho_cs >= 0.0 && init_rho_cs <= 1.0)) {
        throw std::invalid_argument("init_rho_cs must lie in [0,1]");
    }
    if (oracle_grid < 2) throw std::invalid_argument("oracle_grid must be >= 2");
}

std::string_view to_string(SolveMode mode) {
    switch (mode) {
        case SolveMode::Joint: return "joint";
        case SolveMode::ArtificialNoise: return "an";
        case SolveMode::Infeasible: return "infeasible";
    }
    return "unknown";
}

double ScalarProblem::secrecy_value(double rho) const {
    if (!has_secrecy) return 0.0;
    return base + p_r1 * positive_part(psi1_secrecy.value(rho));
}

double ScalarProblem::true_objective(double rho) const {
    return secrecy_value(rho) + covert.value(rho);
}

bool ScalarProblem::feasible(double rho, double tol) const {
    if (!(rho >= 0.0 && rho <= 1.0)) return false;
    if (has_secrecy && !(secrecy_value(rho) >= r_sec_min - tol)) return false;
    return covert.value(rho) >= r_cov_min - tol;
}

double ScalarProblem::surrogate(double rho, double rho_prev) const {
    double v = covert.minorant(rho_prev).value(rho);
    if (has_secrecy) {
        v += base + p_r1 * std::max(psi1_secrecy.minorant(rho_prev).value(rho), 0.0);
    }
    return v;
}

ScalarProblem standard_problem(const LinkSnrs& snrs, const SlotModel& slots,
                               const QosRequirements& qos) {
    ScalarProblem p;
    p.p_r1 = slots.p_r1();
    p.base = slots.p_r0() *
             positive_part(log2_1p(snrs.gamma_b) - log2_1p(snrs.gamma_u));
    // log2(1 + rho g/(1 + (1-rho) g)) = log2(1+g) - log2(1 + (1-rho) g)
    p.psi1_secrecy.add_constant(log2_1p(snrs.gamma_b) - log2_1p(snrs.gamma_u))
        .add_log(-1.0, 1.0 + snrs.gamma_b, -snrs.gamma_b)
        .add_log(1.0, 1.0 + snrs.gamma_u, -snrs.gamma_u);
    p.covert.add_constant(p.p_r1 * log2_1p(snrs.gamma_c))
        .add_log(-p.p_r1, 1.0, snrs.gamma_c);
    p.r_sec_min = qos.r_sec_min;
    p.r_cov_min = qos.r_cov_min;
    return p;
}

ScalarProblem sic_problem(const LinkSnrs& snrs, const SlotModel& slots,
                          const QosRequirements& qos, SicIndicator a) {
    ScalarProblem p = standard_problem(snrs, slots, qos);
    p.psi1_secrecy = LogAffineSum(-log2_1p(snrs.gamma_u));
    p.psi1_secrecy.add_log(1.0, 1.0 + snrs.gamma_u, -snrs.gamma_u);
    p.covert = LogAffineSum();
    if (a.a == 1) {
        // Bob still sees Carol's stream; Carol cancels Bob's.
        p.psi1_secrecy.add_constant(log2_1p(snrs.gamma_b))
            .add_log(-1.0, 1.0 + snrs.gamma_b, -snrs.gamma_b);
        p.covert.add_log(p.p_r1, 1.0 + snrs.gamma_c, -snrs.gamma_c);
    } else {
        p.psi1_secrecy.add_log(1.0, 1.0, snrs.gamma_b);
        p.covert.add_constant(p.p_r1 * log2_1p(snrs.gamma_c))
            .add_log(-p.p_r1, 1.0, snrs.gamma_c);
    }
    return p;
}

ScalarProblem an_problem(const LinkSnrs& snrs, const SlotModel& slots,
                         const QosRequirements& qos) {
    ScalarProblem p = standard_problem(snrs, slots, qos);
    p.has_secrecy = false;
    p.base = 0.0;
    p.psi1_secrecy = LogAffineSum();
    p.r_sec_min = 0.0;
    return p;
}

std::optional<double> feasible_rho_cs_upper(double gamma_c, double p_r1,
                                            double r_cov_min) {
    if (!(gamma_c > 0.0) || !(p_r1 > 0.0)) {
        throw std::invalid_argument("feasible_rho_cs_upper needs gamma_c > 0 and p_r1 > 0");
    }
    if (p_r1 * log2_1p(gamma_c) < r_cov_min) return std::nullopt;
    const double rho = ((1.0 + gamma_c) * std::exp2(-r_cov_min / p_r1) - 1.0) / gamma_c;
    return std::clamp(rho, 0.0, 1.0);
}

double covert_interference(double rho, double gamma_c, double p_r1) {
    return p_r1 * log2_1p(rho * gamma_c);
}

double covert_interference_gradient(double rho, double gamma_c, double p_r1) {
    return p_r1 / std::numbers::ln2 * gamma_c / (1.0 + rho * gamma_c);
}

double covert_interference_tangent(double rho, double rho_prev, double gamma_c,
                                   double p_r1) {
    return covert_interference(rho_prev, gamma_c, p_r1) +
           covert_interference_gradient(rho_prev, gamma_c, p_r1) * (rho - rho_prev);
}

double surrogate_objective(double rho, double rho_prev, const LinkSnrs& snrs,
                           const SlotModel& slots) {
    return standard_problem(snrs, slots, QosRequirements{0.0, 0.0, 0.0})
        .surrogate(rho, rho_prev);
}

std::optional<double> sca_step(const ScalarProblem& problem, double rho_prev) {
    // half the feasibility slack, so rounding between minorant and true rate
    // cannot push an accepted step past the final feasibility check
    const double slack = 0.5 * kFeasibilityTol;
    const LogAffineSum covert = problem.covert.minorant(rho_prev);
    const auto covert_range = superlevel(covert, Interval{0.0, 1.0}, problem.r_cov_min - slack);
    if (!covert_range) return std::nullopt;
    auto covert_only = [&](double x) { return covert.value(x); };
    if (!problem.has_secrecy) {
        const double next = golden_section_max(covert_only, covert_range->lo, covert_range->hi);
        if (covert_only(rho_prev) > covert_only(next) && rho_prev >= covert_range->lo &&
            rho_prev <= covert_range->hi) {
            return rho_prev;
        }
        return next;
    }

    const auto level = psi1_secrecy_level(problem);
    if (!level) return std::nullopt;
    const LogAffineSum secrecy = problem.psi1_secrecy.minorant(rho_prev);
    auto f = [&](double x) {
        return covert.value(x) + problem.base +
               problem.p_r1 * std::max(secrecy.value(x), 0.0);
    };

    std::optional<double> next;
    const auto joint = superlevel(secrecy, *covert_range, *level - slack);
    if (joint) {
        next = golden_section_max(
            [&](double x) {
                return covert.value(x) + problem.base + problem.p_r1 * secrecy.value(x);
            },
            joint->lo, joint->hi);
    }
    // When the Psi0 slots alone meet the secrecy target, a clamped Psi1 term
    // is allowed; covert + base is then a second minorant over the whole range.
    if (*level == 0.0) {
        const double alt = golden_section_max(covert_only, covert_range->lo, covert_range->hi);
        if (!next || f(alt) > f(*next)) next = alt;
    }
    if (!next) return std::nullopt;

    // never step to a worse surrogate value than the expansion point
    const bool prev_allowed = rho_prev >= covert_range->lo && rho_prev <= covert_range->hi &&
                              (*level == 0.0 || secrecy.value(rho_prev) >= *level - slack);
    if (prev_allowed && f(rho_prev) > f(*next)) return rho_prev;
    return next;
}

std::optional<double> sca_step(double rho_prev, const LinkSnrs& snrs,
                               const SlotModel& slots, const QosRequirements& qos) {
    return sca_step(standard_problem(snrs, slots, qos), rho_prev);
}

ScaOutcome sca_solve(const ScalarProblem& problem, const SolverConfig& cfg) {
    ScaOutcome out;
    const auto start = feasible_start(problem, cfg);
    if (!start) return out;
    double rho = *start;
    out.objective_trace.push_back(problem.true_objective(rho));
    for (int k = 0; k < cfg.max_iters; ++k) {
        const auto next = sca_step(problem, rho);
        if (!next) break;
        ++out.iterations;
        const double step = std::abs(*next - rho);
        rho = *next;
        out.objective_trace.push_back(problem.true_objective(rho));
        if (step <= cfg.vartheta) break;
    }
    out.feasible = problem.feasible(rho);
    out.rho_cs = rho;
    return out;
}

SolveResult an_solve(const LinkSnrs& snrs, const SlotModel& slots,
                     const QosRequirements& qos, const SolverConfig&) {
    const double best = rates::covert_rate(PowerPolicy{1.0, 0.0, snrs.total_power},
                                           snrs.gamma_c, slots.p_r1());
    if (!(best >= qos.r_cov_min - kFeasibilityTol)) {
        return infeasible_result(snrs.total_power);
    }
    SolveResult r;
    r.policy = PowerPolicy{fix_rho_s(), 0.0, snrs.total_power};
    r.rates.covert_rate = best;
    r.rates.average_rate = rates::average_rate_an(r.policy, slots, snrs.gamma_c);
    r.mode = SolveMode::ArtificialNoise;
    r.objective_trace.push_back(r.rates.average_rate);
    return r;
}

SolveResult dc_solve(const LinkSnrs& snrs, const SlotModel& slots,
                     const QosRequirements& qos, const SolverConfig& cfg) {
    if (snrs.gamma_b <= snrs.gamma_u) return an_solve(snrs, slots, qos, cfg);
    const auto sca = sca_solve(standard_problem(snrs, slots, qos), cfg);
    if (!sca.feasible) return infeasible_result(snrs.total_power);
    SolveResult r;
    r.policy = PowerPolicy{fix_rho_s(), sca.rho_cs, snrs.total_power};
    r.rates = rates::average_rate(r.policy, slots, snrs);
    r.mode = SolveMode::Joint;
    r.iterations = sca.iterations;
    r.objective_trace = sca.objective_trace;
    return r;
}

SolveResult sic_solve(const LinkSnrs& snrs, const SlotModel& slots,
                      const QosRequirements& qos, SicIndicator a,
                      const SolverConfig& cfg) {
    if (snrs.gamma_b <= snrs.gamma_u) return an_solve(snrs, slots, qos, cfg);
    const auto sca = sca_solve(sic_problem(snrs, slots, qos, a), cfg);
    if (!sca.feasible) return infeasible_result(snrs.total_power);
    SolveResult r;
    r.policy = PowerPolicy{fix_rho_s(), sca.rho_cs, snrs.total_power};
    r.rates = rates::average_rate_sic(r.policy, slots, snrs, a);
    r.mode = SolveMode::Joint;
    r.iterations = sca.iterations;
    r.objective_trace = sca.objective_trace;
    return r;
}

std::optional<double> grid_search(const ScalarProblem& problem, int grid_points) {
    if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");
    std::optional<double> best;
    double best_value = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double rho = static_cast<double>(i) / (grid_points - 1);
        if (!problem.feasible(rho)) continue;
        const double v = problem.true_objective(rho);
        if (!best || v > best_value) {
            best = rho;
            best_value = v;
        }
    }
    return best;
}

SolveResult grid_oracle(const LinkSnrs& snrs, const SlotModel& slots,
                        const QosRequirements& qos, int grid_points,
                        RateFamily family) {
    using Kind = RateFamily::Kind;
    Kind kind = family.kind;
    if (kind != Kind::ArtificialNoise && snrs.gamma_b <= snrs.gamma_u) {
        kind = Kind::ArtificialNoise;
    }
    const ScalarProblem problem =
        kind == Kind::Standard ? standard_problem(snrs, slots, qos)
        : kind == Kind::Sic    ? sic_problem(snrs, slots, qos, family.a)
                               : an_problem(snrs, slots, qos);
    const auto rho = grid_search(problem, grid_points);
    if (!rho) return infeasible_result(snrs.total_power);

    SolveResult r;
    r.policy = PowerPolicy{fix_rho_s(), *rho, snrs.total_power};
    switch (kind) {
        case Kind::Standard:
            r.rates = rates::average_rate(r.policy, slots, snrs);
            r.mode = SolveMode::Joint;
            break;
        case Kind::Sic:
            r.rates = rates::average_rate_sic(r.policy, slots, snrs, family.a);
            r.mode = SolveMode::Joint;
            break;
        case Kind::ArtificialNoise:
            r.rates.covert_rate =
                rates::covert_rate(r.policy, snrs.gamma_c, slots.p_r1());
            r.rates.average_rate = r.rates.covert_rate;
            r.mode = SolveMode::ArtificialNoise;
            break;
    }
    r.objective_trace.push_back(r.rates.average_rate);
    return r;
}

}  // namespace covert::solver
