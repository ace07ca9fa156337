#include "covertrate/detection.hpp"
#include "covertrate/model.hpp"
#include "covertrate/rates.hpp"
#include "covertrate/robust.hpp"
#include "covertrate/solver.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace covert::robust;
using covert::model::ChannelRealization;
using covert::model::db_to_linear;
using covert::model::link_snrs;
using covert::model::NetworkGeometry;
using covert::model::NoiseProfile;
using covert::model::PowerPolicy;
using covert::model::QosRequirements;
using covert::model::SlotModel;
using covert::solver::SolveMode;

namespace {

const SlotModel kHalf(0.5, 0.5);
const QosRequirements kQos{0.5, 0.1, 0.1};
const NetworkGeometry kGeo{1, 2, 5, 5, 4};
const NoiseProfile kNoise{db_to_linear(-33), db_to_linear(-33), db_to_linear(-30),
                          db_to_linear(-30)};
const double kP = db_to_linear(3.0);
const NetworkGeometry kUnit{1, 1, 1, 1, 4};
const NoiseProfile kOnes{1, 1, 1, 1};

// |h^ + e|^2 for a complex error uniform on the disc |e|^2 <= eps.
double perturbed_gain(double g_hat, double eps, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = std::sqrt(eps * u(rng));
    const double phi = 2.0 * std::numbers::pi * u(rng);
    return std::norm(std::sqrt(g_hat) + std::polar(r, phi));
}

ChannelRealization draw(std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0);
    return {e(rng), e(rng), e(rng), e(rng)};
}

}  // namespace

TEST_SUITE("robust") {

TEST_CASE("bounds at zero budget are the nominal SNRs") {
    const ChannelRealization ch{0.7, 1.3, 0.4, 2.0};
    const auto nominal = link_snrs(kGeo, kNoise, kP, ch);
    for (auto model : {BoundModel::Additive, BoundModel::Gain}) {
        const auto b = worst_case_snr_bounds(ch, kGeo, kNoise, kP, {}, model);
        CHECK(b.gamma_b_lb == nominal.gamma_b);
        CHECK(b.gamma_b_ub == nominal.gamma_b);
        CHECK(b.gamma_c_lb == nominal.gamma_c);
        CHECK(b.gamma_c_ub == nominal.gamma_c);
        CHECK(b.gamma_u_lb == nominal.gamma_u);
        CHECK(b.gamma_u_ub == nominal.gamma_u);
    }
}

TEST_CASE("bound arithmetic") {
    const ChannelRealization ch{1.0, 1.0, 1.0, 1.0};
    const UncertaintyBudget c_only{0.0, 0.0, 0.25, 0.0};
    const auto gain = worst_case_snr_bounds(ch, kUnit, kOnes, 1.0, c_only, BoundModel::Gain);
    CHECK(gain.gamma_c_lb == doctest::Approx(0.75));
    CHECK(gain.gamma_c_ub == doctest::Approx(1.25));
    const auto add = worst_case_snr_bounds(ch, kUnit, kOnes, 1.0, c_only, BoundModel::Additive);
    CHECK(add.gamma_c_lb == doctest::Approx(0.25));
    CHECK(add.gamma_c_ub == doctest::Approx(2.25));
    CHECK(add.gamma_b_lb == 1.0);

    // estimate weaker than the budget: the lower bound clamps at zero
    const ChannelRealization weak{0.1, 1.0, 1.0, 1.0};
    const UncertaintyBudget b_only{0.0, 0.5, 0.0, 0.0};
    for (auto model : {BoundModel::Additive, BoundModel::Gain}) {
        const auto b = worst_case_snr_bounds(weak, kUnit, kOnes, 1.0, b_only, model);
        CHECK(b.gamma_b_lb == 0.0);
    }
    std::mt19937_64 rng(1);
    double smallest = 1.0;
    for (int i = 0; i < 10000; ++i) smallest = std::min(smallest, perturbed_gain(0.1, 0.5, rng));
    CHECK(smallest >= 0.0);
    CHECK(smallest < 0.01);  // the disc contains -h^, so zero is reachable
    CHECK_THROWS(worst_case_snr_bounds(ch, kUnit, kOnes, 1.0, {0, -1, 0, 0}));
    CHECK(parse_bound_model("gain") == BoundModel::Gain);
    CHECK_FALSE(parse_bound_model("box"));
}

TEST_CASE("bound soundness against sampled complex errors") {
    std::mt19937_64 rng(2);
    const UncertaintyBudget budget{0.0, 0.1, 0.2, 0.3};
    for (int d = 0; d < 20; ++d) {
        const auto ch = draw(rng);
        const auto b = worst_case_snr_bounds(ch, kGeo, kNoise, kP, budget);
        for (int k = 0; k < 1000; ++k) {
            const ChannelRealization real{perturbed_gain(ch.g_ab, budget.eps_b, rng),
                                          perturbed_gain(ch.g_ac, budget.eps_c, rng),
                                          perturbed_gain(ch.g_au, budget.eps_u, rng), ch.g_aw};
            const auto s = link_snrs(kGeo, kNoise, kP, real);
            const double tol = 1e-12;
            CHECK(s.gamma_b >= b.gamma_b_lb * (1 - tol));
            CHECK(s.gamma_b <= b.gamma_b_ub * (1 + tol));
            CHECK(s.gamma_c >= b.gamma_c_lb * (1 - tol));
            CHECK(s.gamma_c <= b.gamma_c_ub * (1 + tol));
            CHECK(s.gamma_u >= b.gamma_u_lb * (1 - tol));
            CHECK(s.gamma_u <= b.gamma_u_ub * (1 + tol));
        }
    }
}

TEST_CASE("worst-case rate") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const auto ch = draw(rng);
        const PowerPolicy pol{1.0, u(rng), kP};
        const auto b = worst_case_snr_bounds(ch, kGeo, kNoise, kP, {});
        const auto lb = robust_average_rate_lb(pol, kHalf, b);
        const auto nom = covert::rates::average_rate(pol, kHalf, link_snrs(kGeo, kNoise, kP, ch));
        CHECK(lb.average_rate == nom.average_rate);
        CHECK(lb.covert_rate == nom.covert_rate);
    }
    const auto b = worst_case_snr_bounds({1, 1, 0.2, 1}, kGeo, kNoise, kP, {0, 0.1, 0.3, 0.1});
    CHECK(robust_average_rate_lb(PowerPolicy{1, 1, kP}, kHalf, b).covert_rate == 0.0);
}

TEST_CASE("realized rate never falls below the worst case") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const UncertaintyBudget budget{0.0, 0.1, 0.1, 0.1};
    for (int d = 0; d < 20; ++d) {
        const auto ch = draw(rng);
        const PowerPolicy pol{1.0, u(rng), kP};
        const double lb =
            robust_average_rate_lb(pol, kHalf, worst_case_snr_bounds(ch, kGeo, kNoise, kP, budget))
                .average_rate;
        for (int k = 0; k < 1000; ++k) {
            const ChannelRealization real{perturbed_gain(ch.g_ab, budget.eps_b, rng),
                                          perturbed_gain(ch.g_ac, budget.eps_c, rng),
                                          perturbed_gain(ch.g_au, budget.eps_u, rng), ch.g_aw};
            const double got =
                covert::rates::average_rate(pol, kHalf, link_snrs(kGeo, kNoise, kP, real))
                    .average_rate;
            CHECK(got >= lb - 1e-12);
        }
    }
}

TEST_CASE("worst-case rate is nonincreasing in each budget") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int d = 0; d < 100; ++d) {
        const auto ch = draw(rng);
        const PowerPolicy pol{1.0, u(rng), kP};
        for (int link = 0; link < 3; ++link) {
            double prev = 1e300;
            for (double eps = 0.0; eps <= 1.0; eps += 0.05) {
                UncertaintyBudget budget;
                (link == 0 ? budget.eps_b : link == 1 ? budget.eps_c : budget.eps_u) = eps;
                const double r = robust_average_rate_lb(
                    pol, kHalf, worst_case_snr_bounds(ch, kGeo, kNoise, kP, budget)).average_rate;
                CHECK(r <= prev + 1e-12);
                prev = r;
            }
        }
    }
}

TEST_CASE("zero budget reproduces the nominal solver bit for bit") {
    std::mt19937_64 rng(6);
    int joint = 0;
    for (int d = 0; d < 300; ++d) {
        const auto ch = draw(rng);
        const auto a = robust_solve(ch, kGeo, kNoise, kP, kHalf, kQos, {});
        const auto b = covert::solver::dc_solve(link_snrs(kGeo, kNoise, kP, ch), kHalf, kQos);
        CHECK(a.mode == b.mode);
        CHECK(a.policy.rho_s == b.policy.rho_s);
        CHECK(a.policy.rho_cs == b.policy.rho_cs);
        CHECK(a.rates.average_rate == b.rates.average_rate);
        CHECK(a.rates.sec_rate_psi0 == b.rates.sec_rate_psi0);
        CHECK(a.rates.sec_rate_psi1 == b.rates.sec_rate_psi1);
        CHECK(a.rates.covert_rate == b.rates.covert_rate);
        CHECK(a.iterations == b.iterations);
        CHECK(a.objective_trace == b.objective_trace);
        if (a.mode == SolveMode::Joint) ++joint;
    }
    CHECK(joint > 100);
}

TEST_CASE("robust solve returns feasible worst-case policies") {
    std::mt19937_64 rng(7);
    const UncertaintyBudget budget{0.0, 0.1, 0.1, 0.1};
    for (int d = 0; d < 200; ++d) {
        const auto ch = draw(rng);
        const auto bounds = worst_case_snr_bounds(ch, kGeo, kNoise, kP, budget);
        const auto r = robust_solve(bounds, kHalf, kQos);
        const auto o = robust_grid_oracle(bounds, kHalf, kQos, 10001);
        if (o.feasible()) {
            REQUIRE(r.feasible());
            CHECK(r.rates.average_rate >= 0.9 * o.rates.average_rate);
        }
        if (r.mode == SolveMode::Joint) {
            const auto lb = robust_average_rate_lb(r.policy, kHalf, bounds);
            CHECK(lb.secrecy_constraint_value(kHalf) >= kQos.r_sec_min - 1e-9);
            CHECK(lb.covert_rate >= kQos.r_cov_min - 1e-9);
        }
    }
}

TEST_CASE("a budget larger than Carol's estimate kills the covert rate") {
    const ChannelRealization ch{1.0, 0.05, 0.1, 1.0};
    const auto r = robust_solve(ch, kGeo, kNoise, kP, kHalf, kQos, {0, 0, 0.2, 0});
    CHECK(r.mode == SolveMode::Infeasible);
    const auto ok = robust_solve(ch, kGeo, kNoise, kP, kHalf, {0.5, 0.0, 0.1}, {0, 0, 0.2, 0});
    CHECK(ok.feasible());
}

TEST_CASE("warden location error") {
    for (double eps_d : {0.0, 0.5, 2.0, 4.9, 10.0}) {
        CHECK(robust_covertness(PowerPolicy{1.0, 0.3, kP}, 5.0, eps_d, 4.0, 1e-3, 0.0));
    }
    // psi0 = 0.5, psi1 = 1, sigma2 = 1 reproduces the 0.75 detection example
    const PowerPolicy half{0.5, 0.3, 1.0};
    CHECK(worst_case_min_error_sum(half, 1.0, 0.0, 4.0, 1.0) == doctest::Approx(0.75));
    CHECK_FALSE(robust_covertness(half, 1.0, 0.0, 4.0, 1.0, 0.1));

    // interior distances never do worse than the extremes
    const double worst = worst_case_min_error_sum(half, 5.0, 1.0, 4.0, 1e-3);
    for (double e = -1.0; e <= 1.0; e += 0.01) {
        const auto psi = covert::detection::psi_params(half, 5.0 + e, 4.0);
        CHECK(covert::detection::min_error_sum(1e-3, psi).min_error_sum >= worst - 1e-12);
    }
}

TEST_CASE("equal hypotheses give error sum one at every threshold and distance") {
    const PowerPolicy pol{1.0, 0.4, kP};
    for (double e = -2.0; e <= 2.0; e += 0.25) {
        const auto psi = covert::detection::psi_params(pol, 5.0 + e, 4.0);
        for (double theta = 0.0; theta <= 0.01; theta += 5e-4) {
            CHECK(std::abs(covert::detection::error_sum(theta, 1e-3, psi) - 1.0) <= 1e-12);
        }
    }
}

}
