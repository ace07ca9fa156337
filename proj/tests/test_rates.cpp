#include "covertrate/model.hpp"
#include "covertrate/rates.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace covert::rates;
using covert::model::ChannelRealization;
using covert::model::LinkSnrs;
using covert::model::NetworkGeometry;
using covert::model::PowerPolicy;
using covert::model::SlotModel;

namespace {

double lg(double x) { return std::log2(x); }

const SlotModel kHalf(0.5, 0.5);

PowerPolicy rho_cs(double r) { return PowerPolicy{1.0, r, 1.0}; }

}  // namespace

TEST_SUITE("rates") {

TEST_CASE("per-slot SINRs") {
    CHECK(sinr_bob(SlotKind::Psi0, rho_cs(0.3), 3.0) == 3.0);
    CHECK(sinr_bob(SlotKind::Psi1, rho_cs(1.0), 3.0) == 3.0);
    CHECK(sinr_bob(SlotKind::Psi1, rho_cs(0.5), 3.0) == doctest::Approx(0.6));
    CHECK(sinr_untrusted(SlotKind::Psi0, rho_cs(0.3), 1.0) == 1.0);
    CHECK(sinr_untrusted(SlotKind::Psi1, rho_cs(0.0), 7.0) == 0.0);
    CHECK(sinr_untrusted(SlotKind::Psi1, rho_cs(0.5), 1.0) == doctest::Approx(1.0 / 3.0));
    CHECK(sinr_carol(SlotKind::Psi0, rho_cs(0.5), 3.0) == 0.0);
    CHECK(sinr_carol(SlotKind::Psi1, rho_cs(0.0), 3.0) == 3.0);
    CHECK(sinr_carol(SlotKind::Psi1, rho_cs(0.5), 3.0) == doctest::Approx(0.6));
}

TEST_CASE("secrecy rate") {
    CHECK(secrecy_rate(SlotKind::Psi0, rho_cs(0.5), 3.0, 1.0) == doctest::Approx(1.0));
    CHECK(secrecy_rate(SlotKind::Psi1, rho_cs(0.0), 3.0, 1.0) == 0.0);
    CHECK(secrecy_rate(SlotKind::Psi0, rho_cs(0.5), 1.0, 3.0) == 0.0);
}

TEST_CASE("covert rate") {
    CHECK(covert_rate(rho_cs(1.0), 3.0, 0.5) == 0.0);
    CHECK(covert_rate(rho_cs(0.0), 3.0, 0.5) == doctest::Approx(1.0));
    CHECK(covert_rate(rho_cs(0.5), 3.0, 0.5) == doctest::Approx(0.5 * lg(1.6)));
    CHECK(covert_rate(rho_cs(0.5), 3.0, 0.5) == doctest::Approx(0.3390).epsilon(1e-4));
}

TEST_CASE("average rate") {
    const LinkSnrs s{3.0, 3.0, 1.0, 0.0, 1.0};
    CHECK(average_rate(rho_cs(1.0), kHalf, s).average_rate == doctest::Approx(1.0));
    CHECK(average_rate(rho_cs(0.0), kHalf, s).average_rate == doctest::Approx(1.5));

    // independent evaluation: Bob 1.5/2.5, untrusted 0.5/1.5, Carol 1.5/2.5
    const double bob = 1.5 / 2.5;
    const double unt = 0.5 / 1.5;
    const double carol = 1.5 / 2.5;
    const double expected = 0.5 * (lg(4.0) - lg(2.0)) +
                            0.5 * (lg(1.0 + bob) - lg(1.0 + unt)) + 0.5 * lg(1.0 + carol);
    const auto r = average_rate(rho_cs(0.5), kHalf, s);
    CHECK(r.average_rate == doctest::Approx(expected).epsilon(1e-12));
    CHECK(r.average_rate == doctest::Approx(0.9707).epsilon(5e-4));
    CHECK(r.sec_rate_psi1 == doctest::Approx(lg(1.2)).epsilon(1e-12));
    CHECK(r.secrecy_constraint_value(kHalf) ==
          doctest::Approx(0.5 * r.sec_rate_psi0 + 0.5 * r.sec_rate_psi1));
}

TEST_CASE("artificial-noise rate keeps only the covert term") {
    CHECK(average_rate_an(rho_cs(0.0), kHalf, 3.0) == doctest::Approx(1.0));
    CHECK(average_rate_an(rho_cs(1.0), kHalf, 3.0) == 0.0);
    CHECK(average_rate_an(rho_cs(0.5), kHalf, 3.0) == doctest::Approx(0.3390).epsilon(1e-4));
}

TEST_CASE("SIC decoding order") {
    const NetworkGeometry geo{2.0, 2.0, 5, 5, 4};
    CHECK(sic_indicator(geo, ChannelRealization{1, 2, 1, 1}).a == 1);
    CHECK(sic_indicator(geo, ChannelRealization{2, 1, 1, 1}).a == 0);
    CHECK(sic_indicator(geo, ChannelRealization{1.5, 1.5, 1, 1}).a == 0);
    // distances enter through g/d^alpha
    const NetworkGeometry far_carol{1.0, 2.0, 5, 5, 4};
    CHECK(sic_indicator(far_carol, ChannelRealization{1, 10, 1, 1}).a == 0);
    CHECK(sic_indicator(far_carol, ChannelRealization{1, 17, 1, 1}).a == 1);
}

TEST_CASE("SIC SINRs") {
    CHECK(sinr_bob_sic(SlotKind::Psi1, rho_cs(0.5), 3.0, {0}) == doctest::Approx(1.5));
    CHECK(sinr_bob_sic(SlotKind::Psi1, rho_cs(0.5), 3.0, {1}) == doctest::Approx(0.6));
    CHECK(sinr_carol_sic(SlotKind::Psi1, rho_cs(0.5), 3.0, {1}) == doctest::Approx(1.5));
    CHECK(sinr_carol_sic(SlotKind::Psi1, rho_cs(0.5), 3.0, {0}) == doctest::Approx(0.6));

    const LinkSnrs s{3.0, 3.0, 1.0, 0.0, 1.0};
    const auto r = average_rate_sic(rho_cs(0.5), kHalf, s, {1});
    CHECK(r.covert_rate == doctest::Approx(0.5 * lg(2.5)));
    const auto full = average_rate_sic(rho_cs(1.0), kHalf, s, {1});
    CHECK(full.covert_rate == 0.0);
    CHECK(sinr_bob_sic(SlotKind::Psi1, rho_cs(1.0), 3.0, {1}) == 3.0);
    // a = 0 leaves Carol's term identical to the interference-limited one
    for (double rho : {0.0, 0.2, 0.7, 1.0}) {
        CHECK(average_rate_sic(rho_cs(rho), kHalf, s, {0}).covert_rate ==
              doctest::Approx(average_rate(rho_cs(rho), kHalf, s).covert_rate));
    }
}

TEST_CASE("monotonicity in rho_cs when gamma_b > gamma_u") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double gu = std::exp(8.0 * u(rng) - 4.0);
        const double gb = gu * (1.0 + 50.0 * u(rng));
        const double gc = std::exp(8.0 * u(rng) - 4.0);
        double prev_sec = -1.0;
        double prev_cov = 1e300;
        for (int i = 0; i <= 1000; ++i) {
            const double rho = i / 1000.0;
            const double sec = secrecy_rate(SlotKind::Psi1, rho_cs(rho), gb, gu);
            const double cov = covert_rate(rho_cs(rho), gc, 0.5);
            CHECK(sec >= prev_sec - 1e-14);
            CHECK(cov <= prev_cov + 1e-14);
            prev_sec = sec;
            prev_cov = cov;
        }
        CHECK(secrecy_rate(SlotKind::Psi1, rho_cs(0.0), gb, gu) == 0.0);
        CHECK(std::abs(covert_rate(rho_cs(1.0), gc, 0.5)) == 0.0);
    }
}

TEST_CASE("SIC never lowers the average rate when a follows the channel") {
    std::mt19937_64 rng(9);
    std::exponential_distribution<double> e(1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const NetworkGeometry geo{1.5, 2.0, 5, 5, 4};
    for (int trial = 0; trial < 2000; ++trial) {
        const ChannelRealization ch{e(rng), e(rng), e(rng), e(rng)};
        const LinkSnrs s{100.0 * ch.g_ab / std::pow(1.5, 4), 100.0 * ch.g_ac / 16.0,
                         10.0 * ch.g_au, 0.0, 1.0};
        const auto a = sic_indicator(geo, ch);
        const auto pol = rho_cs(u(rng));
        CHECK(average_rate_sic(pol, kHalf, s, a).average_rate >=
              average_rate(pol, kHalf, s).average_rate - 1e-12);
    }
}

TEST_CASE("covert-rate log split identity") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double g = std::exp(12.0 * u(rng) - 6.0);
        const double rho = u(rng);
        const double lhs = log2_1p((1.0 - rho) * g / (1.0 + rho * g));
        const double rhs = log2_1p(g) - log2_1p(rho * g);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("secrecy rate is never negative") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double gb = std::exp(10.0 * u(rng) - 5.0);
        const double gu = std::exp(10.0 * u(rng) - 5.0);
        const PowerPolicy pol{u(rng), u(rng), 1.0};
        CHECK(secrecy_rate(SlotKind::Psi0, pol, gb, gu) >= 0.0);
        CHECK(secrecy_rate(SlotKind::Psi1, pol, gb, gu) >= 0.0);
    }
}

}
