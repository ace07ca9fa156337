#include "covertrate/model.hpp"

#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace covert::model;

TEST_SUITE("model") {

TEST_CASE("dB conversion") {
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(db_to_linear(-30.0) == doctest::Approx(1e-3).epsilon(1e-15));
    CHECK(linear_to_db(db_to_linear(3.0)) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("channel gains have unit mean") {
    auto rng = make_stream(7, 0);
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) sum += sample_channel(rng).g_ab;
    CHECK(std::abs(sum / n - 1.0) < 0.01);
}

TEST_CASE("same stream gives the same realization") {
    auto a = make_stream(42, 3);
    auto b = make_stream(42, 3);
    const auto x = sample_channel(a);
    const auto y = sample_channel(b);
    CHECK(x.g_ab == y.g_ab);
    CHECK(x.g_ac == y.g_ac);
    CHECK(x.g_au == y.g_au);
    CHECK(x.g_aw == y.g_aw);
    auto c = make_stream(42, 4);
    CHECK(sample_channel(c).g_ab != x.g_ab);
}

TEST_CASE("g_ac matches the Exp(1) CDF (Kolmogorov-Smirnov)") {
    auto rng = make_stream(11, 0);
    const int n = 100000;
    std::vector<double> g(n);
    for (auto& x : g) x = sample_channel(rng).g_ac;
    std::sort(g.begin(), g.end());
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        const double cdf = 1.0 - std::exp(-g[i]);
        d = std::max({d, std::abs(cdf - static_cast<double>(i) / n),
                      std::abs(static_cast<double>(i + 1) / n - cdf)});
    }
    CHECK(d < 0.01);
}

TEST_CASE("link SNR definition") {
    const NetworkGeometry unit{1, 1, 1, 1, 4};
    const NoiseProfile ones{1, 1, 1, 1};
    const auto s = link_snrs(unit, ones, 1.0, {1, 1, 1, 1});
    CHECK(s.gamma_b == 1.0);
    CHECK(s.gamma_c == 1.0);
    CHECK(s.gamma_u == 1.0);
    CHECK(s.gamma_w == 1.0);

    CHECK(link_snr(2.0, 4.0, 2.0, 4.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));

    const NetworkGeometry table{1, 1, 5, 5, 4};
    const NoiseProfile noise{db_to_linear(-33), db_to_linear(-33), db_to_linear(-30),
                             db_to_linear(-30)};
    const auto t = link_snrs(table, noise, db_to_linear(3.0), {1, 1, 1, 1});
    CHECK(t.gamma_u == doctest::Approx(std::pow(10.0, 0.3) / (625.0 * 1e-3)).epsilon(1e-12));
    CHECK(t.gamma_u == doctest::Approx(3.193).epsilon(1e-3));
    CHECK_THROWS_AS(link_snrs(table, noise, 0.0, {1, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("link SNRs are homogeneous in P") {
    const NetworkGeometry geo{1.3, 2.1, 5, 5, 3.7};
    const NoiseProfile noise{1e-3, 2e-3, 3e-3, 4e-3};
    const ChannelRealization ch{0.3, 1.7, 0.9, 2.2};
    const auto base = link_snrs(geo, noise, 1.7, ch);
    for (double k : {2.0, 4.0, 0.5}) {
        const auto s = link_snrs(geo, noise, 1.7 * k, ch);
        CHECK(s.gamma_b == k * base.gamma_b);
        CHECK(s.gamma_c == k * base.gamma_c);
        CHECK(s.gamma_u == k * base.gamma_u);
        CHECK(s.gamma_w == k * base.gamma_w);
    }
    const auto s = link_snrs(geo, noise, 1.7 * 3.1, ch);
    CHECK(s.gamma_b == doctest::Approx(3.1 * base.gamma_b).epsilon(1e-15));
}

TEST_CASE("SNR decreases with distance and noise") {
    double prev = link_snr(1.0, 1.0, 0.5, 4.0, 1.0);
    for (double d = 0.6; d < 10.0; d += 0.1) {
        const double g = link_snr(1.0, 1.0, d, 4.0, 1.0);
        CHECK(g < prev);
        prev = g;
    }
    prev = link_snr(1.0, 1.0, 1.0, 4.0, 1e-4);
    for (double s2 = 2e-4; s2 < 1.0; s2 *= 1.5) {
        const double g = link_snr(1.0, 1.0, 1.0, 4.0, s2);
        CHECK(g < prev);
        prev = g;
    }
}

TEST_CASE("slot probabilities must sum to one") {
    CHECK_NOTHROW(SlotModel(0.5, 0.5));
    CHECK_NOTHROW(SlotModel(0.3, 0.7 + 5e-13));
    CHECK_THROWS_AS(SlotModel(0.3, 0.7 + 1e-11), std::invalid_argument);
    CHECK_THROWS_AS(SlotModel(0.6, 0.6), std::invalid_argument);
    CHECK_THROWS_AS(SlotModel(-0.1, 1.1), std::invalid_argument);
    const auto s = SlotModel::from_covert_probability(0.25);
    CHECK(s.p_r0() == 0.75);
    CHECK(s.p_r1() == 0.25);
}

TEST_CASE("value validation") {
    CHECK_THROWS(NetworkGeometry{0, 1, 1, 1, 4}.validate());
    CHECK_THROWS(NetworkGeometry{1, 1, 1, 1, 0}.validate());
    CHECK_THROWS(NoiseProfile{1, 1, -1, 1}.validate());
    CHECK_THROWS(PowerPolicy{1.2, 0.5, 1}.validate());
    CHECK_THROWS(PowerPolicy{1, -0.1, 1}.validate());
    CHECK_THROWS(PowerPolicy{1, 0.5, 0}.validate());
    CHECK_THROWS(QosRequirements{-1, 0.1, 0.1}.validate());
    CHECK_THROWS(QosRequirements{0.5, 0.1, 1.5}.validate());
    const PowerPolicy pol{0.8, 0.3, 2.0};
    CHECK(pol.bob_power(false) == doctest::Approx(1.6));
    CHECK(pol.bob_power(true) == doctest::Approx(0.6));
    CHECK(pol.carol_power(false) == 0.0);
    CHECK(pol.carol_power(true) == doctest::Approx(1.4));
}

}
