#include "covertrate/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace covert::model {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

void NetworkGeometry::validate() const {
    require(d_ab > 0 && d_ac > 0 && d_au > 0 && d_aw > 0,
            "geometry: distances must be positive");
    require(alpha > 0, "geometry: path-loss exponent must be positive");
}

void NoiseProfile::validate() const {
    require(sigma2_b > 0 && sigma2_c > 0 && sigma2_u > 0 && sigma2_w > 0,
            "noise: powers must be positive");
}

SlotModel::SlotModel(double p_r0, double p_r1) : p_r0_(p_r0), p_r1_(p_r1) {
    require(p_r0 >= 0 && p_r0 <= 1 && p_r1 >= 0 && p_r1 <= 1,
            "slots: probabilities must lie in [0,1]");
    require(std::abs(p_r0 + p_r1 - 1.0) <= 1e-12,
            "slots: p_r0 + p_r1 must equal 1");
}

SlotModel SlotModel::from_covert_probability(double p_r1) {
    return SlotModel(1.0 - p_r1, p_r1);
}

void PowerPolicy::validate() const {
    require(rho_s >= 0 && rho_s <= 1, "policy: rho_s must lie in [0,1]");
    require(rho_cs >= 0 && rho_cs <= 1, "policy: rho_cs must lie in [0,1]");
    require(total_power > 0, "policy: total power must be positive");
}

double PowerPolicy::bob_power(bool covert_slot) const {
    return (covert_slot ? rho_cs : rho_s) * total_power;
}

double PowerPolicy::carol_power(bool covert_slot) const {
    return covert_slot ? (1.0 - rho_cs) * total_power : 0.0;
}

void QosRequirements::validate() const {
    require(r_sec_min >= 0, "qos: r_sec_min must be nonnegative");
    require(r_cov_min >= 0, "qos: r_cov_min must be nonnegative");
    require(epsilon >= 0 && epsilon <= 1, "qos: epsilon must lie in [0,1]");
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(~stream)));
}

ChannelRealization sample_channel(std::mt19937_64& rng) {
    std::exponential_distribution<double> exp1(1.0);
    ChannelRealization ch;
    ch.g_ab = exp1(rng);
    ch.g_ac = exp1(rng);
    ch.g_au = exp1(rng);
    ch.g_aw = exp1(rng);
    return ch;
}

double link_snr(double total_power, double gain, double distance, double alpha,
                double sigma2) {
    return total_power * gain / (std::pow(distance, alpha) * sigma2);
}

LinkSnrs link_snrs(const NetworkGeometry& geo, const NoiseProfile& noise,
                   double total_power, const ChannelRealization& ch) {
    require(total_power > 0, "link_snrs: total power must be positive");
    LinkSnrs s;
    s.gamma_b = link_snr(total_power, ch.g_ab, geo.d_ab, geo.alpha, noise.sigma2_b);
    s.gamma_c = link_snr(total_power, ch.g_ac, geo.d_ac, geo.alpha, noise.sigma2_c);
    s.gamma_u = link_snr(total_power, ch.g_au, geo.d_au, geo.alpha, noise.sigma2_u);
    s.gamma_w = link_snr(total_power, ch.g_aw, geo.d_aw, geo.alpha, noise.sigma2_w);
    s.total_power = total_power;
    return s;
}

}  // namespace covert::model
