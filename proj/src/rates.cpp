#include "covertrate/rates.hpp"

#include <cmath>
#include <numbers>

namespace covert::rates {

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

double sinr_bob(SlotKind slot, const PowerPolicy& pol, double gamma_b) {
    if (slot == SlotKind::Psi0) return pol.rho_s * gamma_b;
    return pol.rho_cs * gamma_b / (1.0 + (1.0 - pol.rho_cs) * gamma_b);
}

double sinr_untrusted(SlotKind slot, const PowerPolicy& pol, double gamma_u) {
    if (slot == SlotKind::Psi0) return pol.rho_s * gamma_u;
    return pol.rho_cs * gamma_u / (1.0 + (1.0 - pol.rho_cs) * gamma_u);
}

double sinr_carol(SlotKind slot, const PowerPolicy& pol, double gamma_c) {
    if (slot == SlotKind::Psi0) return 0.0;
    return (1.0 - pol.rho_cs) * gamma_c / (1.0 + pol.rho_cs * gamma_c);
}

double secrecy_rate(SlotKind slot, const PowerPolicy& pol, double gamma_b,
                    double gamma_u) {
    return positive_part(log2_1p(sinr_bob(slot, pol, gamma_b)) -
                         log2_1p(sinr_untrusted(slot, pol, gamma_u)));
}

double covert_rate(const PowerPolicy& pol, double gamma_c, double p_r1) {
    return p_r1 * log2_1p(sinr_carol(SlotKind::Psi1, pol, gamma_c));
}

RateBreakdown average_rate(const PowerPolicy& pol, const SlotModel& slots,
                           const LinkSnrs& snrs) {
    RateBreakdown r;
    r.sec_rate_psi0 = secrecy_rate(SlotKind::Psi0, pol, snrs.gamma_b, snrs.gamma_u);
    r.sec_rate_psi1 = secrecy_rate(SlotKind::Psi1, pol, snrs.gamma_b, snrs.gamma_u);
    r.covert_rate = covert_rate(pol, snrs.gamma_c, slots.p_r1());
    r.average_rate = slots.p_r0() * r.sec_rate_psi0 +
                     slots.p_r1() * r.sec_rate_psi1 + r.covert_rate;
    return r;
}

double average_rate_an(const PowerPolicy& pol, const SlotModel& slots,
                       double gamma_c) {
    return covert_rate(pol, gamma_c, slots.p_r1());
}

SicIndicator sic_indicator(const NetworkGeometry& geo, const ChannelRealization& ch) {
    const double bob = ch.g_ab / std::pow(geo.d_ab, geo.alpha);
    const double carol = ch.g_ac / std::pow(geo.d_ac, geo.alpha);
    // ties resolve to a = 0
    return SicIndicator{bob < carol ? 1 : 0};
}

double sinr_bob_sic(SlotKind slot, const PowerPolicy& pol, double gamma_b,
                    SicIndicator a) {
    if (slot == SlotKind::Psi0) return pol.rho_s * gamma_b;
    return pol.rho_cs * gamma_b / (1.0 + a.a * (1.0 - pol.rho_cs) * gamma_b);
}

double sinr_carol_sic(SlotKind slot, const PowerPolicy& pol, double gamma_c,
                      SicIndicator a) {
    if (slot == SlotKind::Psi0) return 0.0;
    return (1.0 - pol.rho_cs) * gamma_c / (1.0 + (1 - a.a) * pol.rho_cs * gamma_c);
}

RateBreakdown average_rate_sic(const PowerPolicy& pol, const SlotModel& slots,
                               const LinkSnrs& snrs, SicIndicator a) {
    RateBreakdown r;
    r.sec_rate_psi0 = secrecy_rate(SlotKind::Psi0, pol, snrs.gamma_b, snrs.gamma_u);
    r.sec_rate_psi1 = positive_part(
        log2_1p(sinr_bob_sic(SlotKind::Psi1, pol, snrs.gamma_b, a)) -
        log2_1p(sinr_untrusted(SlotKind::Psi1, pol, snrs.gamma_u)));
    r.covert_rate =
        slots.p_r1() * log2_1p(sinr_carol_sic(SlotKind::Psi1, pol, snrs.gamma_c, a));
    r.average_rate = slots.p_r0() * r.sec_rate_psi0 +
                     slots.p_r1() * r.sec_rate_psi1 + r.covert_rate;
    return r;
}

}  // namespace covert::rates
