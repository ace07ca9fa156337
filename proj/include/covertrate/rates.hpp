// Per-slot SINRs and the secrecy, covert, average, SIC and artificial-noise
// rates. Rates are in bps/Hz.
#pragma once

#include "covertrate/model.hpp"

namespace covert::rates {

using model::ChannelRealization;
using model::LinkSnrs;
using model::NetworkGeometry;
using model::PowerPolicy;
using model::SlotModel;

enum class SlotKind { Psi0, Psi1 };

/// Per-term rates. average_rate = p_r0*sec_rate_psi0 + p_r1*sec_rate_psi1 +
/// covert_rate, where covert_rate already carries its p_r1 weight.
struct RateBreakdown {
    double sec_rate_psi0 = 0.0;
    double sec_rate_psi1 = 0.0;
    double covert_rate = 0.0;
    double average_rate = 0.0;

    /// Left-hand side of the average secrecy-rate constraint.
    double secrecy_constraint_value(const SlotModel& slots) const {
        return slots.p_r0() * sec_rate_psi0 + slots.p_r1() * sec_rate_psi1;
    }
};

/// a = 1 means Carol's normalized gain is stronger and Carol cancels Bob's
/// signal; a = 0 means Bob cancels Carol's.
struct SicIndicator {
    int a = 0;
};

/// log2 via the natural-log ratio.
double log2_1p(double x);
/// max(x, 0)
inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

double sinr_bob(SlotKind slot, const PowerPolicy& pol, double gamma_b);
double sinr_untrusted(SlotKind slot, const PowerPolicy& pol, double gamma_u);
double sinr_carol(SlotKind slot, const PowerPolicy& pol, double gamma_c);

/// [log2(1+SINR_B) - log2(1+SINR_U)]^+
double secrecy_rate(SlotKind slot, const PowerPolicy& pol, double gamma_b,
                    double gamma_u);

/// p_r1 * log2(1 + SINR_C in Psi1)
double covert_rate(const PowerPolicy& pol, double gamma_c, double p_r1);

RateBreakdown average_rate(const PowerPolicy& pol, const SlotModel& slots,
                           const LinkSnrs& snrs);

/// Artificial-noise mode: Bob's stream is replaced by noise, so only the
/// covert term remains.
double average_rate_an(const PowerPolicy& pol, const SlotModel& slots,
                       double gamma_c);

SicIndicator sic_indicator(const NetworkGeometry& geo, const ChannelRealization& ch);

double sinr_bob_sic(SlotKind slot, const PowerPolicy& pol, double gamma_b,
                    SicIndicator a);
double sinr_carol_sic(SlotKind slot, const PowerPolicy& pol, double gamma_c,
                      SicIndicator a);

RateBreakdown average_rate_sic(const PowerPolicy& pol, const SlotModel& slots,
                               const LinkSnrs& snrs, SicIndicator a);

}  // namespace covert::rates
