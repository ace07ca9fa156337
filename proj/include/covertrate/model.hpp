// Network geometry, noise, slot statistics and the mapping from physical
// parameters to normalized link SNRs.
#pragma once

#include <cstdint>
#include <random>

namespace covert::model {

/// linear = 10^(dB/10)
double db_to_linear(double db);
double linear_to_db(double linear);

/// Distances (m) from the transmitter to Bob, Carol, the untrusted user and
/// the warden, and the path-loss exponent.
struct NetworkGeometry {
    double d_ab = 1.0;
    double d_ac = 1.0;
    double d_au = 5.0;
    double d_aw = 5.0;
    double alpha = 4.0;

    void validate() const;
};

/// Receiver noise powers, linear scale.
struct NoiseProfile {
    double sigma2_b = 1.0;
    double sigma2_c = 1.0;
    double sigma2_u = 1.0;
    double sigma2_w = 1.0;

    void validate() const;
};

/// Squared channel magnitudes |h|^2 for one fading block.
struct ChannelRealization {
    double g_ab = 1.0;
    double g_ac = 1.0;
    double g_au = 1.0;
    double g_aw = 1.0;
};

/// Normalized SNRs P|h|^2/(d^alpha sigma^2). total_power records the P the
/// values were computed with so that solvers can report a full policy.
struct LinkSnrs {
    double gamma_b = 0.0;
    double gamma_c = 0.0;
    double gamma_u = 0.0;
    double gamma_w = 0.0;
    double total_power = 1.0;
};

/// Probabilities of a slot without (Psi0) and with (Psi1) the covert signal.
class SlotModel {
public:
    /// Throws std::invalid_argument unless both lie in [0,1] and sum to one
    /// within 1e-12.
    SlotModel(double p_r0, double p_r1);

    static SlotModel from_covert_probability(double p_r1);

    double p_r0() const { return p_r0_; }
    double p_r1() const { return p_r1_; }

private:
    double p_r0_;
    double p_r1_;
};

/// Power-allocation factors in Psi0 / Psi1 slots and the total budget P.
struct PowerPolicy {
    double rho_s = 1.0;
    double rho_cs = 1.0;
    double total_power = 1.0;

    void validate() const;
    /// Power on Bob's stream in the given slot.
    double bob_power(bool covert_slot) const;
    /// Power on Carol's stream in the given slot.
    double carol_power(bool covert_slot) const;
};

struct QosRequirements {
    double r_sec_min = 0.5;
    double r_cov_min = 0.1;
    double epsilon = 0.1;

    void validate() const;
};

/// Independent stream for (seed, stream index). Streams are derived by
/// splitmix64 mixing so that draw i is the same regardless of which thread
/// evaluates it.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

/// Each |h|^2 is Exponential(1): unit-variance circularly symmetric Gaussian
/// fading. Fields are drawn in the order ab, ac, au, aw.
ChannelRealization sample_channel(std::mt19937_64& rng);

LinkSnrs link_snrs(const NetworkGeometry& geo, const NoiseProfile& noise,
                   double total_power, const ChannelRealization& ch);

/// P g / (d^alpha sigma^2) for one link.
double link_snr(double total_power, double gain, double distance, double alpha,
                double sigma2);

}  // namespace covert::model
