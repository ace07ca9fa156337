// Warden-side analysis: radiometer hypothesis test on the per-slot average
// received power, closed-form false-alarm / missed-detection probabilities,
// the optimal threshold, and an empirical simulator for finite slot lengths.
#pragma once

#include "covertrate/model.hpp"
#include "covertrate/parallel.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace covert::detection {

using model::NetworkGeometry;
using model::NoiseProfile;
using model::PowerPolicy;

/// Mean signal power received by the warden without (psi0) and with (psi1)
/// the covert stream. psi0 <= psi1, with equality iff rho_s = 1.
struct PsiParams {
    double psi0 = 0.0;
    double psi1 = 0.0;
};

struct DetectionReport {
    double theta = 0.0;
    double p_fa = 1.0;
    double p_md = 0.0;
    double error_sum = 1.0;
    double theta_star = 0.0;
    double min_error_sum = 1.0;
};

PsiParams psi_params(const PowerPolicy& pol, double d_aw, double alpha);

double fa_prob(double theta, double sigma2_w, double psi0);
double md_prob(double theta, double sigma2_w, double psi1);
double error_sum(double theta, double sigma2_w, const PsiParams& psi);

/// Minimizes p_FA + p_MD over the threshold. Requires psi0 <= psi1.
///
/// For psi0 < psi1 the minimizer is the stationary point
///   theta* = sigma2_w + ln(psi1/psi0) * psi0 * psi1 / (psi1 - psi0).
/// Equal powers make the hypotheses indistinguishable (sum 1 everywhere,
/// theta* reported as sigma2_w). psi0 = 0 < psi1 has infimum 0 approached as
/// theta -> sigma2_w from above; theta* is reported as sigma2_w.
/// The report's theta/p_fa/p_md/error_sum are evaluated at theta*.
DetectionReport min_error_sum(double sigma2_w, const PsiParams& psi);

/// Fills theta/p_fa/p_md/error_sum at a given threshold plus the optimum.
DetectionReport detection_report(double theta, double sigma2_w, const PsiParams& psi);

/// min_error_sum >= 1 - epsilon (boundary inclusive).
bool covertness_satisfied(const DetectionReport& report, double epsilon);

struct EmpiricalDetection {
    double theta = 0.0;
    double p_fa = 0.0;
    double p_md = 0.0;
};

/// Symbol-level radiometer simulation. Each trial draws the warden gain
/// |h_aw|^2 ~ Exp(1) and the slot statistic Y_w/n = (sigma2_w + S) * X with
/// X = chi2_{2n}/(2n) (complex Gaussian symbols, unit mean), independently
/// under each hypothesis. X is a sum of 2n squared normals for n <= 10^4 and
/// a Gamma(n, 1/n) draw above that. Trial t uses stream (seed, t), so the
/// result does not depend on the execution mode or thread count.
std::vector<EmpiricalDetection> simulate_detection(
    int n, std::int64_t trials, const PowerPolicy& pol, const NetworkGeometry& geo,
    const NoiseProfile& noise, std::span<const double> thetas, std::uint64_t seed,
    Execution exec = Execution::Parallel);

EmpiricalDetection simulate_detection(int n, std::int64_t trials,
                                      const PowerPolicy& pol,
                                      const NetworkGeometry& geo,
                                      const NoiseProfile& noise, double theta,
                                      std::uint64_t seed,
                                      Execution exec = Execution::Parallel);

/// Draws chi2_{2n}/(2n).
double sample_normalized_chi2(int n, std::mt19937_64& rng);

}  // namespace covert::detection
