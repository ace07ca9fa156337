#include "covertrate/detection.hpp"

#include <cmath>
#include <stdexcept>

namespace covert::detection {

PsiParams psi_params(const PowerPolicy& pol, double d_aw, double alpha) {
    const double path = std::pow(d_aw, alpha);
    // Under Psi1 Bob's and Carol's streams together always use the full budget.
    return PsiParams{pol.rho_s * pol.total_power / path, pol.total_power / path};
}

double fa_prob(double theta, double sigma2_w, double psi0) {
    const double excess = theta - sigma2_w;
    if (psi0 <= 0.0) return excess > 0.0 ? 0.0 : 1.0;
    if (excess < 0.0) return 1.0;
    return std::exp(-excess / psi0);
}

double md_prob(double theta, double sigma2_w, double psi1) {
    const double excess = theta - sigma2_w;
    if (psi1 <= 0.0) return excess > 0.0 ? 1.0 : 0.0;
    if (excess < 0.0) return 0.0;
    return -std::expm1(-excess / psi1);
}

double error_sum(double theta, double sigma2_w, const PsiParams& psi) {
    return fa_prob(theta, sigma2_w, psi.psi0) + md_prob(theta, sigma2_w, psi.psi1);
}

DetectionReport min_error_sum(double sigma2_w, const PsiParams& psi) {
    if (psi.psi0 > psi.psi1) {
        throw std::invalid_argument("min_error_sum: requires psi0 <= psi1");
    }
    DetectionReport r;
    if (psi.psi1 <= 0.0 || psi.psi0 == psi.psi1) {
        r.theta_star = sigma2_w;
        r.min_error_sum = 1.0;
    } else if (psi.psi0 <= 0.0) {
        r.theta_star = sigma2_w;
        r.min_error_sum = 0.0;
    } else {
        const double ratio = psi.psi1 / psi.psi0;
        r.theta_star = sigma2_w + std::log(ratio) * psi.psi0 * psi.psi1 /
                                      (psi.psi1 - psi.psi0);
        r.min_error_sum = error_sum(r.theta_star, sigma2_w, psi);
    }
    r.theta = r.theta_star;
    if (psi.psi0 <= 0.0 && psi.psi1 > 0.0) {
        // infimum only; the limit from above has no false alarms or misses
        r.p_fa = 0.0;
        r.p_md = 0.0;
        r.error_sum = 0.0;
    } else {
        r.p_fa = fa_prob(r.theta, sigma2_w, psi.psi0);
        r.p_md = md_prob(r.theta, sigma2_w, psi.psi1);
        r.error_sum = r.min_error_sum;
    }
    return r;
}

DetectionReport detection_report(double theta, double sigma2_w, const PsiParams& psi) {
    DetectionReport r = min_error_sum(sigma2_w, psi);
    r.theta = theta;
    r.p_fa = fa_prob(theta, sigma2_w, psi.psi0);
    r.p_md = md_prob(theta, sigma2_w, psi.psi1);
    r.error_sum = r.p_fa + r.p_md;
    return r;
}

bool covertness_satisfied(const DetectionReport& report, double epsilon) {
    return report.min_error_sum >= 1.0 - epsilon;
}

double sample_normalized_chi2(int n, std::mt19937_64& rng) {
    if (n > 10000) {
        std::gamma_distribution<double> gamma(static_cast<double>(n), 1.0 / n);
        return gamma(rng);
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    double acc = 0.0;
    for (int k = 0; k < 2 * n; ++k) {
        const double z = normal(rng);
        acc += z * z;
    }
    return acc / (2.0 * n);
}

std::vector<EmpiricalDetection> simulate_detection(
    int n, std::int64_t trials, const PowerPolicy& pol, const NetworkGeometry& geo,
    const NoiseProfile& noise, std::span<const double> thetas, std::uint64_t seed,
    Execution exec) {
    if (n < 1 || trials < 1) {
        throw std::invalid_argument("simulate_detection: need n >= 1 and trials >= 1");
    }
    const PsiParams psi = psi_params(pol, geo.d_aw, geo.alpha);
    const double sigma2_w = noise.sigma2_w;

    std::vector<double> stat0(static_cast<std::size_t>(trials));
    std::vector<double> stat1(static_cast<std::size_t>(trials));
    for_each_index(trials, exec, [&](std::int64_t t) {
        auto rng = model::make_stream(seed, static_cast<std::uint64_t>(t));
        std::exponential_distribution<double> exp1(1.0);
        const double s0 = psi.psi0 * exp1(rng);
        stat0[t] = (sigma2_w + s0) * sample_normalized_chi2(n, rng);
        const double s1 = psi.psi1 * exp1(rng);
        stat1[t] = (sigma2_w + s1) * sample_normalized_chi2(n, rng);
    });

    std::vector<EmpiricalDetection> out;
    out.reserve(thetas.size());
    for (double theta : thetas) {
        std::int64_t false_alarms = 0;
        std::int64_t misses = 0;
        for (std::int64_t t = 0; t < trials; ++t) {
            if (stat0[t] > theta) ++false_alarms;
            if (stat1[t] < theta) ++misses;
        }
        out.push_back({theta, static_cast<double>(false_alarms) / trials,
                       static_cast<double>(misses) / trials});
    }
    return out;
}

EmpiricalDetection simulate_detection(int n, std::int64_t trials,
                                      const PowerPolicy& pol,
                                      const NetworkGeometry& geo,
                                      const NoiseProfile& noise, double theta,
                                      std::uint64_t seed, Execution exec) {
    const double thetas[] = {theta};
    return simulate_detection(n, trials, pol, geo, noise, thetas, seed, exec).front();
}

}  // namespace covert::detection
