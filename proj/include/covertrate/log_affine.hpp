// Scalar functions of the form
//   c + s*rho + sum_i w_i * log2(a_i + b_i*rho)
// on rho in [0,1]. Every rate expression in the model reduces to this form
// once the SINR fractions are split into differences of logs. Terms with
// w_i > 0 are concave and terms with w_i < 0 convex, so the sum is a
// difference of convex functions; minorant() replaces each convex term by
// its tangent and returns a concave lower bound that is tight at the
// expansion point.
#pragma once

#include <vector>

namespace covert::solver {

struct LogTerm {
    double weight = 1.0;
    double intercept = 1.0;
    double slope = 0.0;
};

class LogAffineSum {
public:
    LogAffineSum() = default;
    explicit LogAffineSum(double constant) : constant_(constant) {}

    /// Adds w*log2(a + b*rho). a + b*rho must stay positive on [0,1].
    LogAffineSum& add_log(double weight, double intercept, double slope);
    LogAffineSum& add_constant(double c);
    LogAffineSum& add_linear(double s);
    /// Scales every coefficient.
    LogAffineSum& scale(double k);

    double value(double rho) const;
    double derivative(double rho) const;

    /// Tangent expansion of the convex (negatively weighted) terms at rho0.
    LogAffineSum minorant(double rho0) const;

    bool is_concave() const;
    /// No log terms left: the function is c + s*rho.
    bool is_affine() const { return terms_.empty(); }

    double constant() const { return constant_; }
    double linear() const { return linear_; }
    const std::vector<LogTerm>& terms() const { return terms_; }

private:
    double constant_ = 0.0;
    double linear_ = 0.0;
    std::vector<LogTerm> terms_;
};

}  // namespace covert::solver
