#include "covertrate/log_affine.hpp"

#include <cmath>
#include <numbers>

namespace covert::solver {

LogAffineSum& LogAffineSum::add_log(double weight, double intercept, double slope) {
    if (weight == 0.0) return *this;
    if (slope == 0.0) {
        constant_ += weight * std::log(intercept) / std::numbers::ln2;
        return *this;
    }
    terms_.push_back({weight, intercept, slope});
    return *this;
}

LogAffineSum& LogAffineSum::add_constant(double c) {
    constant_ += c;
    return *this;
}

LogAffineSum& LogAffineSum::add_linear(double s) {
    linear_ += s;
    return *this;
}

LogAffineSum& LogAffineSum::scale(double k) {
    constant_ *= k;
    linear_ *= k;
    for (auto& t : terms_) t.weight *= k;
    return *this;
}

double LogAffineSum::value(double rho) const {
    double v = constant_ + linear_ * rho;
    for (const auto& t : terms_) {
        v += t.weight * std::log(t.intercept + t.slope * rho) / std::numbers::ln2;
    }
    return v;
}

double LogAffineSum::derivative(double rho) const {
    double d = linear_;
    for (const auto& t : terms_) {
        d += t.weight * t.slope / ((t.intercept + t.slope * rho) * std::numbers::ln2);
    }
    return d;
}

LogAffineSum LogAffineSum::minorant(double rho0) const {
    LogAffineSum out(constant_);
    out.linear_ = linear_;
    for (const auto& t : terms_) {
        if (t.weight > 0.0) {
            out.terms_.push_back(t);
            continue;
        }
        const double arg = t.intercept + t.slope * rho0;
        const double value = std::log(arg) / std::numbers::ln2;
        const double grad = t.slope / (arg * std::numbers::ln2);
        out.constant_ += t.weight * (value - grad * rho0);
        out.linear_ += t.weight * grad;
    }
    return out;
}

bool LogAffineSum::is_concave() const {
    for (const auto& t : terms_) {
        if (t.weight < 0.0) return false;
    }
    return true;
}

}  // namespace covert::solver
