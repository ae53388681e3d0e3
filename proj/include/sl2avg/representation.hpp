#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace sl2avg {

enum class RepKind { principal_even, principal_odd, complementary, discrete_or_limit, trivial };

enum class KParity { even, odd, none };

// Parameter bundle for the irreducible unitary representations used here,
// labelled by z = -1 - conj(alpha): alpha = i*lambda on the principal series,
// alpha = s in (0,1) on the complementary series.
class RepParam {
  public:
    static RepParam principal_even(double lambda) {
        if (!std::isfinite(lambda)) throw std::invalid_argument("principal_even: lambda not finite");
        return RepParam(RepKind::principal_even, lambda, 0, 0);
    }
    static RepParam principal_odd(double lambda) {
        if (!std::isfinite(lambda) || lambda == 0.0)
            throw std::invalid_argument("principal_odd: lambda must be finite and nonzero");
        return RepParam(RepKind::principal_odd, lambda, 0, 0);
    }
    static RepParam complementary(double s) {
        if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("complementary: need 0 < s < 1");
        return RepParam(RepKind::complementary, s, 0, 0);
    }
    static RepParam discrete_or_limit(int k, int sign) {
        if (k < 1) throw std::invalid_argument("discrete_or_limit: need k >= 1");
        if (sign != 1 && sign != -1) throw std::invalid_argument("discrete_or_limit: sign must be +-1");
        return RepParam(RepKind::discrete_or_limit, 0.0, k, sign);
    }
    static RepParam trivial() { return RepParam(RepKind::trivial, 0.0, 0, 0); }

    RepKind kind() const { return kind_; }
    double lambda() const { return param_; }
    double s() const { return param_; }
    int k() const { return k_; }
    int sign() const { return sign_; }

    std::complex<double> alpha() const {
        switch (kind_) {
            case RepKind::principal_even:
            case RepKind::principal_odd: return {0.0, param_};
            case RepKind::complementary: return {param_, 0.0};
            default: return {0.0, 0.0};
        }
    }

    // decay exponent of the K-finite matrix coefficients
    double eps_tau() const {
        switch (kind_) {
            case RepKind::principal_even:
            case RepKind::principal_odd: return 1.0;
            case RepKind::complementary: return 1.0 - param_;
            case RepKind::discrete_or_limit: return 1.0;  // tempered; coefficients vanish anyway
            case RepKind::trivial: return 0.0;
        }
        return 0.0;
    }

    KParity parity() const {
        switch (kind_) {
            case RepKind::principal_even:
            case RepKind::complementary: return KParity::even;
            case RepKind::principal_odd: return KParity::odd;
            default: return KParity::none;
        }
    }

    // true when the whole Phi_{0,n} / Phi_{n,0} family is identically zero
    // (no K-invariant vector: discrete and limit-of-discrete series)
    bool coefficients_vanish() const { return kind_ == RepKind::discrete_or_limit; }

    std::string label() const {
        switch (kind_) {
            case RepKind::principal_even: return "principal_even(" + std::to_string(param_) + ")";
            case RepKind::principal_odd: return "principal_odd(" + std::to_string(param_) + ")";
            case RepKind::complementary: return "complementary(" + std::to_string(param_) + ")";
            case RepKind::discrete_or_limit:
                return "discrete(" + std::to_string(k_) + "," + (sign_ > 0 ? "+" : "-") + ")";
            case RepKind::trivial: return "trivial";
        }
        return "?";
    }

  private:
    RepParam(RepKind kind, double param, int k, int sign)
        : kind_(kind), param_(param), k_(k), sign_(sign) {}

    RepKind kind_;
    double param_;
    int k_;
    int sign_;
};

}  // namespace sl2avg
