#pragma once

#include <complex>
#include <map>

#include "sl2avg/representation.hpp"
#include "sl2avg/spherical.hpp"

namespace sl2avg {

// K-finite vector in the circle model, stored by Fourier mode. Only modes
// of the declared parity may be nonzero; |k| is capped by truncation.
class CircleModelVector {
  public:
    CircleModelVector(KParity parity, int truncation);

    void set(int k, std::complex<double> amplitude);
    std::complex<double> get(int k) const;
    const std::map<int, std::complex<double>>& coeffs() const { return coeffs_; }

    KParity parity() const { return parity_; }
    int truncation() const { return truncation_; }
    double norm() const;
    bool is_zero(double tol = 0.0) const;

    static constexpr int kMaxTruncation = 512;

  private:
    std::map<int, std::complex<double>> coeffs_;
    KParity parity_;
    int truncation_;
};

struct SpectralSetParams {
    double eps;  // in (0, 1)
    double B;    // > 0
};

struct TailBound {
    double exact;
    double paper_bound;
};

struct DirectImage {
    CircleModelVector image;
    double tail_ratio;  // mass beyond the truncation relative to the image norm
};

// v  ->  <v, e_m> * Phi_{m,n}(a_t) * e_n : the exact action of the
// character-radial measure on the model; at most one nonzero mode.
CircleModelVector apply_sigma_model(const RepParam& rep, double t, int n, int m,
                                    const CircleModelVector& v, const QuadratureSpec& q = {});

// Applies the radial flow by brute force: evaluate the model function on a
// uniform circle grid, transport with the homogeneity weight, re-project
// onto Fourier modes. Independent oracle: <image(e_m), e_n> recovers the
// bare circle integral behind phi. Requires nodes >= 8 * truncation.
DirectImage apply_at_direct(const RepParam& rep, double t, const CircleModelVector& v, int nodes);

// | ||d/dt sigma_t(n,m) v|| - finite difference of ||sigma_t(n,m) v|| |,
// comparing the derivative multiplier against a centered difference
double derivative_multiplier_check(const RepParam& rep, double t, int n, int m,
                                   const CircleModelVector& v, double h = 1e-4,
                                   const QuadratureSpec& q = {});

// eps_tau > eps  and  B(1 + |alpha|) < 1/eps
bool in_sigma_eps(const RepParam& rep, const SpectralSetParams& p);

// exact  = (1/delta)(1/eps) e^{-eps N} ((1+N)/eps + 1/eps^2) f_norm
//        = (1/delta) integral_N^inf (1/eps)(1+u) e^{-eps u} du * f_norm
// paper_bound = (1/delta)(1/eps^3)(1+N) e^{-eps N} f_norm
TailBound tail_bound(double N, double eps, double delta, double f_norm);

}  // namespace sl2avg
