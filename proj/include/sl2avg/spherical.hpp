#pragma once

#include <complex>

#include "sl2avg/quadrature.hpp"
#include "sl2avg/representation.hpp"

namespace sl2avg {

struct SphericalValue {
    std::complex<double> value{0.0, 0.0};
    double err_estimate = 0.0;
    long nodes_used = 0;
    enum class Status { converged, node_budget_exhausted, exact_zero } status = Status::converged;
};

inline constexpr double kMaxTime = 12.0;

// Matrix coefficient Phi_{m,n}(a_t) = <pi(a_t) e_n, e_m> between unit
// K-isotypic vectors, in the circle realization. Identically zero for the
// discrete and limit-of-discrete series and whenever m or n misses the
// K-parity carried by the representation; those cases skip quadrature.
SphericalValue phi(int m, int n, const RepParam& rep, double t, const QuadratureSpec& q = {});

// d/dt Phi_{m,n}(a_t)
SphericalValue phi_derivative(int m, int n, const RepParam& rep, double t,
                              const QuadratureSpec& q = {});

// Harish-Chandra function Xi(t) = Phi_{0,0}(a_t) at the spherical tempered point
double xi(double t, const QuadratureSpec& q = {});

// Xi(t) = 1 / agm(e^-t, e^t): independent closed form via the
// arithmetic-geometric mean, no quadrature
double xi_agm(double t);

// Envelope B * (1 + |t|) * e^{-eps_tau |t|} controlling coefficient decay
double decay_bound(const RepParam& rep, double t, double B);

// |Phi_{n,m}(a_t) - conj(Phi_{m,n}(a_{-t}))|: zero in exact arithmetic
double symmetry_check(int m, int n, const RepParam& rep, double t, const QuadratureSpec& q = {});

// (1/2pi) integral of r^{Re z} over the circle: dominates |Phi_{m,n}(a_t)|
// for every m, n since the remaining factors are unimodular
double zonal_bound(const RepParam& rep, double t, const QuadratureSpec& q = {});

// sqrt(c_n / c_m): ratio of isotypic normalisation constants; 1 except on
// the complementary series where c_{k+2}/c_k = (k+1+s)/(k+1-s)
double unit_normalization_ratio(int m, int n, const RepParam& rep);

}  // namespace sl2avg
