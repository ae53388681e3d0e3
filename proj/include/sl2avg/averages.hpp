#pragma once

#include <complex>
#include <string>
#include <vector>

#include "sl2avg/action.hpp"

namespace sl2avg {

// Nonnegative compactly supported profile with unit integral, stored as
// contiguous polynomial pieces (coefficients in powers of u - piece.lo).
class BumpFunction {
  public:
    struct Piece {
        double lo;
        double hi;
        std::vector<double> coeffs;
    };

    explicit BumpFunction(std::vector<Piece> pieces);

    double value(double u) const;
    double lo() const { return pieces_.front().lo; }
    double hi() const { return pieces_.back().hi; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    const std::string& describe() const { return description_; }

    BumpFunction reversed() const;  // u -> value(-u)

    // centered C^2 piecewise-cubic profile on [-1/2, 1/2]
    static BumpFunction cubic_default();
    // indicator of [lo, hi], normalized
    static BumpFunction box(double lo, double hi);

  private:
    std::vector<Piece> pieces_;
    std::string description_;
};

struct TimeGrid {
    std::vector<double> values;
    std::string description;

    TimeGrid(std::vector<double> v, std::string desc);
    static TimeGrid uniform(double lo, double hi, double step, std::string desc = "");
};

// (pi(sigma_t) f)(x): radial average with Haar-uniform rotations on both
// sides; the trailing rotation collapses analytically for declared K-types.
std::complex<double> sigma_apply(double t, const Observable& f, const ActionPoint& x,
                                 int k_nodes = 256);

// (pi(sigma_t(n,m)) f)(x): character-weighted variant; n, m even.
std::complex<double> sigma_nm_apply(double t, int n, int m, const Observable& f,
                                    const ActionPoint& x, int k_nodes = 256);

// (pi(gamma^eta_t(n,m)) f)(x) = integral of eta(t-s) (pi(sigma_s(n,m)) f)(x) ds
std::complex<double> gamma_eta_apply(double t, int n, int m, const Observable& f,
                                     const ActionPoint& x, const BumpFunction& eta,
                                     int s_nodes = 64, int k_nodes = 256);

// M^eta_t f(x) = integral of eta(t-s) * (average of f over a_s k x) ds:
// one-sided rotation average, then the profile average in s.
std::complex<double> semi_radial_apply(double t, const Observable& f, const ActionPoint& x,
                                       const BumpFunction& eta, int s_nodes = 64,
                                       int k_nodes = 256);

// max over the grid of |gamma_eta_apply|
double maximal_function(const Observable& f, const ActionPoint& x, const TimeGrid& grid,
                        const BumpFunction& eta, int s_nodes = 64, int k_nodes = 256, int n = 0,
                        int m = 0);

struct ConvergenceReport {
    std::vector<double> t;
    std::vector<std::vector<std::complex<double>>> values;  // [t index][point index]
    std::complex<double> limit{0.0, 0.0};
    std::vector<double> max_dev;
    std::vector<double> rms_dev;
};

// Tabulates M^eta_t f over the sample at each grid time against the exact
// limit: the declared mean, zero for twisted K-types, or the Monte Carlo
// mean as a fallback. k_nodes_per_t overrides the rotation-node count per
// grid entry when nonempty (the sampling floor of the rotation quadrature
// scales like 1/sqrt(nodes), so large t needs more).
ConvergenceReport convergence_study(const Observable& f, const SampleSet& s,
                                    const TimeGrid& grid, const BumpFunction& eta,
                                    int s_nodes = 64, int k_nodes = 256,
                                    const std::vector<int>& k_nodes_per_t = {});

}  // namespace sl2avg
