#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sl2avg/group.hpp"

namespace sl2avg {

// Integer lattice element accumulated during reduction; det = 1.
struct IntMatrix {
    long long a = 1, b = 0, c = 0, d = 1;
    GroupElement to_group() const {
        return GroupElement{static_cast<double>(a), static_cast<double>(b),
                            static_cast<double>(c), static_cast<double>(d)};
    }
};

// Point of the quotient of SL(2,R) by the integer lattice, stored as the
// canonical representative: z = rep * i lies in the fundamental domain
// {|Re z| <= 1/2, |z| >= 1}, fiber angle theta in [0, pi) after folding
// by -identity.
struct ActionPoint {
    GroupElement rep{};
    double re_z = 0.0;
    double im_z = 1.0;
    double theta = 0.0;

    // the point of rep * k(phi): same z, fiber angle shifted; no reduction needed
    ActionPoint fiber_rotated(double phi) const;
};

struct ReduceResult {
    IntMatrix gamma;
    ActionPoint point;
};

// Gauss reduction: returns integer gamma with gamma * g canonical.
// Throws on non-termination (z numerically on the real axis) after 1e4 steps.
ReduceResult reduce(const GroupElement& g);

// Left action g * x, computed as the coset of rep * g^{-1}.
ActionPoint act(const GroupElement& g, const ActionPoint& x);

// Point-evaluable function on the quotient. k_support lists the fiber
// Fourier modes (all even) when the function is K-finite; p_sup is the
// supremum of p with finite L^p norm; known_mean carries the exact
// integral for library members.
struct Observable {
    std::function<std::complex<double>(const ActionPoint&)> eval;
    std::optional<std::vector<int>> k_support;
    double p_sup = std::numeric_limits<double>::infinity();
    std::optional<std::complex<double>> known_mean;
    std::string description;
};

struct SampleSet {
    std::vector<ActionPoint> points;
    std::uint64_t seed = 0;
};

// i.i.d. draws from the invariant probability measure: Re z = sin(phi) with
// phi uniform on (-pi/6, pi/6), Im z = sqrt(1 - Re^2 z)/u with u uniform on
// (0,1], theta uniform on [0, pi). Exact for d(area)/y^2 on the domain.
SampleSet sample(std::uint64_t seed, std::size_t count);

struct IntegrateResult {
    std::complex<double> mean{0.0, 0.0};
    double std_err = 0.0;
    std::size_t used = 0;
    std::size_t excluded = 0;
};

// Monte Carlo mean with standard error; non-finite evaluations are excluded
// and an exclusion rate above 0.1% aborts the run.
IntegrateResult integrate(const Observable& f, const SampleSet& s);

// K-character component: (1/2pi) integral of e^{-i n phi} f(k_phi^{-1} x)
// over the fiber, by uniform nodes (exact for trigonometric polynomials).
// Only even n is defined on this quotient.
Observable chi_project(int n, const Observable& f, int k_nodes);

struct KFiniteDecomposition {
    std::vector<std::pair<int, Observable>> components;
    double max_residual = 0.0;  // reconstruction error max over check points
    bool ok = true;             // max_residual <= 1e-7
};

// Splits a declared K-finite observable into its character components and
// verifies that they sum back to f at the supplied check points.
KFiniteDecomposition kfinite_decompose(const Observable& f, int n_max, const SampleSet& check,
                                       int k_nodes);

// Shipped observables with independently computed means.
Observable make_constant(std::complex<double> value = {1.0, 0.0});
Observable make_bump();                // C^2 compactly supported, K-invariant
Observable make_im_power(double a);    // (Im z)^a, a < 1
Observable make_k_twist(int n);        // bump(z) * e^{i n theta}, even n
Observable make_abs(const Observable& f);
const std::vector<std::pair<std::string, Observable>>& observable_library();

// (3/pi) * integral of h(Re z, Im z) over the fundamental domain against
// the invariant measure, by iterated Gauss-Legendre quadrature with the
// substitution u = v^2 taming the cusp direction. Deterministic oracle
// for the Monte Carlo integrator.
double measure_integral(const std::function<double(double, double)>& h, int nodes_phi = 96,
                        int nodes_u = 256);

// Two-sample Kolmogorov-Smirnov statistic (copies are sorted internally).
double ks_statistic(std::vector<double> xs, std::vector<double> ys);

}  // namespace sl2avg
