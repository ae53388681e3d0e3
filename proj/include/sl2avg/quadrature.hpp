#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace sl2avg {

struct QuadratureSpec {
    double rel_tol = 1e-8;
    long max_nodes = 1L << 20;
    double grading = 0.5;  // geometric panel ratio toward each peak, in (0,1)
};

enum class QuadStatus { converged, node_budget_exhausted };

struct QuadratureResult {
    std::complex<double> value{0.0, 0.0};
    double err_estimate = 0.0;
    long nodes_used = 0;
    QuadStatus status = QuadStatus::converged;
};

// Integrand sampled on the unit circle; cos/sin/e^{i theta} are supplied
// together so callers never recompute trig from a rounded theta.
using CircleIntegrand =
    std::function<std::complex<double>(double cos_theta, double sin_theta, std::complex<double> eitheta)>;

// Gauss-Legendre nodes and weights on [-1, 1] (cached per order).
struct GLRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GLRule& gauss_legendre(int order);

// (1/2pi) * integral of f over the circle, for integrands whose mass
// concentrates in windows of width ~peak_width around the four quarter
// points. Panels are geometrically graded toward each quarter point and
// parametrised by the offset from it, so node placement stays accurate
// when peak_width approaches machine precision times 2*pi.
QuadratureResult integrate_peaked_circle(const CircleIntegrand& f, double peak_width,
                                         const QuadratureSpec& spec = {});

// z^n for integer n with |z| == 1 (negative n uses the conjugate).
std::complex<double> unit_ipow(std::complex<double> z, long n);

}  // namespace sl2avg
