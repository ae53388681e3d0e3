#include "sl2avg/spherical.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace sl2avg {

namespace {

// true when (m, n) cannot carry a nonzero coefficient for this parity
bool parity_excludes(int m, int n, const RepParam& rep) {
    switch (rep.parity()) {
        case KParity::even: return (m & 1) != 0 || (n & 1) != 0;
        case KParity::odd: return (m & 1) == 0 || (n & 1) == 0;
        case KParity::none: return true;
    }
    return true;
}

void check_args(const RepParam& rep, double t, const char* who) {
    if (rep.kind() == RepKind::trivial)
        throw std::invalid_argument(std::string(who) + ": trivial representation not supported");
    if (!(std::abs(t) <= kMaxTime))
        throw std::domain_error(std::string(who) + ": |t| exceeds supported range");
}

// c_|k| / c_0 on the complementary series, k even
double comp_weight(int k, double s) {
    double p = 1.0;
    for (int j = 1; j < std::abs(k); j += 2) p *= (j + s) / (j - s);
    return p;
}

SphericalValue eval_coefficient(int m, int n, const RepParam& rep, double t,
                                const QuadratureSpec& q, bool derivative) {
    check_args(rep, t, derivative ? "phi_derivative" : "phi");
    SphericalValue out;
    if (rep.coefficients_vanish() || parity_excludes(m, n, rep)) {
        out.status = SphericalValue::Status::exact_zero;
        return out;
    }

    const std::complex<double> z = -1.0 + std::conj(rep.alpha());
    const double emt = std::exp(-t);
    const double ept = std::exp(t);
    const double weight = unit_normalization_ratio(m, n, rep);

    auto f = [&](double ct, double st, std::complex<double> eitheta) {
        const double A = emt * ct;
        const double B = ept * st;
        const double r2 = A * A + B * B;
        const double half_log = 0.5 * std::log(r2);
        const double mag = std::exp(z.real() * half_log);
        const double ph = z.imag() * half_log;
        std::complex<double> val = mag * std::complex<double>(std::cos(ph), std::sin(ph));
        if (m != 0) {
            const double r = std::sqrt(r2);
            val *= unit_ipow({A / r, B / r}, m);  // e^{i m beta(theta, t)}
        }
        if (n != 0) val *= unit_ipow(std::conj(eitheta), n);
        if (derivative)
            val *= (z * (B * B - A * A) + std::complex<double>(0.0, 2.0 * m * A * B)) / r2;
        return val;
    };

    const QuadratureResult qr = integrate_peaked_circle(f, std::exp(-2.0 * std::abs(t)), q);
    out.value = weight * qr.value;
    out.err_estimate = weight * qr.err_estimate;
    out.nodes_used = qr.nodes_used;
    out.status = qr.status == QuadStatus::converged ? SphericalValue::Status::converged
                                                    : SphericalValue::Status::node_budget_exhausted;
    return out;
}

}  // namespace

double unit_normalization_ratio(int m, int n, const RepParam& rep) {
    if (rep.kind() != RepKind::complementary) return 1.0;
    return std::sqrt(comp_weight(n, rep.s()) / comp_weight(m, rep.s()));
}

SphericalValue phi(int m, int n, const RepParam& rep, double t, const QuadratureSpec& q) {
    return eval_coefficient(m, n, rep, t, q, false);
}

SphericalValue phi_derivative(int m, int n, const RepParam& rep, double t,
                              const QuadratureSpec& q) {
    return eval_coefficient(m, n, rep, t, q, true);
}

double xi(double t, const QuadratureSpec& q) {
    return phi(0, 0, RepParam::principal_even(0.0), t, q).value.real();
}

double xi_agm(double t) {
    const double at = std::abs(t);
    if (!(at <= 350.0)) throw std::domain_error("xi_agm: |t| too large");
    double a = std::exp(-at);
    double b = std::exp(at);
    for (int i = 0; i < 64 && std::abs(a - b) > 4e-17 * b; ++i) {
        const double g = std::sqrt(a * b);
        b = 0.5 * (a + b);
        a = g;
    }
    return 2.0 / (a + b);
}

double decay_bound(const RepParam& rep, double t, double B) {
    if (rep.kind() == RepKind::trivial)
        throw std::invalid_argument("decay_bound: trivial representation has no decay");
    if (!(B > 0.0)) throw std::invalid_argument("decay_bound: B must be positive");
    const double at = std::abs(t);
    return B * (1.0 + at) * std::exp(-rep.eps_tau() * at);
}

double symmetry_check(int m, int n, const RepParam& rep, double t, const QuadratureSpec& q) {
    const SphericalValue lhs = phi(n, m, rep, t, q);
    const SphericalValue rhs = phi(m, n, rep, -t, q);
    return std::abs(lhs.value - std::conj(rhs.value));
}

double zonal_bound(const RepParam& rep, double t, const QuadratureSpec& q) {
    const RepKind k = rep.kind();
    if (k != RepKind::principal_even && k != RepKind::principal_odd &&
        k != RepKind::complementary)
        throw std::invalid_argument("zonal_bound: rep must be principal or complementary");
    if (!(std::abs(t) <= kMaxTime)) throw std::domain_error("zonal_bound: |t| out of range");

    const double zre = -1.0 + rep.alpha().real();
    const double emt = std::exp(-t);
    const double ept = std::exp(t);
    auto f = [&](double ct, double st, std::complex<double>) {
        const double A = emt * ct;
        const double B = ept * st;
        return std::complex<double>(std::pow(A * A + B * B, 0.5 * zre), 0.0);
    };
    return integrate_peaked_circle(f, std::exp(-2.0 * std::abs(t)), q).value.real();
}

}  // namespace sl2avg
