#include "sl2avg/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sl2avg/quadrature.hpp"

namespace sl2avg {

namespace {

bool parity_admits(KParity p, int k) {
    if (p == KParity::even) return (k & 1) == 0;
    if (p == KParity::odd) return (k & 1) != 0;
    return false;
}

void require_circle_model(const RepParam& rep, const char* who) {
    const RepKind k = rep.kind();
    if (k != RepKind::principal_even && k != RepKind::principal_odd &&
        k != RepKind::complementary)
        throw std::invalid_argument(std::string(who) + ": representation has no circle model here");
}

}  // namespace

CircleModelVector::CircleModelVector(KParity parity, int truncation)
    : parity_(parity), truncation_(truncation) {
    if (parity == KParity::none)
        throw std::invalid_argument("CircleModelVector: parity must be even or odd");
    if (truncation < 0 || truncation > kMaxTruncation)
        throw std::invalid_argument("CircleModelVector: truncation out of range");
}

void CircleModelVector::set(int k, std::complex<double> amplitude) {
    if (amplitude == std::complex<double>(0.0, 0.0)) {
        coeffs_.erase(k);
        return;
    }
    if (std::abs(k) > truncation_)
        throw std::invalid_argument("CircleModelVector::set: mode beyond truncation");
    if (!parity_admits(parity_, k))
        throw std::invalid_argument("CircleModelVector::set: mode violates declared parity");
    coeffs_[k] = amplitude;
}

std::complex<double> CircleModelVector::get(int k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? std::complex<double>(0.0, 0.0) : it->second;
}

double CircleModelVector::norm() const {
    double s = 0.0;
    for (const auto& [k, c] : coeffs_) s += std::norm(c);
    return std::sqrt(s);
}

bool CircleModelVector::is_zero(double tol) const {
    for (const auto& [k, c] : coeffs_)
        if (std::abs(c) > tol) return false;
    return true;
}

CircleModelVector apply_sigma_model(const RepParam& rep, double t, int n, int m,
                                    const CircleModelVector& v, const QuadratureSpec& q) {
    CircleModelVector out(v.parity(), v.truncation());
    const std::complex<double> cm = v.get(m);
    if (cm == std::complex<double>(0.0, 0.0)) return out;
    if (std::abs(n) > v.truncation() || !parity_admits(v.parity(), n)) return out;
    const SphericalValue ph = phi(m, n, rep, t, q);
    out.set(n, cm * ph.value);
    return out;
}

DirectImage apply_at_direct(const RepParam& rep, double t, const CircleModelVector& v, int nodes) {
    require_circle_model(rep, "apply_at_direct");
    if (!(std::abs(t) <= kMaxTime)) throw std::domain_error("apply_at_direct: |t| out of range");
    if (nodes < 8 || nodes < 8 * v.truncation())
        throw std::invalid_argument("apply_at_direct: need nodes >= 8 * truncation");

    const std::complex<double> z = -1.0 + std::conj(rep.alpha());
    const double emt = std::exp(-t);
    const double ept = std::exp(t);
    const int trunc = v.truncation();

    // transported samples G_j = r^z * F(beta) at theta_j = 2 pi j / N
    std::vector<std::complex<double>> g(nodes);
    double total_mass = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const double theta = 2.0 * M_PI * j / nodes;
        const double ct = std::cos(theta);
        const double st = std::sin(theta);
        const double A = emt * ct;
        const double B = ept * st;
        const double r2 = A * A + B * B;
        const double r = std::sqrt(r2);
        const std::complex<double> eib{A / r, B / r};
        std::complex<double> F{0.0, 0.0};
        for (const auto& [k, c] : v.coeffs()) F += c * unit_ipow(eib, k);
        const double half_log = 0.5 * std::log(r2);
        const double ph = z.imag() * half_log;
        g[j] = std::exp(z.real() * half_log) *
               std::complex<double>(std::cos(ph), std::sin(ph)) * F;
        total_mass += std::norm(g[j]);
    }
    total_mass /= nodes;

    // discrete Fourier projection onto the retained parity modes
    const int lo = -trunc;
    std::vector<std::complex<double>> proj(2 * trunc + 1, {0.0, 0.0});
    for (int j = 0; j < nodes; ++j) {
        const double theta = 2.0 * M_PI * j / nodes;
        const std::complex<double> w{std::cos(theta), -std::sin(theta)};  // e^{-i theta_j}
        const std::complex<double> w2 = w * w;
        std::complex<double> p = unit_ipow(w, lo);
        for (int k = lo; k <= trunc; k += 2, p *= w2)
            if (parity_admits(v.parity(), k)) proj[k - lo] += g[j] * p;
    }

    DirectImage out{CircleModelVector(v.parity(), trunc), 0.0};
    double captured = 0.0;
    for (int k = lo; k <= trunc; ++k) {
        if (!parity_admits(v.parity(), k)) continue;
        const std::complex<double> d = proj[k - lo] / static_cast<double>(nodes);
        captured += std::norm(d);
        out.image.set(k, d);
    }
    const double leak = std::sqrt(std::max(0.0, total_mass - captured));
    out.tail_ratio = total_mass > 0.0 ? leak / std::sqrt(total_mass) : 0.0;
    return out;
}

double derivative_multiplier_check(const RepParam& rep, double t, int n, int m,
                                   const CircleModelVector& v, double h,
                                   const QuadratureSpec& q) {
    if (!(h > 0.0)) throw std::invalid_argument("derivative_multiplier_check: h must be positive");
    const std::complex<double> cm = v.get(m);
    if (cm == std::complex<double>(0.0, 0.0)) return 0.0;
    const double amp = std::abs(cm);
    const double lhs = amp * std::abs(phi_derivative(m, n, rep, t, q).value);
    const std::complex<double> hi = phi(m, n, rep, t + h, q).value;
    const std::complex<double> lo = phi(m, n, rep, t - h, q).value;
    const double rhs = amp * std::abs(hi - lo) / (2.0 * h);
    return std::abs(lhs - rhs);
}

bool in_sigma_eps(const RepParam& rep, const SpectralSetParams& p) {
    if (!(p.eps > 0.0 && p.eps < 1.0)) throw std::invalid_argument("in_sigma_eps: eps in (0,1)");
    if (!(p.B > 0.0)) throw std::invalid_argument("in_sigma_eps: B must be positive");
    const double c_tau = p.B * (1.0 + std::abs(rep.alpha()));
    return rep.eps_tau() > p.eps && c_tau < 1.0 / p.eps;
}

TailBound tail_bound(double N, double eps, double delta, double f_norm) {
    if (!(N >= 0.0)) throw std::invalid_argument("tail_bound: N must be >= 0");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("tail_bound: eps in (0,1)");
    if (!(delta > 0.0)) throw std::invalid_argument("tail_bound: delta must be positive");
    if (!(f_norm >= 0.0)) throw std::invalid_argument("tail_bound: f_norm must be >= 0");
    const double e = std::exp(-eps * N);
    TailBound tb;
    tb.exact = (1.0 / delta) * (1.0 / eps) * e * ((1.0 + N) / eps + 1.0 / (eps * eps)) * f_norm;
    tb.paper_bound = (1.0 / delta) * (1.0 / (eps * eps * eps)) * (1.0 + N) * e * f_norm;
    return tb;
}

}  // namespace sl2avg
