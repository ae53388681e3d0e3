#include "sl2avg/action.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "sl2avg/quadrature.hpp"

namespace sl2avg {

namespace {

constexpr long long kGammaLimit = 3000000000000000000LL;

// flips the representative sign so its fiber angle equals theta in [0, pi)
GroupElement match_sign(GroupElement h, double theta) {
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    // bottom row of n(x) a(u) k(theta) is e^{-u} (sin theta, cos theta)
    if (h.c * st + h.d * ct < 0.0) {
        h.a = -h.a; h.b = -h.b; h.c = -h.c; h.d = -h.d;
    }
    return h;
}

ActionPoint make_point(const GroupElement& h) {
    ActionPoint p;
    const double q2 = h.c * h.c + h.d * h.d;
    p.re_z = (h.a * h.c + h.b * h.d) / q2;
    p.im_z = 1.0 / q2;
    double th = std::atan2(h.c, h.d);
    if (th < 0.0) th += M_PI;
    if (th >= M_PI) th -= M_PI;
    p.theta = th;
    p.rep = match_sign(h, th);
    return p;
}

// shared bump profile: psi(u) = (1 - u^2)^3 on |u| < 1, C^2 at the edge
double psi(double u) {
    const double w = 1.0 - u * u;
    return w > 0.0 ? w * w * w : 0.0;
}

double bump_height(double x, double y) {
    return psi(x / 0.4) * psi(std::log(y / 1.5) / 0.35);
}

}  // namespace

ActionPoint ActionPoint::fiber_rotated(double phi) const {
    ActionPoint out;
    out.re_z = re_z;
    out.im_z = im_z;
    double th = std::fmod(theta + phi, M_PI);
    if (th < 0.0) th += M_PI;
    out.theta = th;
    out.rep = match_sign(compose(rep, rotation(phi)), th);
    return out;
}

ReduceResult reduce(const GroupElement& g) {
    if (!g.finite()) throw std::domain_error("reduce: entries not finite");
    GroupElement cur = g;
    IntMatrix gam;
    for (int iter = 0;; ++iter) {
        if (iter >= 10000)
            throw std::runtime_error("reduce: no convergence, z numerically degenerate");
        const double q2 = cur.c * cur.c + cur.d * cur.d;
        if (!(q2 > 0.0) || !std::isfinite(q2))
            throw std::runtime_error("reduce: degenerate bottom row");
        const double x = (cur.a * cur.c + cur.b * cur.d) / q2;
        const double k = std::floor(x + 0.5);
        if (k != 0.0) {
            if (std::abs(k) > 8.9e18)
                throw std::overflow_error("reduce: translation exceeds integer range");
            const long long ki = std::llround(k);
            cur.a -= k * cur.c;
            cur.b -= k * cur.d;
            gam.a -= ki * gam.c;
            gam.b -= ki * gam.d;
            if (std::abs(gam.a) > kGammaLimit || std::abs(gam.b) > kGammaLimit)
                throw std::overflow_error("reduce: lattice word exceeds integer range");
        }
        const double xr = (cur.a * cur.c + cur.b * cur.d) / q2;
        const double y = 1.0 / q2;
        const double r2 = xr * xr + y * y;
        if (r2 < 1.0 - 1e-14 || (r2 <= 1.0 + 1e-14 && xr > 1e-14)) {
            // invert: left-multiply by [[0,-1],[1,0]]
            cur = GroupElement{-cur.c, -cur.d, cur.a, cur.b};
            gam = IntMatrix{-gam.c, -gam.d, gam.a, gam.b};
        } else {
            break;
        }
    }
    // row operations preserve the determinant exactly; renormalize residual drift
    const double det = cur.det();
    if (std::abs(det - 1.0) > 1e-12) {
        const double s = 1.0 / std::sqrt(det);
        cur.a *= s; cur.b *= s; cur.c *= s; cur.d *= s;
    }
    ReduceResult out{gam, make_point(cur)};
    // keep gamma consistent with the sign fold applied by make_point
    if (entry_distance(out.point.rep, cur) > entry_distance(out.point.rep, GroupElement{-cur.a, -cur.b, -cur.c, -cur.d})) {
        out.gamma = IntMatrix{-gam.a, -gam.b, -gam.c, -gam.d};
    }
    return out;
}

ActionPoint act(const GroupElement& g, const ActionPoint& x) {
    return reduce(compose(x.rep, g.inverse())).point;
}

SampleSet sample(std::uint64_t seed, std::size_t count) {
    if (count < 1) throw std::invalid_argument("sample: count must be >= 1");
    std::mt19937_64 rng(seed);
    // fixed uniform construction keeps streams identical across platforms
    auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    SampleSet out;
    out.seed = seed;
    out.points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double phi = (M_PI / 3.0) * (u01() - 0.5);
        const double x = std::sin(phi);
        const double u = 1.0 - u01();  // (0, 1]
        const double y = std::sqrt(1.0 - x * x) / u;
        const double theta = M_PI * u01();
        const GroupElement rep = match_sign(
            compose(compose(upper_unipotent(x), geodesic(0.5 * std::log(y))), rotation(theta)),
            theta);
        ActionPoint p;
        p.rep = rep;
        p.re_z = x;
        p.im_z = y;
        p.theta = theta;
        out.points.push_back(p);
    }
    return out;
}

IntegrateResult integrate(const Observable& f, const SampleSet& s) {
    if (s.points.empty()) throw std::invalid_argument("integrate: empty sample set");
    IntegrateResult r;
    std::complex<double> sum{0.0, 0.0};
    double sum_sq = 0.0;
    for (const ActionPoint& p : s.points) {
        const std::complex<double> v = f.eval(p);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            ++r.excluded;
            continue;
        }
        sum += v;
        sum_sq += std::norm(v);
    }
    r.used = s.points.size() - r.excluded;
    if (r.excluded * 1000 > s.points.size())
        throw std::runtime_error("integrate: exclusion rate above 0.1%");
    if (r.used == 0) throw std::runtime_error("integrate: no usable evaluations");
    r.mean = sum / static_cast<double>(r.used);
    if (r.used > 1) {
        const double var =
            std::max(0.0, (sum_sq - std::norm(sum) / static_cast<double>(r.used)) /
                              static_cast<double>(r.used - 1));
        r.std_err = std::sqrt(var / static_cast<double>(r.used));
    }
    return r;
}

Observable chi_project(int n, const Observable& f, int k_nodes) {
    if (n & 1)
        throw std::invalid_argument("chi_project: odd characters are not defined on this quotient");
    if (k_nodes < 64) throw std::invalid_argument("chi_project: need k_nodes >= 64");
    Observable out;
    auto inner = f.eval;
    out.eval = [n, k_nodes, inner](const ActionPoint& x) {
        std::complex<double> acc{0.0, 0.0};
        for (int j = 0; j < k_nodes; ++j) {
            const double phi = M_PI * j / k_nodes;
            const std::complex<double> w{std::cos(n * phi), -std::sin(n * phi)};
            acc += w * inner(x.fiber_rotated(phi));
        }
        return acc / static_cast<double>(k_nodes);
    };
    out.k_support = std::vector<int>{n};
    out.p_sup = f.p_sup;
    if (n != 0)
        out.known_mean = std::complex<double>{0.0, 0.0};
    else
        out.known_mean = f.known_mean;
    out.description = "chi_" + std::to_string(n) + "(" + f.description + ")";
    return out;
}

KFiniteDecomposition kfinite_decompose(const Observable& f, int n_max, const SampleSet& check,
                                       int k_nodes) {
    if (!f.k_support)
        throw std::invalid_argument("kfinite_decompose: observable must declare k_support");
    for (int n : *f.k_support)
        if (std::abs(n) > n_max)
            throw std::invalid_argument("kfinite_decompose: declared mode beyond n_max");
    KFiniteDecomposition out;
    for (int n : *f.k_support) out.components.emplace_back(n, chi_project(n, f, k_nodes));
    for (const ActionPoint& p : check.points) {
        std::complex<double> rec{0.0, 0.0};
        for (const auto& [n, comp] : out.components) rec += comp.eval(p);
        out.max_residual = std::max(out.max_residual, std::abs(rec - f.eval(p)));
    }
    out.ok = out.max_residual <= 1e-7;
    return out;
}

Observable make_constant(std::complex<double> value) {
    Observable f;
    f.eval = [value](const ActionPoint&) { return value; };
    f.k_support = std::vector<int>{0};
    f.known_mean = value;
    f.description = "const";
    return f;
}

Observable make_bump() {
    Observable f;
    f.eval = [](const ActionPoint& p) {
        return std::complex<double>(bump_height(p.re_z, p.im_z), 0.0);
    };
    f.k_support = std::vector<int>{0};
    // deterministic quadrature oracle value, pinned by tests
    f.known_mean = std::complex<double>(0.07501114862748829, 0.0);
    f.description = "bump";
    return f;
}

Observable make_im_power(double a) {
    if (!(a < 1.0)) throw std::invalid_argument("make_im_power: need a < 1 for integrability");
    Observable f;
    f.eval = [a](const ActionPoint& p) { return std::complex<double>(std::pow(p.im_z, a), 0.0); };
    f.k_support = std::vector<int>{0};
    f.p_sup = a > 0.0 ? 1.0 / a : std::numeric_limits<double>::infinity();
    if (a == 0.5) f.known_mean = std::complex<double>(1.9539736305740955, 0.0);
    if (a == 0.3) f.known_mean = std::complex<double>(1.4086780375158597, 0.0);
    if (a == -1.0) f.known_mean = std::complex<double>(3.0 * std::log(3.0) / (2.0 * M_PI), 0.0);
    f.description = "im_power_" + std::to_string(a);
    return f;
}

Observable make_k_twist(int n) {
    if (n & 1) throw std::invalid_argument("make_k_twist: n must be even");
    Observable f;
    f.eval = [n](const ActionPoint& p) {
        const double h = bump_height(p.re_z, p.im_z);
        return h * std::complex<double>(std::cos(n * p.theta), std::sin(n * p.theta));
    };
    f.k_support = std::vector<int>{n};
    f.known_mean = std::complex<double>{0.0, 0.0};
    if (n == 0) f.known_mean = make_bump().known_mean;
    f.description = "k_twist_" + std::to_string(n);
    return f;
}

Observable make_abs(const Observable& f) {
    Observable out;
    auto inner = f.eval;
    out.eval = [inner](const ActionPoint& p) {
        return std::complex<double>(std::abs(inner(p)), 0.0);
    };
    out.p_sup = f.p_sup;
    out.description = "abs(" + f.description + ")";
    return out;
}

const std::vector<std::pair<std::string, Observable>>& observable_library() {
    static const std::vector<std::pair<std::string, Observable>> lib = {
        {"const", make_constant()},
        {"bump", make_bump()},
        {"im_power_half", make_im_power(0.5)},
        {"im_power_03", make_im_power(0.3)},
        {"inv_im", make_im_power(-1.0)},
        {"k_twist_2", make_k_twist(2)},
    };
    return lib;
}

double measure_integral(const std::function<double(double, double)>& h, int nodes_phi,
                        int nodes_u) {
    const GLRule& gp = gauss_legendre(std::min(nodes_phi, 64));
    const GLRule& gu = gauss_legendre(std::min(nodes_u, 64));
    const int rep_phi = std::max(1, nodes_phi / 64);
    const int rep_u = std::max(1, nodes_u / 64);
    // x = sin(phi), y = sqrt(1-x^2)/u, u = v^2: d(mu) = (3/pi) dphi du
    double total = 0.0;
    for (int bp = 0; bp < rep_phi; ++bp) {
        const double plo = -M_PI / 6.0 + (M_PI / 3.0) * bp / rep_phi;
        const double phl = (M_PI / 3.0) / rep_phi;
        for (std::size_t i = 0; i < gp.nodes.size(); ++i) {
            const double phi = plo + 0.5 * phl * (1.0 + gp.nodes[i]);
            const double x = std::sin(phi);
            const double c = std::cos(phi);
            double inner = 0.0;
            for (int bu = 0; bu < rep_u; ++bu) {
                const double vlo = static_cast<double>(bu) / rep_u;
                const double vl = 1.0 / rep_u;
                for (std::size_t j = 0; j < gu.nodes.size(); ++j) {
                    const double v = vlo + 0.5 * vl * (1.0 + gu.nodes[j]);
                    const double y = c / (v * v);
                    inner += 0.5 * vl * gu.weights[j] * 2.0 * v * h(x, y);
                }
            }
            total += 0.5 * phl * gp.weights[i] * inner;
        }
    }
    return total * 3.0 / M_PI;
}

double ks_statistic(std::vector<double> xs, std::vector<double> ys) {
    if (xs.empty() || ys.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < xs.size() && j < ys.size()) {
        // compare the CDFs only after absorbing a full tie class on both sides
        const double v = std::min(xs[i], ys[j]);
        while (i < xs.size() && xs[i] == v) ++i;
        while (j < ys.size() && ys[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / xs.size() -
                                 static_cast<double>(j) / ys.size()));
    }
    return d;
}

}  // namespace sl2avg
