#include "sl2avg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace sl2avg {

namespace {

GLRule make_gauss_legendre(int order) {
    GLRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[order - 1 - i] = x;
        rule.weights[order - 1 - i] = w;
    }
    return rule;
}

constexpr int kPanelOrder = 12;

}  // namespace

const GLRule& gauss_legendre(int order) {
    if (order < 1 || order > 64) throw std::invalid_argument("gauss_legendre: order out of range");
    static std::mutex mtx;
    static std::map<int, GLRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, make_gauss_legendre(order)).first;
    return it->second;
}

std::complex<double> unit_ipow(std::complex<double> z, long n) {
    if (n < 0) {
        z = std::conj(z);
        n = -n;
    }
    std::complex<double> acc{1.0, 0.0};
    while (n > 0) {
        if (n & 1) acc *= z;
        z *= z;
        n >>= 1;
    }
    return acc;
}

QuadratureResult integrate_peaked_circle(const CircleIntegrand& f, double peak_width,
                                         const QuadratureSpec& spec) {
    if (!(spec.rel_tol > 0.0) || spec.max_nodes < 1 || !(spec.grading > 0.0 && spec.grading < 1.0))
        throw std::invalid_argument("integrate_peaked_circle: bad spec");
    if (!(peak_width > 0.0)) throw std::invalid_argument("integrate_peaked_circle: bad peak_width");

    const GLRule& gl = gauss_legendre(kPanelOrder);
    const double octant = M_PI / 4.0;

    // graded breakpoints measured from a quarter point outward
    std::vector<double> bp{0.0};
    double w = std::clamp(peak_width, 1e-13, octant);
    double pos = 0.0;
    while (pos + w < octant) {
        pos += w;
        bp.push_back(pos);
        w /= spec.grading;
    }
    bp.push_back(octant);
    const long n_panels = 8L * static_cast<long>(bp.size() - 1);

    // quarter-point anchors with exact trig; theta = q*pi/2 + dir*phi keeps
    // the distance to the peak exact instead of inheriting fl(pi) rounding
    static const double anchor_cos[4] = {1.0, 0.0, -1.0, 0.0};
    static const double anchor_sin[4] = {0.0, 1.0, 0.0, -1.0};

    auto eval_level = [&](int lev) {
        std::complex<double> total{0.0, 0.0};
        const long nsub = 1L << lev;
        for (int q = 0; q < 4; ++q) {
            const double cq = anchor_cos[q];
            const double sq = anchor_sin[q];
            for (int dir = -1; dir <= 1; dir += 2) {
                std::complex<double> side{0.0, 0.0};
                for (std::size_t j = 0; j + 1 < bp.size(); ++j) {
                    const double h = (bp[j + 1] - bp[j]) / static_cast<double>(nsub);
                    for (long sub = 0; sub < nsub; ++sub) {
                        const double lo = bp[j] + h * static_cast<double>(sub);
                        const double mid = lo + 0.5 * h;
                        std::complex<double> acc{0.0, 0.0};
                        for (int i = 0; i < kPanelOrder; ++i) {
                            const double phi = mid + 0.5 * h * gl.nodes[i];
                            const double cp = std::cos(phi);
                            const double sp = dir * std::sin(phi);
                            const double ct = cq * cp - sq * sp;
                            const double st = sq * cp + cq * sp;
                            acc += gl.weights[i] * f(ct, st, {ct, st});
                        }
                        side += 0.5 * h * acc;
                    }
                }
                total += side;
            }
        }
        return total / (2.0 * M_PI);
    };

    QuadratureResult res;
    std::complex<double> prev{0.0, 0.0};
    int levels_done = 0;
    for (int lev = 0;; ++lev) {
        const long cost = n_panels * (1L << lev) * kPanelOrder;
        if (levels_done >= 2 && (res.nodes_used + cost > spec.max_nodes || lev > 24)) {
            res.status = QuadStatus::node_budget_exhausted;
            break;
        }
        const std::complex<double> cur = eval_level(lev);
        res.nodes_used += cost;
        res.value = cur;
        if (levels_done >= 1) {
            res.err_estimate = std::abs(cur - prev);
            const double scale = std::max(std::abs(cur), 1e-14);
            if (res.err_estimate <= spec.rel_tol * scale) {
                res.status = QuadStatus::converged;
                break;
            }
            if (res.nodes_used >= spec.max_nodes) {
                res.status = QuadStatus::node_budget_exhausted;
                break;
            }
        }
        prev = cur;
        ++levels_done;
    }
    return res;
}

}  // namespace sl2avg
