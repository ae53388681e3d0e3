#include "sl2avg/averages.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sl2avg/parallel.hpp"
#include "sl2avg/quadrature.hpp"
#include "sl2avg/spherical.hpp"

namespace sl2avg {

namespace {

double poly_eval(const std::vector<double>& c, double u) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * u + *it;
    return v;
}

// integral of the piece polynomial over its interval
double piece_integral(const BumpFunction::Piece& p) {
    const double len = p.hi - p.lo;
    double acc = 0.0;
    double pw = len;
    for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
        acc += p.coeffs[k] * pw / static_cast<double>(k + 1);
        pw *= len;
    }
    return acc;
}

void check_radial_range(double t, const char* who) {
    if (!(std::abs(t) <= kMaxTime))
        throw std::domain_error(std::string(who) + ": radial parameter out of range");
}

// m-th fiber Fourier component of f at p. Exact for declared K-types;
// otherwise a uniform-node quadrature with k_nodes points on [0, pi).
std::complex<double> fiber_component(const Observable& f, const ActionPoint& p, int m,
                                     int k_nodes) {
    if (f.k_support) {
        const auto& F = *f.k_support;
        if (std::find(F.begin(), F.end(), m) == F.end()) return {0.0, 0.0};
        if (F.size() == 1) return f.eval(p);
        int max_abs = 0;
        for (int n : F) max_abs = std::max(max_abs, std::abs(n));
        k_nodes = std::max(8, (max_abs + std::abs(m)) / 2 + 2);
    }
    std::complex<double> acc{0.0, 0.0};
    for (int j = 0; j < k_nodes; ++j) {
        const double phi = M_PI * j / k_nodes;
        const std::complex<double> w{std::cos(m * phi), -std::sin(m * phi)};
        acc += w * f.eval(p.fiber_rotated(phi));
    }
    return acc / static_cast<double>(k_nodes);
}

// per-piece Gauss orders distributing s_nodes proportionally to length
std::vector<int> piece_orders(const BumpFunction& eta, int s_nodes) {
    const double total = eta.hi() - eta.lo();
    std::vector<int> orders;
    for (const auto& p : eta.pieces()) {
        const double share = s_nodes * (p.hi - p.lo) / total;
        orders.push_back(std::clamp(static_cast<int>(std::lround(share)), 2, 64));
    }
    return orders;
}

}  // namespace

BumpFunction::BumpFunction(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw std::invalid_argument("BumpFunction: no pieces");
    for (auto& p : pieces_) {
        if (!(p.hi > p.lo) || p.coeffs.empty())
            throw std::invalid_argument("BumpFunction: malformed piece");
    }
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
        if (std::abs(pieces_[i + 1].lo - pieces_[i].hi) > 1e-12)
            throw std::invalid_argument("BumpFunction: pieces must be contiguous");
        pieces_[i + 1].lo = pieces_[i].hi;
    }
    if (!(hi() - lo() <= 10.0 + 1e-12))
        throw std::invalid_argument("BumpFunction: support length must be <= 10");
    double integral = 0.0;
    for (const auto& p : pieces_) integral += piece_integral(p);
    if (!(integral > 0.0)) throw std::invalid_argument("BumpFunction: profile must have mass");
    for (auto& p : pieces_)
        for (double& c : p.coeffs) c /= integral;
    double peak = 0.0;
    for (const auto& p : pieces_)
        for (int i = 0; i <= 64; ++i)
            peak = std::max(peak, poly_eval(p.coeffs, (p.hi - p.lo) * i / 64.0));
    for (const auto& p : pieces_)
        for (int i = 0; i <= 64; ++i)
            if (poly_eval(p.coeffs, (p.hi - p.lo) * i / 64.0) < -1e-9 * peak)
                throw std::invalid_argument("BumpFunction: profile must be nonnegative");
    description_ = "pieces:" + std::to_string(pieces_.size());
}

double BumpFunction::value(double u) const {
    if (u < lo() || u >= hi()) return 0.0;
    std::size_t idx = 0;
    while (idx + 1 < pieces_.size() && u >= pieces_[idx].hi) ++idx;
    return poly_eval(pieces_[idx].coeffs, u - pieces_[idx].lo);
}

BumpFunction BumpFunction::reversed() const {
    std::vector<Piece> rev;
    for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
        const double len = it->hi - it->lo;
        const std::size_t deg = it->coeffs.size();
        // value'(w) = value(len - w) in local coordinates
        std::vector<double> c(deg, 0.0);
        for (std::size_t k = 0; k < deg; ++k) {
            double coef = it->coeffs[k];
            double comb = 1.0;
            double lpow = std::pow(len, static_cast<double>(k));
            for (std::size_t j = 0; j <= k; ++j) {
                c[j] += coef * comb * lpow * ((j & 1) ? -1.0 : 1.0);
                comb = comb * static_cast<double>(k - j) / static_cast<double>(j + 1);
                lpow = len != 0.0 ? lpow / len : 0.0;
            }
        }
        rev.push_back(Piece{-it->hi, -it->lo, std::move(c)});
    }
    BumpFunction out(std::move(rev));
    out.description_ = "rev(" + description_ + ")";
    return out;
}

BumpFunction BumpFunction::cubic_default() {
    std::vector<Piece> ps = {
        {-0.5, -0.25, {0.0, 0.0, 0.0, 128.0 / 3.0}},
        {-0.25, 0.0, {2.0 / 3.0, 8.0, 32.0, -128.0}},
        {0.0, 0.25, {8.0 / 3.0, 0.0, -64.0, 128.0}},
        {0.25, 0.5, {2.0 / 3.0, -8.0, 32.0, -128.0 / 3.0}},
    };
    BumpFunction out(std::move(ps));
    out.description_ = "cubic_c2_halfwidth";
    return out;
}

BumpFunction BumpFunction::box(double lo, double hi) {
    BumpFunction out(std::vector<Piece>{{lo, hi, {1.0}}});
    out.description_ = "box";
    return out;
}

TimeGrid::TimeGrid(std::vector<double> v, std::string desc)
    : values(std::move(v)), description(std::move(desc)) {
    if (values.empty()) throw std::invalid_argument("TimeGrid: empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) throw std::invalid_argument("TimeGrid: non-finite value");
        if (i > 0 && !(values[i] > values[i - 1]))
            throw std::invalid_argument("TimeGrid: values must be strictly increasing");
    }
}

TimeGrid TimeGrid::uniform(double lo, double hi, double step, std::string desc) {
    if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("TimeGrid: bad uniform spec");
    std::vector<double> v;
    for (double t = lo; t <= hi + 1e-12; t += step) v.push_back(t);
    if (desc.empty())
        desc = "uniform[" + std::to_string(lo) + "," + std::to_string(hi) + "] step " +
               std::to_string(step);
    return TimeGrid(std::move(v), std::move(desc));
}

std::complex<double> sigma_nm_apply(double t, int n, int m, const Observable& f,
                                    const ActionPoint& x, int k_nodes) {
    if ((n & 1) || (m & 1)) throw std::invalid_argument("sigma_nm_apply: n, m must be even");
    if (k_nodes < 64) throw std::invalid_argument("sigma_nm_apply: need k_nodes >= 64");
    check_radial_range(t, "sigma_nm_apply");
    if (f.k_support) {
        const auto& F = *f.k_support;
        if (std::find(F.begin(), F.end(), m) == F.end()) return {0.0, 0.0};
    }
    const GroupElement a = geodesic(t);
    std::complex<double> acc{0.0, 0.0};
    for (int j = 0; j < k_nodes; ++j) {
        const double th = M_PI * j / k_nodes;
        const ActionPoint p = reduce(compose(compose(x.rep, rotation(th)), a)).point;
        const std::complex<double> w{std::cos(n * th), -std::sin(n * th)};
        acc += w * fiber_component(f, p, m, k_nodes);
    }
    return acc / static_cast<double>(k_nodes);
}

std::complex<double> sigma_apply(double t, const Observable& f, const ActionPoint& x,
                                 int k_nodes) {
    return sigma_nm_apply(t, 0, 0, f, x, k_nodes);
}

std::complex<double> gamma_eta_apply(double t, int n, int m, const Observable& f,
                                     const ActionPoint& x, const BumpFunction& eta, int s_nodes,
                                     int k_nodes) {
    if (s_nodes < 32) throw std::invalid_argument("gamma_eta_apply: need s_nodes >= 32");
    check_radial_range(std::abs(t) + std::max(std::abs(eta.lo()), std::abs(eta.hi())),
                       "gamma_eta_apply");
    const std::vector<int> orders = piece_orders(eta, s_nodes);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t pi = 0; pi < eta.pieces().size(); ++pi) {
        const auto& piece = eta.pieces()[pi];
        const GLRule& gl = gauss_legendre(orders[pi]);
        const double half = 0.5 * (piece.hi - piece.lo);
        const double mid = 0.5 * (piece.hi + piece.lo);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double u = mid + half * gl.nodes[i];
            const double w = eta.value(u);
            if (w == 0.0) continue;
            acc += half * gl.weights[i] * w * sigma_nm_apply(t - u, n, m, f, x, k_nodes);
        }
    }
    return acc;
}

std::complex<double> semi_radial_apply(double t, const Observable& f, const ActionPoint& x,
                                       const BumpFunction& eta, int s_nodes, int k_nodes) {
    if (s_nodes < 32) throw std::invalid_argument("semi_radial_apply: need s_nodes >= 32");
    if (k_nodes < 64) throw std::invalid_argument("semi_radial_apply: need k_nodes >= 64");
    check_radial_range(std::abs(t) + std::max(std::abs(eta.lo()), std::abs(eta.hi())),
                       "semi_radial_apply");
    const std::vector<int> orders = piece_orders(eta, s_nodes);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t pi = 0; pi < eta.pieces().size(); ++pi) {
        const auto& piece = eta.pieces()[pi];
        const GLRule& gl = gauss_legendre(orders[pi]);
        const double half = 0.5 * (piece.hi - piece.lo);
        const double mid = 0.5 * (piece.hi + piece.lo);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double u = mid + half * gl.nodes[i];
            const double w = eta.value(u);
            if (w == 0.0) continue;
            // f averaged over a_s k x with s = t - u: points rep_x k(theta) a(u - t)
            const GroupElement a = geodesic(u - t);
            std::complex<double> kavg{0.0, 0.0};
            for (int j = 0; j < k_nodes; ++j) {
                const double th = M_PI * j / k_nodes;
                kavg += f.eval(reduce(compose(compose(x.rep, rotation(th)), a)).point);
            }
            acc += half * gl.weights[i] * w * kavg / static_cast<double>(k_nodes);
        }
    }
    return acc;
}

double maximal_function(const Observable& f, const ActionPoint& x, const TimeGrid& grid,
                        const BumpFunction& eta, int s_nodes, int k_nodes, int n, int m) {
    double best = 0.0;
    for (double t : grid.values)
        best = std::max(best, std::abs(gamma_eta_apply(t, n, m, f, x, eta, s_nodes, k_nodes)));
    return best;
}

ConvergenceReport convergence_study(const Observable& f, const SampleSet& s, const TimeGrid& grid,
                                    const BumpFunction& eta, int s_nodes, int k_nodes,
                                    const std::vector<int>& k_nodes_per_t) {
    if (!k_nodes_per_t.empty() && k_nodes_per_t.size() != grid.values.size())
        throw std::invalid_argument("convergence_study: k_nodes_per_t size mismatch");
    ConvergenceReport rep;
    rep.t = grid.values;
    if (f.k_support &&
        std::find(f.k_support->begin(), f.k_support->end(), 0) == f.k_support->end())
        rep.limit = {0.0, 0.0};
    else if (f.known_mean)
        rep.limit = *f.known_mean;
    else
        rep.limit = integrate(f, s).mean;

    rep.values.assign(grid.values.size(), {});
    for (std::size_t ti = 0; ti < grid.values.size(); ++ti) {
        const int kn = k_nodes_per_t.empty() ? k_nodes : k_nodes_per_t[ti];
        auto& row = rep.values[ti];
        row.assign(s.points.size(), {0.0, 0.0});
        parallel_for(s.points.size(), [&](std::size_t i) {
            row[i] = semi_radial_apply(grid.values[ti], f, s.points[i], eta, s_nodes, kn);
        });
        double mx = 0.0, sq = 0.0;
        for (const auto& v : row) {
            const double d = std::abs(v - rep.limit);
            mx = std::max(mx, d);
            sq += d * d;
        }
        rep.max_dev.push_back(mx);
        rep.rms_dev.push_back(std::sqrt(sq / static_cast<double>(row.size())));
    }
    return rep;
}

}  // namespace sl2avg
