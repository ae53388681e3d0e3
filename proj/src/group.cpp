#include "sl2avg/group.hpp"

#include <algorithm>

namespace sl2avg {

namespace {
constexpr double kEntryLimit = 1e150;
}  // namespace

GroupElement identity() { return GroupElement{}; }

GroupElement geodesic(double t) {
    if (!(std::abs(t) <= 350.0))
        throw std::domain_error("geodesic: |t| must be <= 350");
    return GroupElement{std::exp(t), 0.0, 0.0, std::exp(-t)};
}

GroupElement rotation(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return GroupElement{c, -s, s, c};
}

GroupElement upper_unipotent(double x) { return GroupElement{1.0, x, 0.0, 1.0}; }

GroupElement compose(const GroupElement& g, const GroupElement& h) {
    GroupElement r{g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
                   g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
    if (!r.finite() ||
        std::max({std::abs(r.a), std::abs(r.b), std::abs(r.c), std::abs(r.d)}) > kEntryLimit)
        throw std::overflow_error("compose: entries exceed 1e150, parameter range too large");
    const double det = r.det();
    if (!(det > 0.0))
        throw std::overflow_error("compose: determinant collapsed, parameter range too large");
    // no renormalization: rescaling by 1/sqrt(det) would move every entry by
    // entry * |det-1| / 2, which is far above the raw product rounding error
    return r;
}

CartanKAK cartan(const GroupElement& g) {
    if (!g.finite()) throw std::domain_error("cartan: entries not finite");
    // g^T g = k(-theta2) a(2t) k(theta2); symmetric 2x2 eigenproblem.
    const double p = g.a * g.a + g.c * g.c;
    const double q = g.a * g.b + g.c * g.d;
    const double r = g.b * g.b + g.d * g.d;
    const double tr = p + r;
    // eigenvalue gap e^{2t} - e^{-2t} = 2 sinh(2t); asinh keeps t exact near 0
    const double disc = std::hypot(p - r, 2.0 * q);
    CartanKAK out;
    out.t = 0.5 * std::asinh(0.5 * disc);
    if (disc <= 1e-15 * tr) {
        // pure rotation: put everything in theta2
        out.t = 0.0;
        out.theta1 = 0.0;
        out.theta2 = std::atan2(g.c, g.a);
    } else {
        // g^T g = R(phi) diag(lmax,lmin) R(-phi), R(phi)=k(phi); theta2 = -phi
        const double phi = 0.5 * std::atan2(2.0 * q, p - r);
        out.theta2 = -phi;
        // first column of g k(-theta2) is e^{t} (cos theta1, sin theta1)
        const double c2 = std::cos(out.theta2), s2 = std::sin(out.theta2);
        out.theta1 = std::atan2(g.c * c2 - g.d * s2, g.a * c2 - g.b * s2);
    }
    // canonicalize: theta1 in [0,pi) using k(theta+pi) = -I k(theta)
    const double two_pi = 2.0 * M_PI;
    out.theta1 = std::fmod(out.theta1, two_pi);
    if (out.theta1 < 0) out.theta1 += two_pi;
    if (out.theta1 >= M_PI) {
        out.theta1 -= M_PI;
        out.theta2 += M_PI;
    }
    out.theta2 = std::fmod(out.theta2, two_pi);
    if (out.theta2 < 0) out.theta2 += two_pi;
    return out;
}

IwasawaNAK iwasawa(const GroupElement& g) {
    if (!g.finite()) throw std::domain_error("iwasawa: entries not finite");
    // bottom row of n(x) a(u) k(theta) is e^{-u} (sin theta, cos theta)
    const double norm = std::hypot(g.c, g.d);
    if (!(norm > 0.0)) throw std::domain_error("iwasawa: degenerate bottom row");
    IwasawaNAK out;
    out.u = -std::log(norm);
    out.theta = std::atan2(g.c, g.d);
    if (out.theta < 0) out.theta += 2.0 * M_PI;
    // top row dotted with the bottom row isolates x e^{-2u}
    out.x = (g.a * g.c + g.b * g.d) / (norm * norm);
    return out;
}

GroupElement from_cartan(const CartanKAK& kak) {
    if (!(std::abs(kak.t) <= 350.0))
        throw std::domain_error("from_cartan: |t| must be <= 350");
    // expanded k(theta1) a(t) k(theta2): one rounding per product, no rescaling
    const double ep = std::exp(kak.t), em = std::exp(-kak.t);
    const double c1 = std::cos(kak.theta1), s1 = std::sin(kak.theta1);
    const double c2 = std::cos(kak.theta2), s2 = std::sin(kak.theta2);
    return GroupElement{c1 * ep * c2 - s1 * em * s2, -c1 * ep * s2 - s1 * em * c2,
                        s1 * ep * c2 + c1 * em * s2, -s1 * ep * s2 + c1 * em * c2};
}

GroupElement from_iwasawa(const IwasawaNAK& nak) {
    if (!(std::abs(nak.u) <= 350.0))
        throw std::domain_error("from_iwasawa: |u| must be <= 350");
    // expanded n(x) a(u) k(theta)
    const double ep = std::exp(nak.u), em = std::exp(-nak.u);
    const double c = std::cos(nak.theta), s = std::sin(nak.theta);
    const double xm = nak.x * em;
    return GroupElement{ep * c + xm * s, -ep * s + xm * c, em * s, em * c};
}

double entry_distance(const GroupElement& g, const GroupElement& h) {
    return std::max({std::abs(g.a - h.a), std::abs(g.b - h.b),
                     std::abs(g.c - h.c), std::abs(g.d - h.d)});
}

}  // namespace sl2avg
