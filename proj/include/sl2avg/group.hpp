#pragma once

#include <cmath>
#include <stdexcept>

namespace sl2avg {

// Element of SL(2,R), row-major [[a,b],[c,d]], ad-bc = 1 up to rounding.
// Products are not renormalized: drift in the determinant stays near the
// rounding floor for any chain short enough to keep entries finite.
struct GroupElement {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    double det() const { return a * d - b * c; }
    double frobenius_sq() const { return a * a + b * b + c * c + d * d; }

    GroupElement inverse() const { return GroupElement{d, -b, -c, a}; }

    bool finite() const {
        return std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d);
    }
};

// KAK coordinates: g = k(theta1) a(t) k(theta2), theta1 in [0,pi), t >= 0.
struct CartanKAK {
    double theta1 = 0.0;
    double t = 0.0;
    double theta2 = 0.0;
};

// NAK coordinates: g = n(x) a(u) k(theta), theta in [0,2pi).
struct IwasawaNAK {
    double x = 0.0;
    double u = 0.0;
    double theta = 0.0;
};

GroupElement identity();

// a(t) = diag(e^t, e^-t). |t| <= 350 keeps entries below the overflow guard range.
GroupElement geodesic(double t);

// k(theta) = [[cos, -sin],[sin, cos]]
GroupElement rotation(double theta);

// n(x) = [[1, x],[0, 1]]
GroupElement upper_unipotent(double x);

// Renormalized product. Throws std::overflow_error when entries pass 1e150.
GroupElement compose(const GroupElement& g, const GroupElement& h);

// t = log(largest singular value); theta1 canonicalized via the -I ambiguity.
CartanKAK cartan(const GroupElement& g);

IwasawaNAK iwasawa(const GroupElement& g);

GroupElement from_cartan(const CartanKAK& kak);
GroupElement from_iwasawa(const IwasawaNAK& nak);

// max_ij |g_ij - h_ij|
double entry_distance(const GroupElement& g, const GroupElement& h);

}  // namespace sl2avg
