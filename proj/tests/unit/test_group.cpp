#include <doctest.h>

#include <cmath>
#include <random>

#include "sl2avg/group.hpp"

using namespace sl2avg;

namespace {

std::mt19937_64 rng_for(const char* tag) {
    std::seed_seq seq(tag, tag + std::char_traits<char>::length(tag));
    return std::mt19937_64(seq);
}

GroupElement random_nak(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ux(-5.0, 5.0);
    std::uniform_real_distribution<double> uth(0.0, 2.0 * M_PI);
    return compose(compose(upper_unipotent(ux(rng)), geodesic(ux(rng))), rotation(uth(rng)));
}

}  // namespace

TEST_CASE("identity composes neutrally") {
    GroupElement g{2.0, 1.0, 3.0, 2.0};
    CHECK(entry_distance(compose(identity(), g), g) <= 1e-14);
    CHECK(entry_distance(compose(g, identity()), g) <= 1e-14);
}

TEST_CASE("one parameter subgroup laws") {
    CHECK(entry_distance(geodesic(0.0), identity()) == 0.0);
    CHECK(entry_distance(compose(geodesic(0.5), geodesic(0.5)), geodesic(1.0)) <= 1e-12);
    CHECK(entry_distance(rotation(2.0 * M_PI), identity()) <= 1e-12);

    const GroupElement e1 = geodesic(1.0);
    CHECK(e1.a == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(e1.d == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(e1.b == 0.0);
    CHECK(e1.c == 0.0);

    const GroupElement minus_id{-1.0, 0.0, 0.0, -1.0};
    CHECK(entry_distance(compose(rotation(M_PI / 2.0), rotation(M_PI / 2.0)), minus_id) <= 1e-12);
}

TEST_CASE("inverse and determinant maintenance") {
    auto rng = rng_for("inverse");
    for (int i = 0; i < 1000; ++i) {
        const GroupElement g = random_nak(rng);
        CHECK(std::abs(g.det() - 1.0) <= 1e-10);
        CHECK(entry_distance(compose(g.inverse(), g), identity()) <= 1e-10);
        CHECK(entry_distance(compose(g, g.inverse()), identity()) <= 1e-10);
    }
}

TEST_CASE("associativity on random triples") {
    auto rng = rng_for("assoc");
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    // entries in [-10, 10]: draw a, b, c and solve for d on the group
    auto bounded = [&]() {
        double a = 0.0;
        while (std::abs(a) < 0.2) a = u(rng);
        double b = u(rng), c = u(rng);
        double d = (1.0 + b * c) / a;
        while (std::abs(d) > 10.0) {
            b *= 0.5;
            c *= 0.5;
            d = (1.0 + b * c) / a;
        }
        return GroupElement{a, b, c, d};
    };
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const GroupElement g = bounded(), h = bounded(), k = bounded();
        worst = std::max(worst,
                         entry_distance(compose(compose(g, h), k), compose(g, compose(h, k))));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("composition overflow is signalled") {
    CHECK_THROWS_AS((void)compose(geodesic(300.0), geodesic(300.0)), std::overflow_error);
    CHECK_THROWS_AS((void)geodesic(351.0), std::domain_error);
}

TEST_CASE("cartan coordinates") {
    const CartanKAK id_kak = cartan(identity());
    CHECK(id_kak.t == 0.0);

    const CartanKAK a2 = cartan(geodesic(2.0));
    CHECK(a2.t == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(entry_distance(from_cartan(a2), geodesic(2.0)) <= 1e-9);

    // 2 cosh(2t) equals the squared Frobenius norm
    const GroupElement g = compose(upper_unipotent(1.0), geodesic(1.0));
    const CartanKAK kak = cartan(g);
    const double lhs = 2.0 * std::cosh(2.0 * kak.t);
    CHECK(std::abs(lhs - g.frobenius_sq()) <= 1e-9 * g.frobenius_sq());
}

TEST_CASE("cartan round trip and canonical ranges") {
    auto rng = rng_for("cartan");
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const GroupElement g = random_nak(rng);
        const CartanKAK kak = cartan(g);
        CHECK(kak.t >= 0.0);
        CHECK(kak.theta1 >= 0.0);
        CHECK(kak.theta1 < M_PI);
        worst = std::max(worst, entry_distance(from_cartan(kak), g));
        const double fs = g.frobenius_sq();
        CHECK(std::abs(2.0 * std::cosh(2.0 * kak.t) - fs) <= 1e-9 * fs);
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("iwasawa coordinates") {
    const IwasawaNAK rot = iwasawa(rotation(1.25));
    CHECK(std::abs(rot.x) <= 1e-12);
    CHECK(std::abs(rot.u) <= 1e-12);
    CHECK(rot.theta == doctest::Approx(1.25).epsilon(1e-12));

    const IwasawaNAK diag = iwasawa(geodesic(0.7));
    CHECK(std::abs(diag.x) <= 1e-12);
    CHECK(diag.u == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(std::abs(diag.theta) <= 1e-12);

    auto rng = rng_for("iwasawa");
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const GroupElement g = random_nak(rng);
        const IwasawaNAK nak = iwasawa(g);
        CHECK(nak.theta >= 0.0);
        CHECK(nak.theta < 2.0 * M_PI);
        worst = std::max(worst, entry_distance(from_iwasawa(nak), g));
    }
    CHECK(worst <= 1e-9);
}
