#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <string>
#include <vector>

#include "commands.hpp"
#include "sl2avg/action.hpp"
#include "sl2avg/io.hpp"
#include "sl2avg/quadrature.hpp"
#include "sl2avg/spectral.hpp"
#include "sl2avg/spherical.hpp"

namespace sl2avg::cli {

namespace {

struct GoldenRow {
    std::string quantity;
    double oracle;
    double reference;
    double tol;  // relative to max(1, |reference|)

    double gap() const { return std::abs(oracle - reference); }
    bool within() const { return gap() <= tol * std::max(1.0, std::abs(reference)); }
};

// compact number for quantity names; values keep full precision
std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// uniform midpoint rule on the circle: spectrally accurate for periodic
// analytic integrands, independent of the adaptive path
double zonal_brute(const RepParam& rep, double t, int nodes) {
    const double zre = -1.0 + rep.alpha().real();
    const double emt = std::exp(-t);
    const double ept = std::exp(t);
    double sum = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double th = (i + 0.5) * 2.0 * M_PI / nodes;
        const double a = emt * std::cos(th);
        const double b = ept * std::sin(th);
        sum += std::pow(a * a + b * b, 0.5 * zre);
    }
    return sum / nodes;
}

// integral of (1/eps)(1+u)e^{-eps u} over [N, inf) by fixed-order panels of
// length 2/eps, stopping once a panel stops contributing
double tail_numeric(double n_cut, double eps, double delta, double f_norm) {
    const GLRule& gl = gauss_legendre(32);
    const double len = 2.0 / eps;
    double total = 0.0;
    for (int chunk = 0; chunk < 600; ++chunk) {
        const double lo = n_cut + chunk * len;
        double part = 0.0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double u = lo + 0.5 * len * (1.0 + gl.nodes[i]);
            part += 0.5 * len * gl.weights[i] * (1.0 / eps) * (1.0 + u) * std::exp(-eps * u);
        }
        total += part;
        if (part <= 1e-18 * total) break;
    }
    return total / delta * f_norm;
}

}  // namespace

int cmd_oracle(const RunConfig& cfg) {
    const std::string dir = cfg.prepare_out_dir();
    std::vector<GoldenRow> rows;

    // Harish-Chandra function: quadrature against the arithmetic-geometric
    // mean closed form
    for (double t : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double agm = xi_agm(t);
        rows.push_back({"xi_t_" + short_num(t), agm, xi(t), 1e-8});
    }

    // invariant-measure quadrature against closed forms and pinned means
    rows.push_back({"measure_mass",
                    measure_integral([](double, double) { return 1.0; }), 1.0, 1e-12});
    rows.push_back({"measure_inv_im",
                    measure_integral([](double, double y) { return 1.0 / y; }),
                    3.0 * std::log(3.0) / (2.0 * M_PI), 1e-9});
    rows.push_back({"measure_im_power_half",
                    measure_integral([](double, double y) { return std::sqrt(y); }),
                    make_im_power(0.5).known_mean->real(), 1e-9});
    rows.push_back({"measure_im_power_03",
                    measure_integral([](double, double y) { return std::pow(y, 0.3); }),
                    make_im_power(0.3).known_mean->real(), 1e-5});
    const Observable bump = make_bump();
    rows.push_back({"measure_bump",
                    measure_integral([&bump](double x, double y) {
                        ActionPoint p;
                        p.re_z = x;
                        p.im_z = y;
                        return bump.eval(p).real();
                    }),
                    bump.known_mean->real(), 1e-6});

    // zonal envelope against a flat high-node rule
    const int zn = static_cast<int>(cfg.integer("zonal_nodes"));
    if (zn < 1024) throw ConfigError("zonal_nodes must be >= 1024");
    rows.push_back({"zonal_comp05_t4", zonal_brute(RepParam::complementary(0.5), 4.0, zn),
                    zonal_bound(RepParam::complementary(0.5), 4.0), 1e-7});
    rows.push_back({"zonal_pe1_t1", zonal_brute(RepParam::principal_even(1.0), 1.0, zn),
                    zonal_bound(RepParam::principal_even(1.0), 1.0), 1e-7});

    // spectral tail weight against direct numeric integration
    const struct {
        double n, eps, delta;
    } tails[] = {{2.0, 0.5, 0.1}, {1.0, 0.3, 0.5}, {5.0, 0.9, 1.0}};
    for (const auto& c : tails) {
        const TailBound tb = tail_bound(c.n, c.eps, c.delta, 1.0);
        rows.push_back({"tail_N" + short_num(c.n) + "_eps" + short_num(c.eps) + "_delta" +
                            short_num(c.delta),
                        tail_numeric(c.n, c.eps, c.delta, 1.0), tb.exact, 1e-10});
    }

    std::vector<std::vector<std::string>> csv;
    nlohmann::json golden;
    bool all_ok = true;
    for (const GoldenRow& r : rows) {
        csv.push_back({r.quantity, format_real(r.oracle), format_real(r.reference),
                       format_real(r.gap()), format_real(r.tol), r.within() ? "1" : "0"});
        golden[r.quantity] = r.oracle;
        all_ok = all_ok && r.within();
    }
    write_csv(dir + "/golden.csv",
              {"command: oracle", "seed: " + cfg.str("seed"),
               "zonal_nodes: " + cfg.str("zonal_nodes"),
               "tolerances: relative to max(1, |reference|)"},
              {"quantity", "oracle_value", "reference_value", "abs_gap", "rel_tol", "within"},
              csv);
    write_text_file(dir + "/golden.json", golden.dump(2) + "\n");

    nlohmann::json summary = {{"command", "oracle"},
                              {"rows", rows.size()},
                              {"zonal_nodes", zn},
                              {"gates", {{"all_quantities_within_tolerance", all_ok}}},
                              {"pass", all_ok}};
    write_text_file(dir + "/summary.json", summary.dump(2) + "\n");
    return all_ok ? 0 : 1;
}

}  // namespace sl2avg::cli
