#include <cmath>
#include <json.hpp>
#include <random>
#include <string>
#include <vector>

#include "commands.hpp"
#include "sl2avg/io.hpp"
#include "sl2avg/spectral.hpp"

namespace sl2avg::cli {

int cmd_spectral(const RunConfig& cfg) {
    const std::string dir = cfg.prepare_out_dir();
    const long long n_cfg = cfg.integer("samples");
    if (n_cfg < 1) throw ConfigError("samples must be >= 1");
    const double t_max = cfg.real("t_max");
    if (!(t_max > 0.0) || t_max > kMaxTime)
        throw ConfigError("t_max must lie in (0, " + format_real(kMaxTime) + "]");
    const double norm_tol = cfg.real("tolerance");
    const double mult_tol = cfg.real("gate_multiplier");
    const std::vector<std::string> comments = {
        "command: spectral", "seed: " + cfg.str("seed"), "norm_tol: " + cfg.str("tolerance"),
        "multiplier_tol: " + cfg.str("gate_multiplier")};

    // residuals of || sigma_t(n,m) v || against |<v,e_m>| |Phi_{m,n}(a_t)|
    std::mt19937_64 rng(static_cast<std::uint64_t>(cfg.integer("seed")));
    std::uniform_real_distribution<double> ul(0.0, 4.0), us(0.1, 0.9), ut(0.0, t_max),
        ua(-1.0, 1.0);
    std::uniform_int_distribution<int> un(-6, 6), pick(0, 1);
    double worst_norm = 0.0;
    std::vector<std::vector<std::string>> rows;
    for (long long i = 0; i < n_cfg; ++i) {
        const RepParam rep =
            pick(rng) ? RepParam::principal_even(ul(rng)) : RepParam::complementary(us(rng));
        CircleModelVector v(KParity::even, 16);
        for (int j = 0; j < 4; ++j) v.set(2 * un(rng), {ua(rng), ua(rng)});
        if (v.is_zero()) v.set(0, {1.0, 0.0});
        const int n = 2 * un(rng), m = 2 * un(rng);
        const double t = ut(rng);
        const double got = apply_sigma_model(rep, t, n, m, v).norm();
        const double expect = std::abs(v.get(m)) * std::abs(phi(m, n, rep, t).value);
        const double residual = std::abs(got - expect);
        worst_norm = std::max(worst_norm, residual);
        rows.push_back({std::to_string(i), rep.label(), format_real(t), std::to_string(n),
                        std::to_string(m), format_real(got), format_real(expect),
                        format_real(residual)});
    }
    write_csv(dir + "/norm_identity.csv", comments,
              {"config", "rep", "t", "n", "m", "image_norm", "expected", "residual"}, rows);

    // derivative multiplier against centered finite differences
    double worst_mult = 0.0;
    rows.clear();
    for (int i = 0; i < 20; ++i) {
        const RepParam rep = (i % 2) ? RepParam::principal_even(0.3 + 0.15 * i)
                                     : RepParam::complementary(0.04 * i + 0.1);
        const int m = 2 * (i % 3), n = 2 * ((i % 5) - 2);
        CircleModelVector v(KParity::even, 8);
        v.set(m, {1.0, 0.3});
        const double t = 0.5 + 0.1 * i;
        const double residual = derivative_multiplier_check(rep, t, n, m, v);
        worst_mult = std::max(worst_mult, residual);
        rows.push_back({std::to_string(i), rep.label(), format_real(t), std::to_string(n),
                        std::to_string(m), format_real(residual)});
    }
    write_csv(dir + "/multiplier.csv", comments, {"config", "rep", "t", "n", "m", "residual"},
              rows);

    // spectral-set membership table
    const std::vector<RepParam> set_reps = {
        RepParam::principal_even(0.0),  RepParam::principal_even(1.0),
        RepParam::principal_even(5.0),  RepParam::principal_odd(2.0),
        RepParam::complementary(0.2),   RepParam::complementary(0.5),
        RepParam::complementary(0.8),   RepParam::discrete_or_limit(2, 1),
        RepParam::trivial()};
    bool pinned_member = false;
    rows.clear();
    for (const RepParam& rep : set_reps) {
        for (double eps : {0.3, 0.5, 0.9}) {
            for (double b : {0.5, 1.0, 2.0}) {
                const bool member = in_sigma_eps(rep, {eps, b});
                if (rep.kind() == RepKind::principal_even && rep.lambda() == 0.0 &&
                    eps == 0.5 && b == 1.0)
                    pinned_member = member;
                rows.push_back({rep.label(), format_real(eps), format_real(b),
                                member ? "true" : "false"});
            }
        }
    }
    write_csv(dir + "/sigma_eps.csv", comments, {"rep", "eps", "B", "member"}, rows);

    // tail-bound table with the exact-vs-paper comparison flag per row
    bool tail_monotone = true;
    rows.clear();
    for (double eps : {0.1, 0.3, 0.5, 0.9}) {
        for (double delta : {0.5, 1.0}) {
            double prev = 1e300;
            for (double n : {0.5, 1.0, 2.0, 5.0, 10.0}) {
                const TailBound tb = tail_bound(n, eps, delta, 1.0);
                tail_monotone = tail_monotone && tb.exact < prev;
                prev = tb.exact;
                const bool flag = tb.exact <= tb.paper_bound * (1.0 + 1e-12);
                rows.push_back({format_real(n), format_real(eps), format_real(delta),
                                format_real(tb.exact), format_real(tb.paper_bound),
                                flag ? "true" : "false"});
            }
        }
    }
    write_csv(dir + "/tail.csv", comments,
              {"N", "eps", "delta", "exact", "paper_bound", "exact_le_paper"}, rows);

    const bool norm_gate = worst_norm <= norm_tol;
    const bool mult_gate = worst_mult <= mult_tol;
    const bool pass = norm_gate && mult_gate && pinned_member && tail_monotone;
    nlohmann::json summary = {{"command", "spectral"},
                              {"seed", cfg.integer("seed")},
                              {"configs", n_cfg},
                              {"worst_norm_residual", worst_norm},
                              {"worst_multiplier_residual", worst_mult},
                              {"gates",
                               {{"norm_identity", norm_gate},
                                {"derivative_multiplier", mult_gate},
                                {"principal0_in_sigma_half", pinned_member},
                                {"tail_monotone_in_N", tail_monotone}}},
                              {"pass", pass}};
    write_text_file(dir + "/summary.json", summary.dump(2) + "\n");
    return pass ? 0 : 1;
}

}  // namespace sl2avg::cli
