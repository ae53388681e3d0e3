#include <cmath>
#include <json.hpp>
#include <string>
#include <vector>

#include "commands.hpp"
#include "sl2avg/averages.hpp"
#include "sl2avg/io.hpp"

namespace sl2avg::cli {

namespace {

const Observable& find_observable(const std::string& name) {
    for (const auto& [n, f] : observable_library())
        if (n == name) return f;
    std::string known;
    for (const auto& [n, f] : observable_library()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown observable '" + name + "' (library: " + known + ")");
}

// diagonal character channel for K-finite observables, radial otherwise
std::pair<int, int> channel_for(const Observable& f) {
    if (f.k_support && f.k_support->size() == 1) {
        const int j = f.k_support->front();
        return {j, j};
    }
    return {0, 0};
}

int run_convergence(const RunConfig& cfg, const std::string& dir, const Observable& f,
                    const SampleSet& pts, const std::vector<std::string>& comments,
                    nlohmann::json& summary) {
    const std::vector<double> t_list = cfg.real_list("t_list");
    std::vector<int> k_per_t = cfg.int_list("k_nodes_per_t");
    if (k_per_t.size() == 1) k_per_t.assign(t_list.size(), k_per_t.front());
    if (k_per_t.size() != t_list.size())
        throw ConfigError("k_nodes_per_t must have one entry, or one per t_list entry");
    const int s_nodes = static_cast<int>(cfg.integer("s_nodes"));
    const double gate_final = cfg.real("gate_final");
    const TimeGrid grid(t_list, "configured t grid");
    const BumpFunction eta = BumpFunction::cubic_default();

    const ConvergenceReport report = convergence_study(
        f, pts, grid, eta, s_nodes, static_cast<int>(cfg.integer("k_nodes")), k_per_t);

    std::vector<std::vector<std::string>> rows;
    for (std::size_t ti = 0; ti < report.t.size(); ++ti)
        for (std::size_t pi = 0; pi < report.values[ti].size(); ++pi) {
            const std::complex<double> v = report.values[ti][pi];
            rows.push_back({format_real(report.t[ti]), std::to_string(pi),
                            format_real(v.real()), format_real(v.imag()),
                            format_real(std::abs(v - report.limit))});
        }
    write_csv(dir + "/convergence.csv", comments,
              {"t", "point_index", "re_value", "im_value", "abs_deviation"}, rows);

    // gate: deviations must not grow along the grid and must end below the
    // configured bound (ties at the noise floor allowed, the constant
    // observable sits there from the start)
    bool monotone = true;
    for (std::size_t i = 1; i < report.max_dev.size(); ++i)
        monotone = monotone && report.max_dev[i] <= report.max_dev[i - 1] + 1e-12;
    const bool final_ok = report.max_dev.back() <= gate_final;
    const bool pass = monotone && final_ok;

    nlohmann::json per_t = nlohmann::json::array();
    for (std::size_t i = 0; i < report.t.size(); ++i)
        per_t.push_back({{"t", report.t[i]},
                         {"k_nodes", k_per_t[i]},
                         {"max_dev", report.max_dev[i]},
                         {"rms_dev", report.rms_dev[i]}});
    summary["mode"] = "convergence";
    summary["limit_re"] = report.limit.real();
    summary["limit_im"] = report.limit.imag();
    summary["per_t"] = per_t;
    summary["s_nodes"] = s_nodes;
    summary["gates"] = {{"monotone_decay", monotone},
                        {"final_below_" + cfg.str("gate_final"), final_ok}};
    summary["pass"] = pass;
    return pass ? 0 : 1;
}

int run_maximal(const RunConfig& cfg, const std::string& dir, const Observable& f,
                const SampleSet& base_pts, const std::vector<std::string>& comments,
                nlohmann::json& summary) {
    const double t_max = cfg.real("t_max");
    const double step = cfg.real("grid_step");
    if (!(t_max > 0.0) || !(step > 0.0)) throw ConfigError("need t_max > 0 and grid_step > 0");
    const int s_nodes = static_cast<int>(cfg.integer("s_nodes"));
    const int k_nodes = static_cast<int>(cfg.integer("k_nodes"));
    const auto [n, m] = channel_for(f);
    const BumpFunction eta = BumpFunction::cubic_default();
    const TimeGrid base_grid = TimeGrid::uniform(0.0, t_max, step, "base");
    const TimeGrid fine_grid = TimeGrid::uniform(0.0, t_max, 0.5 * step, "doubled");
    const SampleSet fine_pts =
        sample(base_pts.seed, 2 * base_pts.points.size());

    std::vector<std::vector<std::string>> rows;
    auto ratio = [&](const SampleSet& pts, const TimeGrid& grid, bool record) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < pts.points.size(); ++i) {
            const double mv = maximal_function(f, pts.points[i], grid, eta, s_nodes, k_nodes,
                                               n, m);
            const double fv = std::abs(f.eval(pts.points[i]));
            num += mv * mv;
            den += fv * fv;
            if (record)
                rows.push_back({std::to_string(i), format_real(mv), format_real(fv)});
        }
        return std::sqrt(num / den);
    };
    const double rb = ratio(base_pts, base_grid, true);
    const double rf = ratio(fine_pts, fine_grid, false);
    write_csv(dir + "/maximal.csv", comments, {"point_index", "maximal_value", "abs_f"}, rows);

    const double shift = std::abs(rf / rb - 1.0);
    const double gate_shift = cfg.real("gate_shift");
    const bool pass = shift <= gate_shift;
    summary["mode"] = "maximal";
    summary["channel_n"] = n;
    summary["channel_m"] = m;
    summary["ratio_base"] = rb;
    summary["ratio_doubled"] = rf;
    summary["rel_shift"] = shift;
    summary["gates"] = {{"stability_within_" + cfg.str("gate_shift"), pass}};
    summary["pass"] = pass;
    return pass ? 0 : 1;
}

}  // namespace

int cmd_ergodic(const RunConfig& cfg) {
    const std::string dir = cfg.prepare_out_dir();
    const long long n_pts = cfg.integer("samples");
    if (n_pts < 1) throw ConfigError("samples must be >= 1");
    const Observable& f = find_observable(cfg.str("observable"));
    const SampleSet pts = sample(static_cast<std::uint64_t>(cfg.integer("seed")),
                                 static_cast<std::size_t>(n_pts));

    // evaluate once per point up front so sampler or reduction trouble is
    // reported with the offending index instead of aborting a long study
    nlohmann::json errors = nlohmann::json::array();
    for (std::size_t i = 0; i < pts.points.size(); ++i) {
        try {
            const std::complex<double> v = f.eval(pts.points[i]);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                errors.push_back({{"point_index", i}, {"error", "non-finite value"}});
        } catch (const std::exception& e) {
            errors.push_back({{"point_index", i}, {"error", e.what()}});
        }
    }

    const std::vector<std::string> comments = {
        "command: ergodic",
        "seed: " + cfg.str("seed"),
        "samples: " + cfg.str("samples"),
        "observable: " + cfg.str("observable"),
        "s_nodes: " + cfg.str("s_nodes"),
        "k_nodes: " + cfg.str("k_nodes"),
        "gate_final: " + cfg.str("gate_final"),
        "gate_shift: " + cfg.str("gate_shift")};
    nlohmann::json summary = {{"command", "ergodic"},
                              {"observable", cfg.str("observable")},
                              {"seed", cfg.integer("seed")},
                              {"samples", n_pts},
                              {"errors", errors}};

    int code;
    const std::string mode = cfg.str("mode");
    if (mode == "convergence")
        code = run_convergence(cfg, dir, f, pts, comments, summary);
    else if (mode == "maximal")
        code = run_maximal(cfg, dir, f, pts, comments, summary);
    else
        throw ConfigError("mode must be 'convergence' or 'maximal'");
    if (!errors.empty()) {
        summary["pass"] = false;
        code = 1;
    }
    write_text_file(dir + "/summary.json", summary.dump(2) + "\n");
    return code;
}

}  // namespace sl2avg::cli
