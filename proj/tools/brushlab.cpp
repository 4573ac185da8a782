// brushlab: experiment runner for the brushlet basis library.
//
//   brushlab <subcommand> --config <path> [--out <dir>] [--threads N]
//
// Subcommands: basis-check | complete-check | norm | approx-decay |
//              democracy | bernstein | jackson | embed
//
// Each run writes <out>/<experiment>.csv and <out>/summary.json. Exit codes:
// 0 success, 2 config error, 3 precondition violated, 4 accuracy flag.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "brushlab/approx.hpp"
#include "brushlab/config.hpp"
#include "brushlab/serialize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace brushlab;

namespace {

struct CliArgs {
    std::string subcommand;
    std::string config_path;
    std::string out_dir = ".";
    int threads_override = 0;
};

CliArgs parse_args(int argc, char** argv) {
    CliArgs args;
    if (argc < 2) throw config_error("usage: brushlab <subcommand> --config <path> [--out <dir>] [--threads N]");
    args.subcommand = argv[1];
    for (int i = 2; i < argc; ++i) {
        const std::string a = argv[i];
        auto next = [&](const char* what) -> std::string {
            if (i + 1 >= argc) throw config_error(std::string("missing value for ") + what);
            return argv[++i];
        };
        if (a == "--config")
            args.config_path = next("--config");
        else if (a == "--out")
            args.out_dir = next("--out");
        else if (a == "--threads")
            args.threads_override = std::stoi(next("--threads"));
        else
            throw config_error("unknown flag '" + a + "'");
    }
    if (args.config_path.empty()) throw config_error("--config is required");
    return args;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Anisotropy aniso_from(const ExperimentConfig& cfg) {
    const int d = cfg.get_int("d");
    auto a = cfg.get_doubles("a");
    if (static_cast<int>(a.size()) != d)
        throw config_error("config: anisotropy length disagrees with d");
    return make_anisotropy(std::move(a));
}

MixedNormParams params_from(const ExperimentConfig& cfg, const Anisotropy& an,
                            const std::string& p_key = "p", const std::string& q_key = "q",
                            const std::string& s_key = "s") {
    MixedNormParams prm;
    prm.aniso = an;
    prm.p = cfg.get_doubles(p_key);
    prm.q = cfg.get_double(q_key);
    prm.s = cfg.get_double_or(s_key, 0.0);
    validate(prm);
    return prm;
}

CoefficientSet coefficients_from(const ExperimentConfig& cfg, const Anisotropy& an) {
    if (cfg.has("coefficients")) {
        std::ifstream in(cfg.get("coefficients"));
        if (!in) throw config_error("config: cannot open coefficients file");
        json arr;
        try {
            in >> arr;
        } catch (const json::exception& e) {
            throw config_error(std::string("coefficients file: ") + e.what());
        }
        return coefficient_set_from_json(arr);
    }
    // Random sparse set, reproducible from the seed.
    const int count = cfg.get_int_or("count", 8);
    Rng rng(cfg.get_seed());
    CoefficientSet set;
    set.trunc = Truncation{-1, 1, 8};
    const auto rects0 = truncation_rects(set.trunc, an);
    for (int t = 0; t < count; ++t) {
        const auto& rect = rects0[rng() % rects0.size()];
        std::vector<int> n(an.dim());
        for (int i = 0; i < an.dim(); ++i) n[i] = static_cast<int>(rng() % 8);
        set.entries[BrushletIndex{rect.j, rect.k, n}] =
            Complex(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
    }
    return set;
}

struct Outputs {
    std::vector<std::string> csv_lines;
    json summary;
};

void write_outputs(const CliArgs& args, const std::string& experiment, const ExperimentConfig& cfg,
                   Outputs& out) {
    fs::create_directories(args.out_dir);
    const fs::path csv_path = fs::path(args.out_dir) / (experiment + ".csv");
    std::ofstream csv(csv_path);
    for (const auto& line : out.csv_lines) csv << line << "\n";

    json echo = json::object();
    for (const auto& [k, v] : cfg.kv) echo[k] = v;
    out.summary["experiment"] = experiment;
    out.summary["config"] = echo;
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(fnv1a(cfg.raw)));
    out.summary["config_hash"] = hash;
    std::ofstream js(fs::path(args.out_dir) / "summary.json");
    js << out.summary.dump(2) << "\n";
}

const std::set<std::string> kCommonKeys = {"experiment", "d", "a", "seed", "threads"};

std::set<std::string> with_common(std::set<std::string> extra) {
    extra.insert(kCommonKeys.begin(), kCommonKeys.end());
    return extra;
}

Outputs run_basis_check(const ExperimentConfig& cfg, int threads) {
    reject_unknown_keys(cfg, with_common({"j_min", "j_max", "n_max", "quad_tol"}));
    const auto an = aniso_from(cfg);
    Truncation trunc{cfg.get_int_or("j_min", -1), cfg.get_int_or("j_max", 1),
                     cfg.get_int_or("n_max", 4)};
    std::vector<BrushletIndex> indices;
    for (const auto& rect : truncation_rects(trunc, an)) {
        std::vector<int> n(an.dim(), 0);
        while (true) {
            indices.push_back(BrushletIndex{rect.j, rect.k, n});
            int axis = 0;
            while (axis < an.dim()) {
                if (++n[axis] < trunc.n_max) break;
                n[axis] = 0;
                ++axis;
            }
            if (axis == an.dim()) break;
        }
    }
    QuadRule quad;
    quad.tol = cfg.get_double_or("quad_tol", 1e-9);
    const auto G = gram_matrix(indices, an, quad, threads);
    double max_dev = 0.0;
    Outputs out;
    out.csv_lines.push_back("row,diag,max_offdiag");
    for (std::size_t i = 0; i < G.size(); ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < G.size(); ++j) {
            const double target = i == j ? 1.0 : 0.0;
            max_dev = std::max(max_dev, std::fabs(G[i][j] - target));
            if (i != j) off = std::max(off, std::fabs(G[i][j]));
        }
        out.csv_lines.push_back(std::to_string(i) + "," + fmt(G[i][i]) + "," + fmt(off));
    }
    out.summary["basis_count"] = indices.size();
    out.summary["gram_max_deviation"] = max_dev;
    return out;
}

Outputs run_complete_check(const ExperimentConfig& cfg, int threads) {
    reject_unknown_keys(cfg, with_common({"j0", "levels_n", "spectra", "grid_res", "n_max"}));
    const auto an = aniso_from(cfg);
    const int j0 = cfg.get_int_or("j0", 0);
    const int N = cfg.get_int_or("levels_n", 2);
    const int spectra = cfg.get_int_or("spectra", 3);
    const int res = cfg.get_int_or("grid_res", 33);

    const auto axes = multiscale_axes(an, j0 - N, j0 + N, static_cast<std::size_t>(res - 1));
    Outputs out;
    out.csv_lines.push_back("kind,id,value");
    double worst = 0.0;
    for (int s = 0; s < spectra; ++s) {
        auto f = random_corridor_spectrum(an, j0 - N + 1, j0 + N - 1, 4,
                                          cfg.get_seed() + static_cast<std::uint64_t>(s));
        const double r = telescoping_check(f, an, j0, N, axes, threads);
        worst = std::max(worst, r);
        out.csv_lines.push_back("telescoping," + std::to_string(s) + "," + fmt(r));
    }
    out.summary["max_residual"] = worst;

    // Parseval for a corridor-supported Gaussian bump at level j0.
    const auto rect = make_lizorkin_rect(j0, std::vector<int>(an.dim(), 2), an);
    std::vector<double> center(an.dim()), sigma(an.dim());
    for (int i = 0; i < an.dim(); ++i) {
        center[i] = rect.center[i];
        sigma[i] = 0.5 * rect.intervals[i].length() / 8.0;
    }
    auto bump = [&](const std::vector<double>& xi) {
        double e = 0.0;
        for (std::size_t i = 0; i < xi.size(); ++i) {
            const double d = (xi[i] - center[i]) / sigma[i];
            e += 0.5 * d * d;
        }
        return Complex(e < 700.0 ? std::exp(-e) : 0.0);
    };
    const int n_max = cfg.get_int_or("n_max", 24);
    const auto coeffs =
        analyze(bump, Truncation{j0 - 1, j0 + 1, n_max}, an, QuadRule{256, 1e-8, true}, threads);
    double sum2 = 0.0;
    for (const auto& [idx, c] : coeffs.entries) sum2 += std::norm(c);
    double norm2 = 1.0;
    for (int i = 0; i < an.dim(); ++i) {
        const double c = center[i], s = sigma[i];
        norm2 *= trapezoid([&](double xi) { return std::exp(-(xi - c) * (xi - c) / (s * s)); },
                           c - 12.0 * s, c + 12.0 * s, 4096);
    }
    out.csv_lines.push_back("parseval,0," + fmt(sum2 / norm2));
    out.summary["parseval_ratio"] = sum2 / norm2;
    return out;
}

Outputs run_norm(const ExperimentConfig& cfg, int) {
    reject_unknown_keys(cfg, with_common({"p", "q", "s", "coefficients", "count"}));
    const auto an = aniso_from(cfg);
    const auto prm = params_from(cfg, an);
    const auto coeffs = coefficients_from(cfg, an);
    const double fn = f_norm(coeffs, prm);
    const double bn = b_norm(coeffs, prm);
    std::cout << "f_norm " << fmt(fn) << "\nb_norm " << fmt(bn) << "\n";
    Outputs out;
    out.csv_lines.push_back("f_norm,b_norm");
    out.csv_lines.push_back(fmt(fn) + "," + fmt(bn));
    out.summary["f_norm"] = fn;
    out.summary["b_norm"] = bn;
    return out;
}

Outputs run_approx_decay(const ExperimentConfig& cfg, int) {
    reject_unknown_keys(cfg, with_common({"p", "q", "s", "coefficients", "count", "m_list"}));
    const auto an = aniso_from(cfg);
    const auto prm = params_from(cfg, an);
    const auto coeffs = coefficients_from(cfg, an);
    std::vector<int> m_list;
    if (cfg.has("m_list"))
        m_list = cfg.get_ints("m_list");
    else
        for (int m = 0; m <= static_cast<int>(coeffs.size()); ++m) m_list.push_back(m);
    Outputs out;
    out.csv_lines.push_back("m,greedy_error");
    double prev = kInf;
    bool monotone = true;
    for (int m : m_list) {
        const auto r = greedy_select(coeffs, prm, m);
        out.csv_lines.push_back(std::to_string(m) + "," + fmt(r.error));
        if (r.error > prev + 1e-12) monotone = false;
        prev = r.error;
    }
    out.summary["monotone"] = monotone;
    out.summary["terms"] = coeffs.size();
    return out;
}

Outputs run_democracy(const ExperimentConfig& cfg, int) {
    reject_unknown_keys(cfg, with_common({"p", "q", "beta", "axis_n", "axis_m", "N_list"}));
    const auto an = aniso_from(cfg);
    auto prm = params_from(cfg, an, "p", "q", "beta");
    const auto res = democracy_experiment(prm, cfg.get_int_or("axis_n", 0),
                                          cfg.get_int_or("axis_m", 1), cfg.get_ints("N_list"));
    Outputs out;
    out.csv_lines.push_back("N,norm_first,norm_second");
    for (const auto& row : res.rows)
        out.csv_lines.push_back(std::to_string(row.N) + "," + fmt(row.norm_first) + "," +
                                fmt(row.norm_second));
    out.summary["slope_first"] = res.slope_first;
    out.summary["slope_second"] = res.slope_second;
    return out;
}

Outputs run_bernstein(const ExperimentConfig& cfg, int) {
    reject_unknown_keys(cfg, with_common({"p", "tau", "q", "r", "beta", "N_list"}));
    const auto an = aniso_from(cfg);
    const auto res = bernstein_experiment(cfg.get_doubles("p"), cfg.get_doubles("tau"),
                                          cfg.get_double_or("q", 1.0), cfg.get_double_or("r", 2.0),
                                          an, cfg.get_ints("N_list"),
                                          cfg.get_double_or("beta", 0.0));
    Outputs out;
    out.csv_lines.push_back("N,besov,triebel");
    for (const auto& row : res.rows)
        out.csv_lines.push_back(std::to_string(row.N) + "," + fmt(row.besov) + "," +
                                fmt(row.triebel));
    out.summary["exponent"] = res.exponent;
    out.summary["bound"] = res.bound;
    out.summary["axis"] = res.axis;
    out.summary["saturates_bound"] = res.saturates_bound;
    return out;
}

Outputs run_jackson(const ExperimentConfig& cfg, int) {
    reject_unknown_keys(cfg, with_common({"p", "tau", "q", "r", "beta", "N_list"}));
    const auto an = aniso_from(cfg);
    const auto res = jackson_experiment(cfg.get_doubles("p"), cfg.get_doubles("tau"),
                                        cfg.get_double_or("q", 1.0), cfg.get_double_or("r", 2.0),
                                        an, cfg.get_ints("N_list"), cfg.get_seed(),
                                        cfg.get_double_or("beta", 0.0));
    Outputs out;
    out.csv_lines.push_back("kind,N_or_m,value,extra");
    for (const auto& row : res.witness)
        out.csv_lines.push_back("witness," + std::to_string(row.N) + "," + fmt(row.residual) +
                                "," + fmt(row.besov));
    for (const auto& row : res.bound_rows)
        out.csv_lines.push_back("bound," + std::to_string(row.m) + "," + fmt(row.greedy_error) +
                                "," + fmt(row.bound));
    out.summary["residual_slope"] = res.residual_slope;
    out.summary["besov_slope"] = res.besov_slope;
    out.summary["rate"] = res.rate;
    out.summary["fitted_constant"] = res.fitted_constant;
    out.summary["constant_spread"] = res.constant_spread;
    return out;
}

Outputs run_embed(const ExperimentConfig& cfg, int) {
    reject_unknown_keys(cfg, with_common({"p_src", "q_src", "s_src", "p_tgt", "q_tgt", "s_tgt",
                                          "scale", "coefficients", "count", "instances"}));
    const auto an = aniso_from(cfg);
    const auto src = params_from(cfg, an, "p_src", "q_src", "s_src");
    const auto tgt = params_from(cfg, an, "p_tgt", "q_tgt", "s_tgt");
    const Scale scale = cfg.get_or("scale", "f") == "b" ? Scale::besov : Scale::triebel;
    const int instances = cfg.get_int_or("instances", 10);
    Outputs out;
    out.csv_lines.push_back("instance,ratio");
    double worst = 0.0;
    for (int t = 0; t < instances; ++t) {
        ExperimentConfig sub = cfg;
        sub.kv["seed"] = std::to_string(cfg.get_seed() + static_cast<std::uint64_t>(t));
        const auto coeffs = coefficients_from(sub, an);
        const double ratio = embedding_check(src, tgt, coeffs, scale);
        worst = std::max(worst, ratio);
        out.csv_lines.push_back(std::to_string(t) + "," + fmt(ratio));
    }
    out.summary["max_ratio"] = worst;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        const CliArgs args = parse_args(argc, argv);
        const ExperimentConfig cfg = load_config(args.config_path);
        if (cfg.has("experiment") && cfg.get("experiment") != args.subcommand)
            throw config_error("config: experiment name does not match subcommand");

        int threads = resolve_threads(cfg);
        if (args.threads_override > 0) threads = args.threads_override;

        Outputs out;
        if (args.subcommand == "basis-check")
            out = run_basis_check(cfg, threads);
        else if (args.subcommand == "complete-check")
            out = run_complete_check(cfg, threads);
        else if (args.subcommand == "norm")
            out = run_norm(cfg, threads);
        else if (args.subcommand == "approx-decay")
            out = run_approx_decay(cfg, threads);
        else if (args.subcommand == "democracy")
            out = run_democracy(cfg, threads);
        else if (args.subcommand == "bernstein")
            out = run_bernstein(cfg, threads);
        else if (args.subcommand == "jackson")
            out = run_jackson(cfg, threads);
        else if (args.subcommand == "embed")
            out = run_embed(cfg, threads);
        else
            throw config_error("unknown experiment '" + args.subcommand + "'");

        write_outputs(args, args.subcommand, cfg, out);
        return 0;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const accuracy_error& e) {
        std::cerr << "accuracy flag: " << e.what() << "\n";
        return 4;
    } catch (const domain_error& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
