// Experiment driver: truncated formal inverses, weak* convergence sweeps,
// Bernoulli-factor sampling, Monte Carlo Fourier estimates, and the
// verification suites, with reproducible file outputs.
//
// Exit status: 0 success, 1 verification failure, 2 solver failure,
// 3 configuration error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "algact/algact.hpp"
#include "algact/serialize.hpp"

namespace fs = std::filesystem;
using namespace algact;

namespace {

struct ExperimentConfig {
    std::string preset_name;
    std::string group = "Z";
    std::string f_expr;
    std::string method = "neumann";
    std::int64_t radius = 20;
    double eps = 0.0;
    int max_iters = 2000;
    int grid = 1 << 12;
    std::size_t ball_cap = kDefaultBallCap;
    double decay_gate = 0.5;
    std::vector<std::string> alphas;
    std::string m_list = "1..20";
    int m = 1;
    std::int64_t window_radius = 2;
    std::int64_t samples = 1000;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string suite = "all";
    std::string out_dir = ".";

    json to_json() const {
        json j;
        j["preset"] = preset_name;
        j["group"] = group;
        j["f"] = f_expr;
        j["method"] = method;
        j["radius"] = radius;
        j["eps"] = eps;
        j["max_iters"] = max_iters;
        j["grid"] = grid;
        j["ball_cap"] = ball_cap;
        j["decay_gate"] = decay_gate;
        j["alphas"] = alphas;
        j["m_list"] = m_list;
        j["m"] = m;
        j["window_radius"] = window_radius;
        j["N"] = samples;
        if (seed_set) j["seed"] = seed;
        j["suite"] = suite;
        j["out"] = out_dir;
        return j;
    }
};

void load_config_file(ExperimentConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot read config file " + path);
    json j = json::parse(in);
    if (j.contains("preset")) cfg.preset_name = j["preset"].get<std::string>();
    if (j.contains("group")) cfg.group = j["group"].get<std::string>();
    if (j.contains("f")) cfg.f_expr = j["f"].get<std::string>();
    if (j.contains("method")) cfg.method = j["method"].get<std::string>();
    if (j.contains("radius")) cfg.radius = j["radius"].get<std::int64_t>();
    if (j.contains("eps")) cfg.eps = j["eps"].get<double>();
    if (j.contains("max_iters")) cfg.max_iters = j["max_iters"].get<int>();
    if (j.contains("grid")) cfg.grid = j["grid"].get<int>();
    if (j.contains("ball_cap")) cfg.ball_cap = j["ball_cap"].get<std::size_t>();
    if (j.contains("decay_gate")) cfg.decay_gate = j["decay_gate"].get<double>();
    if (j.contains("alphas")) cfg.alphas = j["alphas"].get<std::vector<std::string>>();
    if (j.contains("m_list")) cfg.m_list = j["m_list"].get<std::string>();
    if (j.contains("m")) cfg.m = j["m"].get<int>();
    if (j.contains("window_radius")) cfg.window_radius = j["window_radius"].get<std::int64_t>();
    if (j.contains("N")) cfg.samples = j["N"].get<std::int64_t>();
    if (j.contains("seed")) {
        cfg.seed = j["seed"].get<std::uint64_t>();
        cfg.seed_set = true;
    }
    if (j.contains("suite")) cfg.suite = j["suite"].get<std::string>();
    if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
}

// option pointers for one subcommand, so config-file values can be
// overridden only by flags that actually appeared
struct SubOpts {
    CLI::App* sub = nullptr;
    CLI::Option *config = nullptr, *preset = nullptr, *group = nullptr, *f = nullptr,
                *method = nullptr, *radius = nullptr, *eps = nullptr, *max_iters = nullptr,
                *grid = nullptr, *ball_cap = nullptr, *decay_gate = nullptr, *alpha = nullptr,
                *m_list = nullptr, *m = nullptr, *window_radius = nullptr, *N = nullptr,
                *seed = nullptr, *suite = nullptr, *out = nullptr;

    // flag-bound scratch values
    std::string v_config, v_preset, v_group, v_f, v_method, v_m_list, v_suite, v_out;
    std::int64_t v_radius = 0, v_window_radius = 0, v_N = 0;
    double v_eps = 0, v_decay_gate = 0;
    int v_max_iters = 0, v_grid = 0, v_m = 0;
    std::size_t v_ball_cap = 0;
    std::uint64_t v_seed = 0;
    std::vector<std::string> v_alphas;

    void add_common(CLI::App* s) {
        sub = s;
        config = s->add_option("--config", v_config, "JSON config file; flags override");
        preset = s->add_option("--preset", v_preset, "named example preset");
        group = s->add_option("--group", v_group, "group descriptor: Z, Z^2, F2, Z/5 x Z/5");
        f = s->add_option("--f", v_f, "group-ring expression or [[...],[...]] matrix");
        method = s->add_option("--method", v_method, "neumann | cg-normal | torus-grid");
        radius = s->add_option("--radius", v_radius, "truncation ball radius R");
        eps = s->add_option("--eps", v_eps, "residual tolerance (0 = group default)");
        max_iters = s->add_option("--max-iters", v_max_iters, "iteration cap");
        grid = s->add_option("--grid", v_grid, "torus grid per dimension (power of 2)");
        ball_cap = s->add_option("--ball-cap", v_ball_cap, "max ball size");
        decay_gate = s->add_option("--decay-gate", v_decay_gate, "shell-decay threshold");
        out = s->add_option("--out", v_out, "output directory");
    }

    ExperimentConfig resolve() const {
        ExperimentConfig cfg;
        if (config && config->count()) load_config_file(cfg, v_config);
        if (preset && preset->count()) cfg.preset_name = v_preset;
        if (group && group->count()) cfg.group = v_group;
        if (f && f->count()) cfg.f_expr = v_f;
        if (method && method->count()) cfg.method = v_method;
        if (radius && radius->count()) cfg.radius = v_radius;
        if (eps && eps->count()) cfg.eps = v_eps;
        if (max_iters && max_iters->count()) cfg.max_iters = v_max_iters;
        if (grid && grid->count()) cfg.grid = v_grid;
        if (ball_cap && ball_cap->count()) cfg.ball_cap = v_ball_cap;
        if (decay_gate && decay_gate->count()) cfg.decay_gate = v_decay_gate;
        if (alpha && alpha->count()) cfg.alphas = v_alphas;
        if (m_list && m_list->count()) cfg.m_list = v_m_list;
        if (m && m->count()) cfg.m = v_m;
        if (window_radius && window_radius->count()) cfg.window_radius = v_window_radius;
        if (N && N->count()) cfg.samples = v_N;
        if (seed && seed->count()) {
            cfg.seed = v_seed;
            cfg.seed_set = true;
        }
        if (suite && suite->count()) cfg.suite = v_suite;
        if (out && out->count()) cfg.out_dir = v_out;
        return cfg;
    }
};

struct Problem {
    GroupDescriptor G;
    GroupRingMatrix<std::int64_t> f;
};

Problem resolve_problem(const ExperimentConfig& cfg) {
    if (!cfg.preset_name.empty()) {
        auto p = preset(cfg.preset_name);
        return {p.G, p.f};
    }
    if (cfg.f_expr.empty()) throw config_error("need --preset or --group/--f");
    auto G = GroupDescriptor::parse(cfg.group);
    return {G, parse_ring_matrix(G, cfg.f_expr)};
}

SolverConfig solver_config(const ExperimentConfig& cfg) {
    SolverConfig s;
    s.radius = cfg.radius;
    s.eps = cfg.eps;
    s.max_iters = cfg.max_iters;
    s.method = parse_method(cfg.method);
    s.grid = cfg.grid;
    s.ball_cap = cfg.ball_cap;
    s.decay_gate = cfg.decay_gate;
    return s;
}

std::vector<int> parse_m_list(const std::string& s) {
    std::vector<int> out;
    auto dots = s.find("..");
    if (dots != std::string::npos) {
        int lo = std::stoi(s.substr(0, dots));
        int hi = std::stoi(s.substr(dots + 2));
        for (int m = lo; m <= hi; ++m) out.push_back(m);
        return out;
    }
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

FinSuppVector<std::int64_t> parse_alpha(const GroupDescriptor& G, int n, const std::string& s) {
    auto m = parse_ring_matrix(G, s);
    FinSuppVector<std::int64_t> a(G, n);
    if (m.rows() == 1 && m.cols() == 1 && n == 1) {
        a[0] = m.at(0, 0);
        return a;
    }
    if (m.cols() != 1 || m.rows() != n)
        throw config_error("alpha must be an n-component column, n = " + std::to_string(n));
    for (int i = 0; i < n; ++i) a[i] = m.at(i, 0);
    return a;
}

void write_text(const fs::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open output file " + path.string());
    out << body;
}

fs::path ensure_out_dir(const ExperimentConfig& cfg) {
    fs::path dir(cfg.out_dir);
    if (!dir.empty()) fs::create_directories(dir);
    return dir;
}

// ---------------------------------------------------------------- inverse

int cmd_inverse(const ExperimentConfig& cfg) {
    auto prob = resolve_problem(cfg);
    auto res = solve_inverse(prob.f, solver_config(cfg));
    json out;
    out["config"] = cfg.to_json();
    out["group"] = prob.G.str();
    out["report"] = to_json(res.report);
    out["xi"] = to_json(res.xi);
    out["report"]["coefficients"] = out["xi"]["coefficients"];
    auto dir = ensure_out_dir(cfg);
    write_text(dir / "inverse_report.json", out.dump(2) + "\n");
    std::cout << "wrote " << (dir / "inverse_report.json").string() << "\n"
              << "method " << res.report.method << ", R " << res.report.radius
              << ", interior residual " << res.report.residual_left << ", full residual "
              << res.report.residual_left_full << "\n";
    return 0;
}

// ---------------------------------------------------------------- converge

int cmd_converge(const ExperimentConfig& cfg) {
    auto prob = resolve_problem(cfg);
    auto res = solve_inverse(prob.f, solver_config(cfg));
    auto ms = parse_m_list(cfg.m_list);
    if (cfg.alphas.empty()) throw config_error("converge needs at least one --alpha");

    auto dir = ensure_out_dir(cfg);
    std::string csv = "# config: " + cfg.to_json().dump() + "\n";
    csv += "m,alpha_id,exact,tail_bound,envelope\n";
    json rows_json = json::array();
    for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
        auto alpha = parse_alpha(prob.G, prob.f.cols(), cfg.alphas[ai]);
        auto rows = convergence_sweep(MuSpec(ms.front(), res.xi), alpha, ms);
        std::string plot;
        for (const auto& r : rows) {
            char buf[256];
            std::snprintf(buf, sizeof(buf), "%d,%s,%.17g,%.17g,%.17g\n", r.m,
                          cfg.alphas[ai].c_str(), r.exact_value, r.tail_bound, r.envelope);
            csv += buf;
            std::snprintf(buf, sizeof(buf), "%d %.17g\n", r.m, std::fabs(r.exact_value));
            plot += buf;
            json jr;
            jr["m"] = r.m;
            jr["alpha"] = cfg.alphas[ai];
            jr["exact"] = r.exact_value;
            jr["tail_bound"] = r.tail_bound;
            jr["envelope"] = r.envelope;
            rows_json.push_back(jr);
        }
        write_text(dir / ("converge_plot_" + std::to_string(ai) + ".txt"), plot);
    }
    write_text(dir / "converge.csv", csv);
    json out;
    out["config"] = cfg.to_json();
    out["solver_report"] = to_json(res.report);
    out["rows"] = rows_json;
    write_text(dir / "converge.json", out.dump(2) + "\n");
    std::cout << "wrote " << (dir / "converge.csv").string() << " (" << rows_json.size()
              << " rows)\n";
    return 0;
}

// ---------------------------------------------------------------- sample

int cmd_sample(const ExperimentConfig& cfg) {
    if (!cfg.seed_set) throw config_error("stochastic runs require --seed");
    auto prob = resolve_problem(cfg);
    auto res = solve_inverse(prob.f, solver_config(cfg));
    auto window = ball_window(prob.G, prob.f.cols(), cfg.window_radius, cfg.ball_cap);
    std::int64_t source_radius = cfg.window_radius + res.xi.radius;

    MuSpec spec(cfg.m, res.xi);
    std::string csv = "# config: " + cfg.to_json().dump() + "\n";
    csv += "# solver residuals: interior_left " + std::to_string(res.xi.residual_left) +
           ", full_left " + std::to_string(res.xi.residual_left_full) + "\n";
    csv += "sample,component,element,value\n";
    for (std::int64_t s = 0; s < cfg.samples; ++s) {
        auto theta = bernoulli_factor_sample(spec, window, cfg.seed, std::uint64_t(s),
                                             source_radius);
        for (const auto& [key, v] : theta.values()) {
            char buf[256];
            std::snprintf(buf, sizeof(buf), "%lld,%d,%s,%.17g\n", static_cast<long long>(s),
                          key.first, element_str(prob.G, key.second).c_str(), v);
            csv += buf;
        }
    }
    auto dir = ensure_out_dir(cfg);
    write_text(dir / "samples.csv", csv);
    std::cout << "wrote " << (dir / "samples.csv").string() << " (" << cfg.samples
              << " samples on window radius " << cfg.window_radius << ")\n";
    return 0;
}

// ---------------------------------------------------------------- mc

int cmd_mc(const ExperimentConfig& cfg) {
    if (!cfg.seed_set) throw config_error("stochastic runs require --seed");
    auto prob = resolve_problem(cfg);
    auto res = solve_inverse(prob.f, solver_config(cfg));
    if (cfg.alphas.empty()) throw config_error("mc needs at least one --alpha");

    MuSpec spec(cfg.m, res.xi);
    json reports = json::array();
    std::string csv = "# config: " + cfg.to_json().dump() + "\n";
    csv += "m,alpha_id,exact,tail_bound,mc_re,mc_im,stderr,N,seed\n";
    for (const auto& astr : cfg.alphas) {
        auto alpha = parse_alpha(prob.G, prob.f.cols(), astr);
        auto rep = monte_carlo_fourier(spec, alpha, cfg.samples, cfg.seed);
        rep.alpha_id = astr;
        reports.push_back(to_json(rep));
        csv += csv_row(cfg.m, rep) + "\n";
        std::cout << "alpha " << astr << ": exact " << rep.exact_value << ", mc ("
                  << rep.mc_estimate.real() << ", " << rep.mc_estimate.imag() << "), stderr "
                  << rep.mc_stderr << ", tail " << rep.tail_bound << "\n";
    }
    json out;
    out["config"] = cfg.to_json();
    out["solver_report"] = to_json(res.report);
    out["reports"] = reports;
    auto dir = ensure_out_dir(cfg);
    write_text(dir / "mc.json", out.dump(2) + "\n");
    write_text(dir / "mc.csv", csv);
    std::cout << "wrote " << (dir / "mc.json").string() << "\n";
    return 0;
}

// ---------------------------------------------------------------- verify

struct SuiteResult {
    std::string name;
    bool pass;
    std::string detail;
};

void report(std::vector<SuiteResult>& all, const std::string& name, bool pass,
            const std::string& detail = "") {
    all.push_back({name, pass, detail});
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << " - " << detail;
    std::cout << "\n";
}

void suite_identities(std::vector<SuiteResult>& out, std::uint64_t seed) {
    // Prop 2.1 identities, exact over rationals, on Z^2 and F2
    std::uint64_t s = seed | 1;
    auto rnd = [&]() { s ^= s << 13; s ^= s >> 7; s ^= s << 17; return s; };
    bool ok = true;
    std::string detail;
    for (const char* grp : {"Z^2", "F2"}) {
        auto G = GroupDescriptor::parse(grp);
        auto ball = enumerate_ball(G, 3);
        for (int t = 0; t < 250 && ok; ++t) {
            int n = 1 + int(rnd() % 2);
            GroupRingMatrix<Rational> xi(G, n, n);
            FinSuppVector<Rational> alpha(G, n), beta(G, n);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < 3; ++j) {
                    alpha[i].add_to(ball[rnd() % ball.size()],
                                    Rational(std::int64_t(rnd() % 9) - 4, 1 + std::int64_t(rnd() % 4)));
                    beta[i].add_to(ball[rnd() % ball.size()],
                                   Rational(std::int64_t(rnd() % 9) - 4, 1 + std::int64_t(rnd() % 4)));
                }
                for (int j2 = 0; j2 < n; ++j2)
                    for (int j = 0; j < 3; ++j)
                        xi.at(i, j2).add_to(ball[rnd() % ball.size()],
                                            Rational(std::int64_t(rnd() % 9) - 4, 1 + std::int64_t(rnd() % 4)));
            }
            auto xs = xi.star();
            Rational lhs, rhs;
            for (int l = 0; l < n; ++l) {
                FinSupp<Rational> rxa(G), rxsb(G);
                for (int k = 0; k < n; ++k) {
                    rxa += convolve(alpha[k], xi.at(k, l));
                    rxsb += convolve(beta[k], xs.at(k, l));
                }
                for (const auto& [g, v] : rxa.coeffs()) lhs += v * beta[l].at(g);
                for (const auto& [g, v] : rxsb.coeffs()) rhs += v * alpha[l].at(g);
            }
            if (lhs != rhs) {
                ok = false;
                detail = std::string("adjoint pairing failed on ") + grp;
            }
        }
    }
    report(out, "identities (Prop 2.1, exact rational)", ok, detail);
}

void suite_residual_symmetry(std::vector<SuiteResult>& out) {
    bool ok = true;
    std::string detail;
    struct Case {
        const char* name;
        std::int64_t R;
        double eps;
    };
    for (const auto& c : {Case{"l1-dominant-z", 30, 1e-9}, Case{"l1-dominant-f2", 8, 1e-6},
                          Case{"harmonic-f2", 6, 1e-8}}) {
        auto p = preset(c.name);
        SolverConfig scfg;
        scfg.radius = c.R;
        scfg.eps = c.eps;
        try {
            auto res = neumann_inverse(p.f, scfg);
            if (!(res.xi.residual_left <= c.eps && res.xi.residual_right <= 10 * c.eps)) {
                ok = false;
                detail = std::string(c.name) + ": right residual " +
                         std::to_string(res.xi.residual_right);
            }
        } catch (const solver_error& e) {
            ok = false;
            detail = std::string(c.name) + ": " + e.what();
        }
    }
    report(out, "residual symmetry (Prop 2.2(iii) shadow)", ok, detail);
}

void suite_homoclinic(std::vector<SuiteResult>& out, std::uint64_t seed) {
    std::uint64_t s = seed | 1;
    auto rnd = [&]() { s ^= s << 13; s ^= s >> 7; s ^= s << 17; return s; };
    bool ok = true;
    std::string detail;
    for (const char* pname : {"l1-dominant-z", "harmonic-f2"}) {
        auto p = preset(pname);
        SolverConfig scfg;
        scfg.radius = p.G.kind == GroupKind::Free ? 6 : 30;
        scfg.eps = 1e-10;
        auto xi = neumann_inverse(p.f, scfg).xi;
        auto ball = enumerate_ball(p.G, 2);
        for (int t = 0; t < 50 && ok; ++t) {
            FinSuppVector<std::int64_t> alpha(p.G, 1), beta(p.G, 1);
            for (int j = 0; j < 3; ++j) {
                alpha[0].add_to(ball[rnd() % ball.size()], std::int64_t(rnd() % 7) - 3);
                beta[0].add_to(ball[rnd() % ball.size()], std::int64_t(rnd() % 7) - 3);
            }
            double pr = homoclinic_pairing(p.f, xi, alpha, beta);
            if (torus_dist(pr, 0.0) > 1e-4) {
                ok = false;
                detail = std::string(pname) + ": pairing " + std::to_string(pr);
            }
        }
    }
    report(out, "homoclinic pairing (Prop 2.3)", ok, detail);
}

void suite_oracle(std::vector<SuiteResult>& out, std::uint64_t seed) {
    bool ok = true;
    std::string detail;
    try {
        for (const char* grp : {"Z/2", "Z/3"}) {
            auto G = GroupDescriptor::parse(grp);
            GroupRingMatrix<std::int64_t> f(G, 1, 1);
            f.at(0, 0) = parse_ring_expr(G, "2e-g");
            FiniteModel model(G, f);
            auto xi = exact_inverse_finite(model);
            auto idrep = brute_force_identities(model, 100, seed);
            if (!idrep.pass) {
                ok = false;
                detail = idrep.witness;
                break;
            }
            FinSuppVector<std::int64_t> e(G, 1);
            e[0] = delta<std::int64_t>(G, identity(G));
            for (int m : {1, 2}) {
                auto bf = brute_force_mu_fourier(model, xi, m, e);
                double pf = finite_product_formula(model, xi, m, e);
                if (std::fabs(bf.real() - pf) > 1e-12 || std::fabs(bf.imag()) > 1e-12) {
                    ok = false;
                    detail = std::string(grp) + ": brute force vs product mismatch";
                }
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(out, "oracle (exact finite models)", ok, detail);
}

int cmd_verify(const ExperimentConfig& cfg) {
    if (!cfg.seed_set) throw config_error("verify uses randomized suites; --seed is required");
    std::vector<SuiteResult> results;
    bool want_all = cfg.suite == "all";
    if (want_all || cfg.suite == "identities") suite_identities(results, cfg.seed);
    if (want_all || cfg.suite == "residual-symmetry") suite_residual_symmetry(results);
    if (want_all || cfg.suite == "homoclinic") suite_homoclinic(results, cfg.seed);
    if (want_all || cfg.suite == "oracle") suite_oracle(results, cfg.seed);
    if (results.empty()) throw config_error("unknown suite: " + cfg.suite);

    json out;
    out["config"] = cfg.to_json();
    json arr = json::array();
    bool all_pass = true;
    for (const auto& r : results) {
        json jr;
        jr["suite"] = r.name;
        jr["pass"] = r.pass;
        jr["detail"] = r.detail;
        arr.push_back(jr);
        all_pass = all_pass && r.pass;
    }
    out["results"] = arr;
    out["pass"] = all_pass;
    auto dir = ensure_out_dir(cfg);
    write_text(dir / "verify.json", out.dump(2) + "\n");
    return all_pass ? 0 : 1;
}

int cmd_presets() {
    json out = json::array();
    for (const auto& name : preset_names()) {
        auto p = preset(name);
        json jp;
        jp["name"] = p.name;
        jp["group"] = p.G.str();
        jp["f"] = to_json(p.f);
        jp["l1_invertible"] = p.l1_invertible == Claim::Yes   ? "yes"
                              : p.l1_invertible == Claim::No  ? "no"
                                                              : "unknown";
        jp["rationale"] = p.rationale;
        out.push_back(jp);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for convolution operators, l2 formal inverses, "
                 "and Bernoulli-factor measures on group rings"};
    app.require_subcommand(1);

    SubOpts inv, conv, samp, mc, verf;

    inv.add_common(app.add_subcommand("inverse", "compute a truncated l2 formal inverse"));

    conv.add_common(app.add_subcommand("converge", "Fourier-coefficient sweep over m"));
    conv.alpha = conv.sub->add_option("--alpha", conv.v_alphas, "group-ring vector(s)");
    conv.m_list = conv.sub->add_option("--m-list", conv.v_m_list, "e.g. 1..50 or 1,3,9");

    samp.add_common(app.add_subcommand("sample", "draw factor-map samples on a window"));
    samp.m = samp.sub->add_option("--m", samp.v_m, "alphabet half-width");
    samp.window_radius = samp.sub->add_option("--window-radius", samp.v_window_radius,
                                              "window ball radius");
    samp.N = samp.sub->add_option("--N", samp.v_N, "number of samples");
    samp.seed = samp.sub->add_option("--seed", samp.v_seed, "RNG seed (required)");

    mc.add_common(app.add_subcommand("mc", "Monte Carlo Fourier coefficient estimate"));
    mc.m = mc.sub->add_option("--m", mc.v_m, "alphabet half-width");
    mc.alpha = mc.sub->add_option("--alpha", mc.v_alphas, "group-ring vector(s)");
    mc.N = mc.sub->add_option("--N", mc.v_N, "number of samples");
    mc.seed = mc.sub->add_option("--seed", mc.v_seed, "RNG seed (required)");

    verf.add_common(app.add_subcommand("verify", "run the verification suites"));
    verf.suite = verf.sub->add_option("--suite", verf.v_suite,
                                      "all | identities | residual-symmetry | homoclinic | oracle");
    verf.seed = verf.sub->add_option("--seed", verf.v_seed, "RNG seed (required)");

    auto* presets_cmd = app.add_subcommand("presets", "list the example presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (presets_cmd->parsed()) return cmd_presets();
        if (inv.sub->parsed()) return cmd_inverse(inv.resolve());
        if (conv.sub->parsed()) return cmd_converge(conv.resolve());
        if (samp.sub->parsed()) return cmd_sample(samp.resolve());
        if (mc.sub->parsed()) return cmd_mc(mc.resolve());
        if (verf.sub->parsed()) return cmd_verify(verf.resolve());
        std::cerr << "no subcommand\n";
        return 3;
    } catch (const solver_error& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 2;
    } catch (const ball_cap_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
