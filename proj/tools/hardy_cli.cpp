// Command-line front end: solve, spectrum, asymptote, widths, oracle,
// selftest. Reports embed a RunManifest and are byte-deterministic for a
// fixed seed.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardy/asymptotics.hpp"
#include "hardy/iteration.hpp"
#include "hardy/manifest.hpp"
#include "hardy/oracle.hpp"
#include "hardy/spectrum.hpp"
#include "hardy/widths.hpp"

using nlohmann::json;
using namespace hardy;

namespace {

struct CommonOpts {
    double p = 2.0, q = 2.0;
    std::string interval = "0,1";
    std::string u = "1", v = "1";
    int grid_level = 12;
    double tol = 1e-10;
    std::uint64_t seed = 0;
    int starts = 16;
    std::string mode; // "", "max", "min"
    std::string out;
    std::string format = "csv";
    std::string spec_file;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--p", o.p, "exponent p in (1, inf)");
    cmd->add_option("--q", o.q, "exponent q in (1, inf)");
    cmd->add_option("--interval", o.interval, "interval as a,b");
    cmd->add_option("--u", o.u, "weight u(x) expression");
    cmd->add_option("--v", o.v, "weight v(x) expression");
    cmd->add_option("--grid-level", o.grid_level, "grid has 2^L+1 nodes");
    cmd->add_option("--tol", o.tol, "iteration tolerance");
    cmd->add_option("--seed", o.seed, "rng seed for multistart");
    cmd->add_option("--starts", o.starts, "multistart count");
    cmd->add_option("--mode", o.mode, "max|min (default from p,q)");
    cmd->add_option("--out", o.out, "output path (default stdout)");
    cmd->add_option("--format", o.format, "csv|json");
    cmd->add_option("--spec", o.spec_file, "load problem spec from JSON file");
}

Interval parse_interval(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw Error("interval must be given as a,b");
    return Interval(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

void load_spec_file(CommonOpts& o) {
    std::ifstream in(o.spec_file);
    if (!in) throw Error("cannot open spec file " + o.spec_file);
    json j = json::parse(in);
    if (j.contains("p")) o.p = j["p"].get<double>();
    if (j.contains("q")) o.q = j["q"].get<double>();
    if (j.contains("interval")) {
        const auto& iv = j["interval"];
        o.interval = format_sig17(iv[0].get<double>()) + "," +
                     format_sig17(iv[1].get<double>());
    }
    if (j.contains("u")) o.u = j["u"].get<std::string>();
    if (j.contains("v")) o.v = j["v"].get<std::string>();
    if (j.contains("grid_level")) o.grid_level = j["grid_level"].get<int>();
    if (j.contains("tol")) o.tol = j["tol"].get<double>();
}

ProblemSpec build_spec(CommonOpts& o) {
    if (!o.spec_file.empty()) load_spec_file(o);
    GridPtr grid = make_grid(parse_interval(o.interval), o.grid_level);
    WeightPair weights(parse_weight(o.u), parse_weight(o.v), grid);
    return ProblemSpec(o.p, o.q, grid, weights);
}

SearchMode default_mode(const CommonOpts& o) {
    if (o.mode == "max") return SearchMode::max;
    if (o.mode == "min") return SearchMode::min;
    if (!o.mode.empty()) throw Error("mode must be max or min");
    // q < p favors lambda-hat (max); p < q favors lambda-check (min).
    return o.q < o.p ? SearchMode::max : SearchMode::min;
}

SearchConfig make_config(const CommonOpts& o, int n) {
    SearchConfig cfg;
    cfg.n = n;
    cfg.mode = default_mode(o);
    cfg.starts = o.starts;
    cfg.rng_seed = o.seed;
    cfg.inner_tol = o.tol;
    return cfg;
}

RunManifest make_manifest(const std::string& command, const CommonOpts& o) {
    RunManifest m;
    m.command = command;
    m.p = o.p;
    m.q = o.q;
    const Interval iv = parse_interval(o.interval);
    m.interval_a = iv.a;
    m.interval_b = iv.b;
    m.u_expr = o.u;
    m.v_expr = o.v;
    m.grid_level = o.grid_level;
    m.tol = o.tol;
    m.rng_seed = o.seed;
    m.starts = o.starts;
    m.mode = o.mode.empty()
                 ? (default_mode(o) == SearchMode::max ? "max" : "min")
                 : o.mode;
    if (const char* ts = std::getenv("HARDY_TIMESTAMP")) m.timestamp = ts;
    return m;
}

json manifest_json(const RunManifest& m) {
    return json{{"command", m.command},
                {"p", m.p},
                {"q", m.q},
                {"interval", {m.interval_a, m.interval_b}},
                {"u", m.u_expr},
                {"v", m.v_expr},
                {"grid_level", m.grid_level},
                {"tol", m.tol},
                {"rng_seed", m.rng_seed},
                {"starts", m.starts},
                {"mode", m.mode},
                {"tool_version", m.tool_version},
                {"timestamp", m.timestamp}};
}

std::string manifest_csv_comment(const RunManifest& m) {
    std::ostringstream os;
    os << "# manifest command=" << m.command << " p=" << format_sig17(m.p)
       << " q=" << format_sig17(m.q) << " interval=" << format_sig17(m.interval_a)
       << "," << format_sig17(m.interval_b) << " u=" << m.u_expr
       << " v=" << m.v_expr << " grid_level=" << m.grid_level
       << " tol=" << format_sig17(m.tol) << " seed=" << m.rng_seed
       << " starts=" << m.starts << " mode=" << m.mode
       << " version=" << m.tool_version << " timestamp=" << m.timestamp
       << "\n";
    return os.str();
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw Error("cannot open output file " + o.out);
        f << text;
    }
}

void dump_function(const std::string& path, const SampledFunction& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path);
    out << "x,value\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        out << format_sig17(f.grid->node(i)) << ","
            << format_sig17(f.values[i]) << "\n";
}

int run_solve(CommonOpts& o, int n, const std::string& dump_g,
              const std::string& dump_f) {
    ProblemSpec spec = build_spec(o);
    SearchConfig cfg = make_config(o, n);
    SpectrumResult res = lambda_extremes(spec, cfg);
    const SpectralTriple& t = res.best_triple;
    const double gq = lp_norm(t.g, spec.q);
    RunManifest m = make_manifest("solve", o);

    if (!dump_g.empty()) dump_function(dump_g, t.g);
    if (!dump_f.empty()) dump_function(dump_f, t.f);

    if (o.format == "json") {
        json j{{"manifest", manifest_json(m)},
               {"n", n},
               {"lambda", t.lambda},
               {"nodal_count", t.nodal_count},
               {"residual", t.residual_value},
               {"g_norm_q", gq},
               {"starts_converged", res.starts_converged}};
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << manifest_csv_comment(m)
           << "n,lambda,nodal_count,residual,g_norm_q,starts_converged\n"
           << n << "," << format_sig17(t.lambda) << "," << t.nodal_count << ","
           << format_sig17(t.residual_value) << "," << format_sig17(gq) << ","
           << res.starts_converged << "\n";
        emit(o, os.str());
    }
    return 0;
}

int run_spectrum(CommonOpts& o, int n) {
    ProblemSpec spec = build_spec(o);
    SpectrumResult res = lambda_extremes(spec, make_config(o, n));
    RunManifest m = make_manifest("spectrum", o);
    if (o.format == "json") {
        json lams = json::array();
        for (const auto& [lam, z] : res.all_found) {
            json zj = json::array();
            for (double zi : z.z) zj.push_back(zi);
            lams.push_back(json{{"lambda", lam}, {"z", zj}});
        }
        json j{{"manifest", manifest_json(m)},
               {"n", n},
               {"lambda_extreme", res.lambda_extreme},
               {"found", lams},
               {"starts_used", res.starts_used},
               {"starts_converged", res.starts_converged}};
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << manifest_csv_comment(m) << "n,lambda\n";
        for (const auto& [lam, z] : res.all_found)
            os << n << "," << format_sig17(lam) << "\n";
        emit(o, os.str());
    }
    return 0;
}

int run_asymptote(CommonOpts& o, int nmax) {
    if (nmax < 4) throw Error("nmax must be >= 4");
    ProblemSpec spec = build_spec(o);

    std::vector<std::pair<int, double>> lambdas(
        static_cast<std::size_t>(nmax) + 1);
    std::vector<std::string> errors(lambdas.size());
#pragma omp parallel for schedule(dynamic)
    for (int n = 0; n <= nmax; ++n) {
        try {
            SearchConfig cfg = make_config(o, n);
            lambdas[n] = {n, lambda_extremes(spec, cfg).lambda_extreme};
        } catch (const std::exception& e) {
            errors[n] = e.what();
        }
    }
    for (int n = 0; n <= nmax; ++n)
        if (!errors[n].empty())
            throw Error("n=" + std::to_string(n) + ": " + errors[n]);

    AsymptoticsReport rep = asymptote_report(spec, lambdas);
    RunManifest m = make_manifest("asymptote", o);
    if (o.format == "json") {
        json rows = json::array();
        for (const auto& r : rep.rows)
            rows.push_back(json{{"n", r.n},
                                {"lambda", r.lambda},
                                {"n_lambda_pow", r.n_lambda_pow}});
        json j{{"manifest", manifest_json(m)},
               {"rows", rows},
               {"c_pq", rep.c_pq},
               {"weight_integral", rep.weight_integral_value},
               {"weight_integral_alt", weight_integral_alt(spec)},
               {"predicted_limit", rep.predicted_limit},
               {"extrapolated_limit", rep.extrapolated_limit},
               {"relative_gap", rep.relative_gap}};
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << manifest_csv_comment(m)
           << "n,lambda,n_lambda_pow,predicted_limit,extrapolated_limit\n";
        for (const auto& r : rep.rows)
            os << r.n << "," << format_sig17(r.lambda) << ","
               << format_sig17(r.n_lambda_pow) << ","
               << format_sig17(rep.predicted_limit) << ","
               << format_sig17(rep.extrapolated_limit) << "\n";
        emit(o, os.str());
    }
    std::cerr << "predicted=" << format_sig17(rep.predicted_limit)
              << " extrapolated=" << format_sig17(rep.extrapolated_limit)
              << " relative_gap=" << format_sig17(rep.relative_gap) << "\n";
    return 0;
}

int run_widths(CommonOpts& o, int n) {
    ProblemSpec spec = build_spec(o);
    WidthsReport rep = widths_report(spec, n, make_config(o, n));
    RunManifest m = make_manifest("widths", o);
    if (o.format == "json") {
        json j{{"manifest", manifest_json(m)},
               {"n", rep.n},
               {"kolmogorov_lb", rep.kolmogorov_lb},
               {"bernstein_val", rep.bernstein_val},
               {"approx_ub", rep.approx_ub},
               {"lambda_hat", rep.lambda_hat},
               {"lambda_check", rep.lambda_check},
               {"lambda_hat_pow", rep.lambda_hat_pow},
               {"lambda_check_pow", rep.lambda_check_pow},
               {"union_max_pow", rep.union_max_pow}};
        emit(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << manifest_csv_comment(m)
           << "n,kolmogorov_lb,bernstein_val,approx_ub,lambda_hat_pow,"
              "lambda_check_pow,union_max_pow\n"
           << rep.n << "," << format_sig17(rep.kolmogorov_lb) << ","
           << format_sig17(rep.bernstein_val) << ","
           << format_sig17(rep.approx_ub) << ","
           << format_sig17(rep.lambda_hat_pow) << ","
           << format_sig17(rep.lambda_check_pow) << ","
           << format_sig17(rep.union_max_pow) << "\n";
        emit(o, os.str());
    }
    return 0;
}

int run_oracle(CommonOpts& o, int n, int count) {
    RunManifest m = make_manifest("oracle", o);
    std::ostringstream os;
    json j{{"manifest", manifest_json(m)}, {"n", n}};
    os << manifest_csv_comment(m);
    if (o.p == 2.0 && o.q == 2.0) {
        ProblemSpec spec = build_spec(o);
        const auto s = svd_eigen_p2(spec, std::max(count, n + 1));
        j["singular_values"] = s;
        j["lambda"] = std::pow(s[static_cast<std::size_t>(n)], -2.0);
        if (o.u == "1" && o.v == "1")
            j["classical_lambda"] = classical_eigen_p2(n, spec.interval());
        os << "k,singular_value\n";
        for (std::size_t k = 0; k < s.size(); ++k)
            os << (k + 1) << "," << format_sig17(s[k]) << "\n";
    } else {
        if (o.u != "1" || o.v != "1")
            throw Error("shooting oracle supports u = v = 1 only");
        const double lam = shoot_pq_laplacian(o.p, o.q, n, parse_interval(o.interval));
        j["lambda"] = lam;
        os << "n,lambda\n" << n << "," << format_sig17(lam) << "\n";
    }
    emit(o, o.format == "json" ? j.dump(2) + "\n" : os.str());
    return 0;
}

int run_selftest();

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral numbers and widths of weighted Hardy-type operators"};
    app.require_subcommand(1);

    CommonOpts o;
    int n = 0, nmax = 12, count = 0;
    std::string dump_g, dump_f;

    CLI::App* solve = app.add_subcommand("solve", "compute one spectral triple");
    add_common(solve, o);
    solve->add_option("--n", n, "target nodal count of g");
    solve->add_option("--dump-g", dump_g, "write g as x,value CSV");
    solve->add_option("--dump-f", dump_f, "write f as x,value CSV");

    CLI::App* spectrum = app.add_subcommand("spectrum", "all distinct lambdas at n");
    add_common(spectrum, o);
    spectrum->add_option("--n", n, "target nodal count");

    CLI::App* asym = app.add_subcommand("asymptote", "n*lambda_n^{-1/q} vs the limit");
    add_common(asym, o);
    asym->add_option("--nmax", nmax, "largest nodal count in the sweep");

    CLI::App* widths = app.add_subcommand("widths", "width estimates at n");
    add_common(widths, o);
    widths->add_option("--n", n, "nodal count");

    CLI::App* oracle = app.add_subcommand("oracle", "independent ground truth");
    add_common(oracle, o);
    oracle->add_option("--n", n, "eigenvalue index");
    oracle->add_option("--count", count, "number of singular values (p=q=2)");

    app.add_subcommand("selftest", "run the built-in checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return run_solve(o, n, dump_g, dump_f);
        if (spectrum->parsed()) return run_spectrum(o, n);
        if (asym->parsed()) return run_asymptote(o, nmax);
        if (widths->parsed()) return run_widths(o, n);
        if (oracle->parsed()) return run_oracle(o, n, count);
        return run_selftest();
    } catch (const NotConverged& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NodalCountMissed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const EmptySpectrum& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BracketFailed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

namespace {

int run_selftest() {
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };
    auto near = [](double a, double b, double rel) {
        return std::fabs(a - b) <= rel * std::fabs(b);
    };

    check("signed_power(-2,3) == -4", signed_power(-2.0, 3.0) == -4.0);
    check("signed_power identity p=2", signed_power(0.37, 2.0) == 0.37);
    check("signed_power round trip",
          near(signed_power(signed_power(0.7, 3.0), 1.5), 0.7, 1e-12));

    GridPtr grid = make_grid(Interval(0.0, 1.0), 10);
    auto ones = SampledFunction::sample(grid, [](double) { return 1.0; });
    check("lp_norm of 1 on [0,1]", near(lp_norm(ones, 2.0), 1.0, 1e-12));

    auto sin3 = SampledFunction::sample(
        grid, [](double x) { return std::sin(3.0 * M_PI * x); });
    check("Z(sin 3 pi x) == 2", count_zeros(sin3) == 2);
    check("P(sin 3 pi x) == 2", count_sign_changes(sin3) == 2);
    auto touch = SampledFunction::sample(
        grid, [](double x) { return (x - 0.5) * (x - 0.5); });
    check("Z touching == 1", count_zeros(touch) == 1);
    check("P touching == 0", count_sign_changes(touch) == 0);

    check("parse 1+x at 0.5", parse_weight("1+x").eval(0.5) == 1.5);
    check("precedence 2+3*4", parse_weight("2+3*4").eval(0.0) == 14.0);
    check("right-assoc 2^3^2", parse_weight("2^3^2").eval(0.0) == 512.0);

    check("c_22 == 1/pi", near(constant_cpq(2.0, 2.0), 1.0 / M_PI, 1e-12));

    // p = q = 2 oracle equivalences on a modest grid.
    try {
        GridPtr g12 = make_grid(Interval(0.0, 1.0), 12);
        WeightPair w11(parse_weight("1"), parse_weight("1"), g12);
        ProblemSpec spec(2.0, 2.0, g12, w11);
        IterationOptions opts;
        opts.tol = 1e-12;
        auto [triple, trace] =
            run_iteration(spec, initial_sign_function(spec, SignPattern::constant(0)), opts);
        check("iteration lambda_0 == pi^2/4",
              near(triple.lambda, classical_eigen_p2(0, spec.interval()), 1e-5));
        const auto s = svd_eigen_p2(spec, 2);
        check("svd s_1 == 2/pi", near(s[0], 2.0 / M_PI, 1e-5));
        check("iteration matches svd",
              near(std::pow(triple.lambda, -0.5), s[0], 1e-6));
        check("shooting matches classical",
              near(shoot_pq_laplacian(2.0, 2.0, 0, Interval(0.0, 1.0)),
                   classical_eigen_p2(0, Interval(0.0, 1.0)), 1e-7));
    } catch (const std::exception& e) {
        std::cout << "FAIL oracle equivalence: " << e.what() << "\n";
        ++failures;
    }

    std::cout << (failures == 0 ? "selftest OK" : "selftest FAILED") << "\n";
    return failures == 0 ? 0 : 1;
}

} // namespace
