#include "sublevel/cli.hpp"
#include "sublevel/parser.hpp"
#include "sublevel/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

namespace sublevel {

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string join(const std::vector<QVector>& vs) {
    std::string s;
    for (const auto& v : vs) s += (s.empty() ? "" : " ") + to_string(v);
    return s.empty() ? "none" : s;
}

std::string hyperplane_text(const Hyperplane& h, const char* rel) {
    return "<" + to_string(h.normal) + ", y> " + rel + " " + to_string(h.offset);
}

std::string regime_text(const RegimeVerdict& v) {
    std::string s = to_string(v.kind);
    if (v.kind == RegimeKind::Sharp || v.kind == RegimeKind::UpperBoundOnly) {
        s += "  lambda^(-" + to_string(v.rho) + ")";
        if (v.log_power != 0) s += " (|log lambda|+1)^" + std::to_string(v.log_power);
    }
    if (!v.range.empty()) s += "  (" + v.range + ")";
    return s;
}

std::string opt_int(const std::optional<int>& v) { return v ? std::to_string(*v) : "none"; }

std::string degeneracy_text(const DegeneracyReport& d) {
    std::string s = "sigma " + std::to_string(d.sigma) + ": tau = " + opt_int(d.tau);
    if (d.declared) s += " (declared)";
    else if (d.numerical) s += " (numerical, h = " + format_double(d.h) + ")";
    else s += " (exact)";
    return s;
}

void write_json(const Json& j, const std::string& path, bool given, std::ostream& out) {
    if (!given) return;
    std::string text = j.dump(2) + "\n";
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

void print_analysis(const AnalysisReport& r, std::ostream& out) {
    const auto& n = r.newton;
    const auto& v = r.verdict;
    out << "polynomial: " << r.polynomial << "\n";
    out << "domain: " << r.domain << "  B = " << join(r.B) << "\n";
    out << "newton polyhedron: dim " << n.dim << ", " << n.face_count << " faces\n";
    out << "  vertices: " << join(n.vertices) << "\n";
    out << "  recession rays: " << join(n.recession_rays) << "\n";
    if (!n.recession_lineality.empty()) out << "  recession lineality: " << join(n.recession_lineality) << "\n";
    for (const auto& h : n.inequalities) out << "  " << hyperplane_text(h, ">=") << "\n";
    for (const auto& h : n.equations) out << "  " << hyperplane_text(h, "=") << "\n";
    if (n.diagonal.empty) out << "diagonal: empty\n";
    else out << "diagonal: [" << to_string(n.diagonal.lo) << ", " << to_string(n.diagonal.hi) << "]\n";
    out << "delta_for = " << to_string(n.delta_for) << ", k_for = " << opt_int(n.k_for)
        << "; delta_bac = " << to_string(n.delta_bac) << ", k_bac = " << opt_int(n.k_bac) << "\n";
    out << "balanced: " << (n.balanced ? "yes" : "no") << "; cone(B) strongly convex: "
        << (n.strongly_convex ? "yes" : "no") << "\n";
    out << "fan: " << r.fan.forward << " forward cells, " << r.fan.backward << " backward cells\n";
    out << "degeneracy: " << degeneracy_text(r.degeneracy);
    if (r.degeneracy_oscillatory) out << "; " << degeneracy_text(*r.degeneracy_oscillatory);
    out << "\n";
    out << "sublevel, large lambda: " << regime_text(v.large_lambda) << "\n";
    out << "sublevel, small lambda: " << regime_text(v.small_lambda) << "\n";
    out << "oscillatory, large lambda: " << regime_text(v.oscillatory_large) << "\n";
    out << "oscillatory, small lambda: " << regime_text(v.oscillatory_small) << "\n";
    if (v.integrability.empty) out << "integrability window: empty\n";
    else out << "integrability window: (" << to_string(v.integrability.lo) << ", " << to_string(v.integrability.hi) << ")\n";
    for (const auto& a : v.assumptions) out << "assumption: " << a << "\n";
    for (const auto& w : r.warnings) out << "warning: " << w << "\n";
}

struct Common {
    std::string poly;
    std::string domain = "global";
    std::string json_path;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("-P,--polynomial", c.poly, "phase polynomial, e.g. \"x1^4*x2^4*(1-x1^2-x2^2)^2\"")->required();
    app->add_option("-B,--domain", c.domain, "global, local, outer or a list such as \"[(2,-1)]\"");
    app->add_option("--json", c.json_path, "write JSON to the path, or to stdout when no path is given")
        ->expected(0, 1);
    app->add_option("--seed", c.seed, "random seed");
}

std::pair<LaurentPolynomial, DomainSpec> parse_inputs(const Common& c) {
    LaurentPolynomial p = parse_polynomial(c.poly);
    if (p.empty()) throw InputError("the zero polynomial has no Newton polyhedron");
    return {p, DomainSpec(parse_domain(c.domain, p.dim()))};
}

// Predicted regime verdict for the verifier's second fitting stage.
std::optional<Rational> predicted_rho(const RegimeVerdict& v) {
    if (v.kind != RegimeKind::Sharp || !v.rho.is_finite()) return std::nullopt;
    return v.rho.value();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Newton polyhedra, sublevel-set asymptotics and Monte Carlo verification"};
    app.require_subcommand(1);

    Common an, fa, ve, di;
    int sigma = 0;
    auto* analyze = app.add_subcommand("analyze", "indices, degeneracy type and asymptotic verdicts");
    add_common(analyze, an);
    analyze->add_option("--sigma", sigma, "lower end of the normal-crossing type (0 or 1)")->check(CLI::Range(0, 1));

    auto* fan = app.add_subcommand("fan", "oriented simplicial decomposition of the dual fan");
    add_common(fan, fa);

    std::string regime = "both", csv_path;
    std::optional<int> kmin, kmax, shells;
    int samples = 20000, threads = 0;
    auto* verify = app.add_subcommand("verify", "Monte Carlo sublevel measures and fitted exponents");
    add_common(verify, ve);
    verify->add_option("--regime", regime, "large, small or both")->check(CLI::IsMember({"large", "small", "both"}));
    verify->add_option("--kmin", kmin, "lambda = 2^k from k = kmin (large: default 6; small: default -14)");
    verify->add_option("--kmax", kmax, "up to k = kmax (large: default 14; small: default -6)");
    verify->add_option("--shells", shells, "shell radius J (default 16 large, 24 small)");
    verify->add_option("--samples", samples, "samples per shell");
    verify->add_option("--threads", threads, "worker threads (default: SUBLEVEL_THREADS or 1)");
    verify->add_option("--csv", csv_path, "write lambda,value,stderr rows");

    double lambda = 1;
    std::vector<int> J_list{4, 6, 8, 10, 12};
    int div_samples = 20000, div_threads = 0;
    auto* divergence = app.add_subcommand("divergence", "truncated measures for growing shell radius");
    add_common(divergence, di);
    divergence->add_option("--lambda", lambda, "lambda");
    divergence->add_option("--shells", J_list, "increasing shell radii, comma separated")->delimiter(',');
    divergence->add_option("--samples", div_samples, "samples per shell");
    divergence->add_option("--threads", div_threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        int code = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analyze) {
            AnalysisReport r = run_analysis(an.poly, an.domain, sigma, an.seed);
            bool json = analyze->count("--json") > 0;
            if (!(json && an.json_path.empty())) print_analysis(r, out);
            write_json(Json(r), an.json_path, json, out);
        } else if (*fan) {
            auto [p, b] = parse_inputs(fa);
            NewtonData nd = build_newton(p, b);
            OrientedSimplicialFan f = build_fan(nd);
            bool json = fan->count("--json") > 0;
            if (!(json && fa.json_path.empty())) {
                out << "polynomial: " << to_string(p) << "\n";
                out << "dual cone rays: " << join(f.ambient.rays) << "\n";
                for (std::size_t i = 0; i < f.cells.size(); ++i) {
                    const auto& c = f.cells[i];
                    out << "cell " << i << ": "
                        << (c.orientation == Orientation::Backward ? "backward" : "forward") << ", face "
                        << join(nd.face(c.owner).points) << ", rays " << join(c.rays) << ", M0 = " << c.M0.get_str()
                        << ", M1 = " << c.M1.get_str() << "\n";
                }
            }
            Json j = Json(f);
            j["polynomial"] = to_string(p);
            j["domain"] = fa.domain;
            write_json(j, fa.json_path, json, out);
        } else if (*verify) {
            auto [p, b] = parse_inputs(ve);
            NewtonData nd = build_newton(p, b);
            AsymptoticVerdict v = predict(nd, tau_search(nd, 0));
            std::vector<LambdaRegime> regimes;
            if (regime != "small") regimes.push_back(LambdaRegime::Large);
            if (regime != "large") regimes.push_back(LambdaRegime::Small);
            if (regimes.size() == 2 && (kmin || kmax))
                throw InputError("--kmin/--kmax need --regime large or small");
            Json runs = Json::array();
            std::vector<MeasureEstimate> all;
            for (auto rg : regimes) {
                bool large = rg == LambdaRegime::Large;
                int k0 = kmin.value_or(large ? 6 : -14), k1 = kmax.value_or(large ? 14 : -6);
                int J = shells.value_or(large ? 16 : 24);
                auto sweep = lambda_sweep(p, b, rg, k0, k1, J, samples, ve.seed, threads);
                const RegimeVerdict& pred = large ? v.large_lambda : v.small_lambda;
                FitOptions opt;
                opt.predicted_rho = predicted_rho(pred);
                FitResult fit = fit_indices(sweep, opt);
                out << to_string(rg) << " lambda, k = " << k0 << ".." << k1 << ", J = " << J << ", n = " << samples
                    << "\n";
                for (const auto& m : sweep)
                    out << "  lambda = " << format_double(m.lambda) << "  measure = " << format_double(m.value)
                        << " +- " << format_double(m.std_error) << "  tail = " << format_double(m.tail_indicator)
                        << "\n";
                out << "  rho_hat = " << format_double(fit.rho_hat) << " +- " << format_double(fit.rho_stderr);
                if (fit.a_hat) out << ", a_hat = " << format_double(*fit.a_hat);
                out << "; predicted: " << regime_text(pred) << "\n";
                runs.push_back(Json{{"regime", to_string(rg)},
                                    {"k_min", k0},
                                    {"k_max", k1},
                                    {"estimates", sweep},
                                    {"fit", fit},
                                    {"predicted", pred}});
                all.insert(all.end(), sweep.begin(), sweep.end());
            }
            Json j{{"polynomial", to_string(p)}, {"domain", ve.domain}, {"seed", ve.seed}, {"runs", runs}};
            write_json(j, ve.json_path, verify->count("--json") > 0, out);
            if (!csv_path.empty()) {
                std::ofstream f(csv_path, std::ios::binary);
                if (!f) throw std::runtime_error("cannot write " + csv_path);
                f << to_csv(all);
            }
        } else if (*divergence) {
            auto [p, b] = parse_inputs(di);
            DivergenceProbe probe = divergence_probe(p, b, lambda, J_list, div_samples, di.seed, div_threads);
            bool json = divergence->count("--json") > 0;
            if (!(json && di.json_path.empty())) {
                for (const auto& m : probe.partial_sums)
                    out << "J = " << m.J << "  measure = " << format_double(m.value) << " +- "
                        << format_double(m.std_error) << "\n";
                out << "slope = " << format_double(probe.slope) << " +- " << format_double(probe.slope_stderr)
                    << "\nverdict: " << to_string(probe.verdict) << "\n";
            }
            Json j = Json(probe);
            j["polynomial"] = to_string(p);
            j["domain"] = di.domain;
            j["lambda"] = lambda;
            write_json(j, di.json_path, json, out);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConsistencyError& e) {
        err << "internal consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace sublevel
