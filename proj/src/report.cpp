#include "sublevel/report.hpp"
#include "sublevel/parser.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace sublevel {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

std::string orientation_name(Orientation o) {
    switch (o) {
        case Orientation::Forward: return "forward";
        case Orientation::Backward: return "backward";
        default: return "level";
    }
}

Json rational_json(const Rational& r) { return to_string(r); }
Rational rational_of(const Json& j) { return parse_rational(j.get<std::string>()); }
Json ext_json(const ExtRational& r) { return to_string(r); }
ExtRational ext_of(const Json& j) { return parse_ext_rational(j.get<std::string>()); }

Json qvector_json(const QVector& v) {
    Json a = Json::array();
    for (const auto& x : v.entries()) a.push_back(rational_json(x));
    return a;
}

QVector qvector_of(const Json& j) {
    std::vector<Rational> e;
    for (const auto& x : j) e.push_back(rational_of(x));
    return QVector(std::move(e));
}

Json qvectors_json(const std::vector<QVector>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back(qvector_json(v));
    return a;
}

std::vector<QVector> qvectors_of(const Json& j) {
    std::vector<QVector> out;
    for (const auto& x : j) out.push_back(qvector_of(x));
    return out;
}

template <class T>
Json optional_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

template <class T>
std::optional<T> optional_of(const Json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

// JSON has no infinities; non-finite doubles travel as strings.
Json double_json(double x) { return std::isfinite(x) ? Json(x) : Json(format_double(x)); }

double double_of(const Json& j) {
    if (j.is_number()) return j.get<double>();
    std::string s = j.get<std::string>();
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    return std::nan("");
}

}  // namespace

void to_json(Json& j, const Hyperplane& h) { j = Json{{"normal", qvector_json(h.normal)}, {"offset", rational_json(h.offset)}}; }

void from_json(const Json& j, Hyperplane& h) { h = Hyperplane(qvector_of(j.at("normal")), rational_of(j.at("offset"))); }

void to_json(Json& j, const DiagonalInterval& v) {
    j = Json{{"empty", v.empty}, {"lo", rational_json(v.lo)}, {"hi", ext_json(v.hi)}};
}

void from_json(const Json& j, DiagonalInterval& v) {
    v.empty = j.at("empty").get<bool>();
    v.lo = rational_of(j.at("lo"));
    v.hi = ext_of(j.at("hi"));
}

void to_json(Json& j, const FaceVerdict& v) {
    Json w = Json::array();
    for (double x : v.witness) w.push_back(double_json(x));
    j = Json{{"face", v.face_id},
             {"method", to_string(v.method)},
             {"verdict", to_string(v.verdict)},
             {"witness", w},
             {"min_value", double_json(v.min_value)}};
}

void from_json(const Json& j, FaceVerdict& v) {
    v.face_id = j.at("face").get<std::size_t>();
    std::string m = j.at("method").get<std::string>();
    v.method = DegeneracyMethod::Declared;
    for (auto k : {DegeneracyMethod::ExactMonomial, DegeneracyMethod::ExactRank, DegeneracyMethod::NumericalSearch})
        if (to_string(k) == m) v.method = k;
    std::string k = j.at("verdict").get<std::string>();
    v.verdict = k == "Nondegenerate"       ? FaceVerdictKind::Nondegenerate
                : k == "DegenerateWitness" ? FaceVerdictKind::DegenerateWitness
                                           : FaceVerdictKind::Inconclusive;
    v.witness.clear();
    for (const auto& x : j.at("witness")) v.witness.push_back(double_of(x));
    v.min_value = double_of(j.at("min_value"));
}

void to_json(Json& j, const DegeneracyReport& v) {
    j = Json{{"sigma", v.sigma},
             {"tau", optional_json(v.tau)},
             {"degree_bound", v.degree_bound},
             {"faces", v.per_face},
             {"numerical", v.numerical},
             {"declared", v.declared},
             {"h", double_json(v.h)},
             {"justification", v.justification}};
}

void from_json(const Json& j, DegeneracyReport& v) {
    v.sigma = j.at("sigma").get<int>();
    v.tau = optional_of<int>(j.at("tau"));
    v.degree_bound = j.at("degree_bound").get<long>();
    v.per_face = j.at("faces").get<std::vector<FaceVerdict>>();
    v.numerical = j.at("numerical").get<bool>();
    v.declared = j.at("declared").get<bool>();
    v.h = double_of(j.at("h"));
    v.justification = j.at("justification").get<std::string>();
}

void to_json(Json& j, const RegimeVerdict& v) {
    j = Json{{"kind", to_string(v.kind)}, {"rho", ext_json(v.rho)}, {"log_power", v.log_power}, {"range", v.range}};
}

void from_json(const Json& j, RegimeVerdict& v) {
    v.kind = parse_regime_kind(j.at("kind").get<std::string>());
    v.rho = ext_of(j.at("rho"));
    v.log_power = j.at("log_power").get<int>();
    v.range = j.at("range").get<std::string>();
}

void to_json(Json& j, const Window& v) { j = Json{{"empty", v.empty}, {"lo", ext_json(v.lo)}, {"hi", ext_json(v.hi)}}; }

void from_json(const Json& j, Window& v) {
    v.empty = j.at("empty").get<bool>();
    v.lo = ext_of(j.at("lo"));
    v.hi = ext_of(j.at("hi"));
}

void to_json(Json& j, const AsymptoticVerdict& v) {
    j = Json{{"d", v.d},
             {"balanced", v.balanced},
             {"delta_for", ext_json(v.delta_for)},
             {"delta_bac", ext_json(v.delta_bac)},
             {"k_for", optional_json(v.k_for)},
             {"k_bac", optional_json(v.k_bac)},
             {"tau", optional_json(v.tau)},
             {"tau1", optional_json(v.tau1)},
             {"large_lambda", v.large_lambda},
             {"small_lambda", v.small_lambda},
             {"oscillatory_large", v.oscillatory_large},
             {"oscillatory_small", v.oscillatory_small},
             {"integrability", v.integrability},
             {"assumptions", v.assumptions}};
}

void from_json(const Json& j, AsymptoticVerdict& v) {
    v.d = j.at("d").get<std::size_t>();
    v.balanced = j.at("balanced").get<bool>();
    v.delta_for = ext_of(j.at("delta_for"));
    v.delta_bac = ext_of(j.at("delta_bac"));
    v.k_for = optional_of<int>(j.at("k_for"));
    v.k_bac = optional_of<int>(j.at("k_bac"));
    v.tau = optional_of<int>(j.at("tau"));
    v.tau1 = optional_of<int>(j.at("tau1"));
    v.large_lambda = j.at("large_lambda").get<RegimeVerdict>();
    v.small_lambda = j.at("small_lambda").get<RegimeVerdict>();
    v.oscillatory_large = j.at("oscillatory_large").get<RegimeVerdict>();
    v.oscillatory_small = j.at("oscillatory_small").get<RegimeVerdict>();
    v.integrability = j.at("integrability").get<Window>();
    v.assumptions = j.at("assumptions").get<std::vector<std::string>>();
}

void to_json(Json& j, const NewtonSummary& v) {
    auto face_json = [](const std::optional<std::vector<QVector>>& f) { return f ? qvectors_json(*f) : Json(nullptr); };
    j = Json{{"d", v.d},
             {"dim", v.dim},
             {"vertices", qvectors_json(v.vertices)},
             {"recession_rays", qvectors_json(v.recession_rays)},
             {"recession_lineality", qvectors_json(v.recession_lineality)},
             {"inequalities", v.inequalities},
             {"equations", v.equations},
             {"face_count", v.face_count},
             {"diagonal", v.diagonal},
             {"delta_for", ext_json(v.delta_for)},
             {"delta_bac", ext_json(v.delta_bac)},
             {"k_for", optional_json(v.k_for)},
             {"k_bac", optional_json(v.k_bac)},
             {"main_face_for", face_json(v.main_face_for)},
             {"main_face_bac", face_json(v.main_face_bac)},
             {"balanced", v.balanced},
             {"balanced_hrep_only", v.balanced_hrep_only},
             {"strongly_convex", v.strongly_convex}};
}

void from_json(const Json& j, NewtonSummary& v) {
    auto face_of = [](const Json& f) {
        return f.is_null() ? std::nullopt : std::optional<std::vector<QVector>>(qvectors_of(f));
    };
    v.d = j.at("d").get<std::size_t>();
    v.dim = j.at("dim").get<int>();
    v.vertices = qvectors_of(j.at("vertices"));
    v.recession_rays = qvectors_of(j.at("recession_rays"));
    v.recession_lineality = qvectors_of(j.at("recession_lineality"));
    v.inequalities = j.at("inequalities").get<std::vector<Hyperplane>>();
    v.equations = j.at("equations").get<std::vector<Hyperplane>>();
    v.face_count = j.at("face_count").get<std::size_t>();
    v.diagonal = j.at("diagonal").get<DiagonalInterval>();
    v.delta_for = ext_of(j.at("delta_for"));
    v.delta_bac = ext_of(j.at("delta_bac"));
    v.k_for = optional_of<int>(j.at("k_for"));
    v.k_bac = optional_of<int>(j.at("k_bac"));
    v.main_face_for = face_of(j.at("main_face_for"));
    v.main_face_bac = face_of(j.at("main_face_bac"));
    v.balanced = j.at("balanced").get<bool>();
    v.balanced_hrep_only = j.at("balanced_hrep_only").get<bool>();
    v.strongly_convex = j.at("strongly_convex").get<bool>();
}

void to_json(Json& j, const FanSummary& v) {
    j = Json{{"forward_cells", v.forward}, {"backward_cells", v.backward}, {"d0", v.d0}};
}

void from_json(const Json& j, FanSummary& v) {
    v.forward = j.at("forward_cells").get<std::size_t>();
    v.backward = j.at("backward_cells").get<std::size_t>();
    v.d0 = j.at("d0").get<std::size_t>();
}

void to_json(Json& j, const AnalysisReport& v) {
    j = Json{{"polynomial", v.polynomial},
             {"domain", v.domain},
             {"B", qvectors_json(v.B)},
             {"sigma", v.sigma},
             {"seed", v.seed},
             {"newton", v.newton},
             {"fan", v.fan},
             {"degeneracy", v.degeneracy},
             {"degeneracy_oscillatory", optional_json(v.degeneracy_oscillatory)},
             {"verdict", v.verdict},
             {"zero_in_image", v.zero_in_image},
             {"warnings", v.warnings}};
}

void from_json(const Json& j, AnalysisReport& v) {
    v.polynomial = j.at("polynomial").get<std::string>();
    v.domain = j.at("domain").get<std::string>();
    v.B = qvectors_of(j.at("B"));
    v.sigma = j.at("sigma").get<int>();
    v.seed = j.at("seed").get<std::uint64_t>();
    v.newton = j.at("newton").get<NewtonSummary>();
    v.fan = j.at("fan").get<FanSummary>();
    v.degeneracy = j.at("degeneracy").get<DegeneracyReport>();
    v.degeneracy_oscillatory = optional_of<DegeneracyReport>(j.at("degeneracy_oscillatory"));
    v.verdict = j.at("verdict").get<AsymptoticVerdict>();
    v.zero_in_image = j.at("zero_in_image").get<std::string>();
    v.warnings = j.at("warnings").get<std::vector<std::string>>();
}

void to_json(Json& j, const MeasureEstimate& v) {
    j = Json{{"lambda", double_json(v.lambda)},
             {"value", double_json(v.value)},
             {"stderr", double_json(v.std_error)},
             {"shell_radius", v.J},
             {"samples_per_shell", v.samples_per_shell},
             {"shells_used", v.shells_used},
             {"shells_skipped", v.shells_skipped},
             {"tail_indicator", double_json(v.tail_indicator)},
             {"warnings", v.warnings}};
}

void from_json(const Json& j, MeasureEstimate& v) {
    v.lambda = double_of(j.at("lambda"));
    v.value = double_of(j.at("value"));
    v.std_error = double_of(j.at("stderr"));
    v.J = j.at("shell_radius").get<int>();
    v.samples_per_shell = j.at("samples_per_shell").get<int>();
    v.shells_used = j.at("shells_used").get<int>();
    v.shells_skipped = j.at("shells_skipped").get<int>();
    v.tail_indicator = double_of(j.at("tail_indicator"));
    v.warnings = j.at("warnings").get<std::vector<std::string>>();
}

void to_json(Json& j, const FitResult& v) {
    j = Json{{"rho_hat", double_json(v.rho_hat)},
             {"a_hat", v.a_hat ? double_json(*v.a_hat) : Json(nullptr)},
             {"rho_stderr", double_json(v.rho_stderr)},
             {"residual_rms", double_json(v.residual_rms)},
             {"lambda_range", Json::array({double_json(v.lambda_range.first), double_json(v.lambda_range.second)})},
             {"regime", to_string(v.regime)},
             {"rho_used", v.rho_used ? double_json(*v.rho_used) : Json(nullptr)}};
}

void to_json(Json& j, const DivergenceProbe& v) {
    j = Json{{"verdict", to_string(v.verdict)},
             {"slope", double_json(v.slope)},
             {"slope_stderr", double_json(v.slope_stderr)},
             {"partial_sums", v.partial_sums}};
}

void to_json(Json& j, const SimplicialDualCell& c) {
    j = Json{{"rays", qvectors_json(c.rays)},
             {"orientation", orientation_name(c.orientation)},
             {"owner", c.owner},
             {"M0", c.M0.get_str()},
             {"M1", c.M1.get_str()}};
}

void to_json(Json& j, const OrientedSimplicialFan& f) {
    j = Json{{"d0", f.d0}, {"ambient_rays", qvectors_json(f.ambient.rays)}, {"cells", f.cells}};
}

std::string to_csv(const std::vector<MeasureEstimate>& sweep) {
    std::string out = "lambda,value,stderr\n";
    for (const auto& m : sweep)
        out += format_double(m.lambda) + "," + format_double(m.value) + "," + format_double(m.std_error) + "\n";
    return out;
}

NewtonSummary summarize(const NewtonData& nd) {
    NewtonSummary s;
    s.d = nd.domain.d;
    s.dim = nd.polyhedron.dim;
    s.vertices = nd.polyhedron.vertices;
    s.recession_rays = nd.polyhedron.recession.rays;
    s.recession_lineality = nd.polyhedron.recession.lineality;
    s.inequalities = nd.polyhedron.inequalities;
    s.equations = nd.polyhedron.equations;
    s.face_count = nd.faces.size();
    s.diagonal = nd.diagonal;
    s.delta_for = nd.delta_for;
    s.delta_bac = nd.delta_bac;
    s.k_for = nd.k_for;
    s.k_bac = nd.k_bac;
    if (nd.main_for) s.main_face_for = nd.face(*nd.main_for).points;
    if (nd.main_bac) s.main_face_bac = nd.face(*nd.main_bac).points;
    s.balanced = nd.balanced;
    s.balanced_hrep_only = nd.balanced_hrep_only;
    s.strongly_convex = nd.strongly_convex;
    return s;
}

FanSummary summarize(const OrientedSimplicialFan& fan) {
    FanSummary s;
    s.d0 = fan.d0;
    for (const auto& c : fan.cells) (c.orientation == Orientation::Backward ? s.backward : s.forward)++;
    return s;
}

AnalysisReport run_analysis(const std::string& polynomial, const std::string& domain, int sigma, std::uint64_t seed) {
    if (sigma != 0 && sigma != 1) throw std::invalid_argument("sigma must be 0 or 1");
    LaurentPolynomial p = parse_polynomial(polynomial);
    if (p.empty()) throw std::invalid_argument("the zero polynomial has no Newton polyhedron");
    DomainSpec b(parse_domain(domain, p.dim()));

    AnalysisReport r;
    r.polynomial = to_string(p);
    r.domain = domain;
    r.B = b.generators;
    r.sigma = sigma;
    r.seed = seed;

    NewtonData nd = build_newton(p, b);
    r.newton = summarize(nd);
    r.fan = summarize(build_fan(nd));

    DegeneracyParams params;
    params.seed = seed;
    r.degeneracy = tau_search(nd, sigma, params);
    if (sigma == 0) {
        r.degeneracy_oscillatory = tau_search(nd, 1, params);
        r.verdict = predict(nd, r.degeneracy, *r.degeneracy_oscillatory);
    } else {
        r.verdict = predict(nd, r.degeneracy);
    }

    ZeroCheck z = check_zero_in_image(p, b, seed);
    r.zero_in_image = to_string(z);
    if (z == ZeroCheck::NotFound) r.warnings.push_back("0 in P(D_B) not confirmed: no zero or sign change found");
    if (z == ZeroCheck::Numerical) r.warnings.push_back("0 in P(D_B) confirmed numerically only");
    if (nd.balanced != nd.balanced_hrep_only)
        r.warnings.push_back("the minimal H-representation alone misses an off-diagonal supporting plane");
    if (r.degeneracy.numerical) r.warnings.push_back("tau from numerical search");
    return r;
}

}  // namespace sublevel
