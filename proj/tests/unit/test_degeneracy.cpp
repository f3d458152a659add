#include "sublevel/decomposition.hpp"
#include "sublevel/degeneracy.hpp"
#include "sublevel/parser.hpp"
#include "support/random.hpp"
#include "support/properties.hpp"

#include <doctest.h>

#include <cmath>

using namespace sublevel;

namespace {

QVector v2(long a, long b) { return QVector{Rational(a), Rational(b)}; }

NewtonData nd_of(const std::string& poly, const std::string& dom) {
    LaurentPolynomial p = parse_polynomial(poly);
    return build_newton(p, DomainSpec(parse_domain(dom, p.dim())));
}

const Face& face_with_points(const NewtonData& nd, const std::vector<QVector>& pts) {
    for (const auto& f : nd.faces)
        if (f.points == pts) return f;
    throw std::runtime_error("face not found");
}

}  // namespace

TEST_CASE("face polynomials of the first golden polytope") {
    NewtonData nd = nd_of("x1^4*x2^4*(1-x1^2-x2^2)^2", "global");
    auto vertex = face_polynomial(nd.poly, face_with_points(nd, {v2(4, 4)}));
    CHECK(vertex == LaurentPolynomial::monomial(v2(4, 4)));
    auto edge = face_polynomial(nd.poly, face_with_points(nd, {v2(4, 8), v2(8, 4)}));
    CHECK(edge == parse_polynomial("x1^8*x2^4 + 2*x1^6*x2^6 + x1^4*x2^8"));
}

TEST_CASE("improper face of a segment polyhedron carries the whole polynomial") {
    NewtonData nd = nd_of("x1^4*x2^4*(x2-x1^2)^2", "global");
    const Face& whole = nd.faces.back();
    CHECK(whole.dim == 1);
    CHECK(face_polynomial(nd.poly, whole) == nd.poly);
}

TEST_CASE("face nondegeneracy examples") {
    auto a = check_face_nondegenerate(parse_polynomial("x1^3 - x1*x2^2"), 1, 1);
    CHECK(a.method == DegeneracyMethod::ExactRank);
    CHECK(a.verdict == FaceVerdictKind::Nondegenerate);

    auto b = check_face_nondegenerate(parse_polynomial("4*x1^4*x2^4"), 0, 0);
    CHECK(b.method == DegeneracyMethod::ExactMonomial);
    CHECK(b.verdict == FaceVerdictKind::Nondegenerate);

    auto c = check_face_nondegenerate(parse_polynomial("(x2-x1)^2"), 0, 1);
    CHECK(c.method == DegeneracyMethod::NumericalSearch);
    REQUIRE(c.verdict == FaceVerdictKind::DegenerateWitness);
    REQUIRE(c.witness.size() == 2);
    CHECK(std::abs(c.witness[0] - c.witness[1]) < 1e-5 * std::abs(c.witness[0]));
    CHECK(std::abs(c.witness[0]) >= 1.0 / 16);

    auto d = check_face_nondegenerate(parse_polynomial("(x2-x1)^2"), 0, 2);
    CHECK(d.verdict == FaceVerdictKind::Nondegenerate);

    CHECK_THROWS(check_face_nondegenerate(parse_polynomial("x1"), 1, 0));
}

TEST_CASE("rank deficiency alone does not imply degeneracy") {
    auto v = check_face_nondegenerate(parse_polynomial("x1^2 + x1^4", 2), 1, 1);
    CHECK(v.method == DegeneracyMethod::NumericalSearch);
    CHECK(v.verdict == FaceVerdictKind::Nondegenerate);
}

TEST_CASE("tau search on the golden polynomials") {
    auto r37 = tau_search(nd_of("x1^4*x2^4*(1-x1^2-x2^2)^2", "global"), 1);
    CHECK(r37.tau == 2);
    CHECK(r37.numerical);

    auto r38 = tau_search(nd_of("x1^4*x2^4*(x2-x1^2)^2", "global"), 1);
    CHECK(r38.tau == 2);

    for (const char* p : {"x1^3 - x1*x2^2", "x1*x2+x2*x3+x3*x1"}) {
        auto r = tau_search(nd_of(p, "global"), 1);
        CHECK(r.tau == 1);
        CHECK_FALSE(r.numerical);
        for (const auto& fv : r.per_face) CHECK(fv.method != DegeneracyMethod::NumericalSearch);
    }

    auto r0 = tau_search(nd_of("x1^4*x2^4*(1-x1^2-x2^2)^2", "global"), 0);
    CHECK(r0.tau == 2);
    CHECK(tau_search(nd_of("x1^2+x2^2", "global"), 0).tau == 0);
}

TEST_CASE("declared reports") {
    auto r = declared_report(0, 0, "piece away from the zero set");
    CHECK(r.declared);
    CHECK(r.tau == 0);
    CHECK_THROWS(declared_report(1, 0, "bad"));
}

TEST_CASE("exact shortcuts agree with numerical search") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> nd(1, 3), coef(1, 5), sgnd(0, 1);
    DegeneracyParams numeric;
    numeric.exact_shortcuts = false;
    numeric.starts = 16;
    int compared = 0;
    for (int t = 0; t < 200; ++t) {
        std::size_t d = nd(rng);
        LaurentPolynomial p(d);
        while (p.size() < d) p.add_term(testutil::rand_nonneg_int(rng, d, 4), coef(rng) * (sgnd(rng) ? 1 : -1));
        auto exact = check_face_nondegenerate(p, 1, 1);
        auto num = check_face_nondegenerate(p, 1, 1, numeric);
        if (exact.method == DegeneracyMethod::NumericalSearch) continue;
        ++compared;
        CHECK(num.verdict == exact.verdict);
    }
    CHECK(compared > 100);
}

TEST_CASE("scaled derivatives match finite differences") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> mag(std::log(0.25), std::log(4.0));
    std::uniform_int_distribution<int> e(-3, 6), sg(0, 1);
    int checked = 0;
    for (int t = 0; t < 100; ++t) {
        QVector m{Rational(e(rng)), Rational(e(rng))};
        double x[2] = {std::exp(mag(rng)) * (sg(rng) ? 1 : -1), std::exp(mag(rng)) * (sg(rng) ? 1 : -1)};
        auto f = [&](double a, double b) { return std::pow(a, m[0].get_d()) * std::pow(b, m[1].get_d()); };
        for (int i = 0; i < 2; ++i) {
            double h = 1e-4 * std::abs(x[i]);
            double xp[2] = {x[0], x[1]}, xm[2] = {x[0], x[1]};
            xp[i] += h;
            xm[i] -= h;
            double first = x[i] * (f(xp[0], xp[1]) - f(xm[0], xm[1])) / (2 * h);
            double second = x[i] * x[i] * (f(xp[0], xp[1]) - 2 * f(x[0], x[1]) + f(xm[0], xm[1])) / (h * h);
            std::vector<int> a1(2, 0), a2(2, 0);
            a1[i] = 1;
            a2[i] = 2;
            double exact1 = falling_factorial(m, a1).get_d() * f(x[0], x[1]);
            double exact2 = falling_factorial(m, a2).get_d() * f(x[0], x[1]);
            double scale = std::abs(f(x[0], x[1])) * 30;
            CHECK(std::abs(first - exact1) <= 1e-6 * scale);
            CHECK(std::abs(second - exact2) <= 1e-6 * scale);
            ++checked;
        }
    }
    CHECK(checked == 200);
}

TEST_CASE("monomialization and gap inequalities on fan cells") {
    std::mt19937_64 rng(41);
    for (auto [p, b] : std::vector<std::pair<std::string, std::string>>{
             {"x1^4*x2^4*(1-x1^2-x2^2)^2", "global"},
             {"x1^4*x2^4*(x2-x1^2)^2", "global"},
             {"x1*x2", "local"},
             {"x1*x2 + x1^2 + x2^5", "[(1,-1),(-1,1)]"},
             {"x2^2*(x1^4+x1^8+1)", "[(-2,1)]"},
             {"(1+x1^4+x2^4)*(x1^4+x2^2)", "global"},
             {"x1^2*x3 + x2^3 + x1*x2*x3^2 + x3^4", "local"}}) {
        CAPTURE(p);
        auto t = props::monomialization(nd_of(p, b), rng, 100);
        CHECK_MESSAGE(t.ok(), t.first_failure);
    }
}
