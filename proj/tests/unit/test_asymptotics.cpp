#include "sublevel/asymptotics.hpp"
#include "sublevel/parser.hpp"
#include "support/random.hpp"
#include "support/properties.hpp"

#include <doctest.h>

#include <algorithm>

using namespace sublevel;
using testutil::q;

namespace {

NewtonData nd_of(const std::string& poly, const std::string& dom) {
    LaurentPolynomial p = parse_polynomial(poly, 2);
    return build_newton(p, DomainSpec(parse_domain(dom, p.dim())));
}

AsymptoticVerdict analyzed(const std::string& poly, const std::string& dom) {
    NewtonData nd = nd_of(poly, dom);
    return predict(nd, tau_search(nd, 1));
}

void check_regime(const RegimeVerdict& v, RegimeKind kind, const Rational& rho, int log_power) {
    CHECK(v.kind == kind);
    CHECK(v.rho == ExtRational(rho));
    CHECK(v.log_power == log_power);
}

// The partition pieces of the circle and of circle u parabola, with the declared types.
struct Pieces {
    std::vector<NewtonData> nds;
    std::vector<PartitionPiece> pieces;
};

Pieces circle_pieces() {
    Pieces p;
    p.nds.push_back(nd_of("(1-x1^2-x2^2)^2", "global"));
    p.nds.push_back(nd_of("x2^2", "local"));
    p.pieces.push_back({&p.nds[0], declared_report(0, 0, "away from the circle"), "away"});
    p.pieces.push_back({&p.nds[1], declared_report(0, 0, "near the circle"), "near"});
    return p;
}

Pieces circle_parabola_pieces() {
    Pieces p;
    p.nds.push_back(nd_of("(1+x1^4+x2^4)*(x1^4+x2^2)", "global"));
    p.nds.push_back(nd_of("x2^2", "local"));
    p.nds.push_back(nd_of("x2^2*(x1^4+x1^8+1)", "[(-2,1)]"));
    p.nds.push_back(nd_of("x1^2*x2^2", "local"));
    const char* labels[] = {"away", "circle", "parabola", "crossing"};
    for (std::size_t i = 0; i < 4; ++i)
        p.pieces.push_back({&p.nds[i], declared_report(0, 0, labels[i]), labels[i]});
    return p;
}

}  // namespace

TEST_CASE("first golden polynomial is sharp in both regimes") {
    auto v = analyzed("x1^4*x2^4*(1-x1^2-x2^2)^2", "global");
    CHECK(v.balanced);
    CHECK(v.tau == 2);
    check_regime(v.large_lambda, RegimeKind::Sharp, q(1, 4), 1);
    check_regime(v.small_lambda, RegimeKind::Sharp, q(1, 6), 0);
    check_regime(v.oscillatory_large, RegimeKind::UpperBoundOnly, q(1, 4), 1);
    check_regime(v.oscillatory_small, RegimeKind::UpperBoundOnly, q(1, 6), 0);
    REQUIRE_FALSE(v.integrability.empty);
    CHECK(v.integrability.lo == ExtRational(q(1, 6)));
    CHECK(v.integrability.hi == ExtRational(q(1, 4)));
    CHECK(integrability_window(v) == v.integrability);
    CHECK(std::count(v.assumptions.begin(), v.assumptions.end(), "0 in P(D_B) assumed") == 1);
    CHECK(std::count(v.assumptions.begin(), v.assumptions.end(), "sigma = 1: tau numerical") == 1);
}

TEST_CASE("collinear golden polynomial has an empty window") {
    auto v = analyzed("x1^4*x2^4*(x2-x1^2)^2", "global");
    check_regime(v.large_lambda, RegimeKind::Sharp, q(3, 16), 0);
    check_regime(v.small_lambda, RegimeKind::Sharp, q(3, 16), 0);
    CHECK(v.integrability.empty);
}

TEST_CASE("parabola needs a partition to see its divergence") {
    auto direct = analyzed("(x2-x1^2)^2", "global");
    CHECK(direct.balanced);
    CHECK(direct.delta_for == ExtRational(q(4, 3)));
    CHECK(direct.tau == 2);
    CHECK(direct.large_lambda.kind == RegimeKind::Inconclusive);

    NewtonData away = nd_of("x2^2", "[(2,-1)]"), near = nd_of("x2^2", "[(-2,1)]");
    CHECK_FALSE(near.balanced);
    auto v = combine_partition({{&away, declared_report(0, 0, "away"), "away"}, {&near, declared_report(0, 0, "near"), "near"}});
    CHECK_FALSE(v.balanced);
    CHECK(v.large_lambda.kind == RegimeKind::Divergent);
    CHECK(v.small_lambda.kind == RegimeKind::Divergent);
    CHECK(v.oscillatory_large.kind == RegimeKind::ExistsDivergentAmplitude);
    CHECK(v.integrability.empty);
}

TEST_CASE("unbalanced phases diverge") {
    for (const char* p : {"x2^2", "x1^2*x2^2 + x1^4*x2^4"}) {
        auto v = analyzed(p, "global");
        CHECK_FALSE(v.balanced);
        CHECK(v.large_lambda.kind == RegimeKind::Divergent);
        CHECK(v.small_lambda.kind == RegimeKind::Divergent);
        CHECK(v.large_lambda.range == "all lambda > 0");
        CHECK(v.oscillatory_large.kind == RegimeKind::ExistsDivergentAmplitude);
        CHECK(v.integrability.empty);
    }
    NewtonData nd = nd_of("x2^2", "[(-2,1)]");
    auto v = predict(nd, declared_report(0, 0, "pulled-back piece"));
    CHECK(v.small_lambda.kind == RegimeKind::Divergent);
    CHECK(v.small_lambda.range == "lambda in (0,c) for some c > 0");
}

TEST_CASE("non-sharp fallback when the zero order reaches delta_for") {
    NewtonData nd = nd_of("x1^4*x2^4*(1-x1^2-x2^2)^2", "global");

    auto at = predict(nd, declared_report(0, 4, "test"));
    check_regime(at.large_lambda, RegimeKind::UpperBoundOnly, q(1, 4), 2);
    check_regime(at.small_lambda, RegimeKind::Sharp, q(1, 6), 0);
    CHECK(at.integrability.empty);
    CHECK(std::any_of(at.assumptions.begin(), at.assumptions.end(),
                      [](const std::string& s) { return s.find("for delta in (4, 6)") == 0; }));

    auto above = predict(nd, declared_report(0, 5, "test"));
    check_regime(above.large_lambda, RegimeKind::UpperBoundOnly, q(1, 5), 0);

    auto worse = predict(nd, declared_report(0, 6, "test"));
    CHECK(worse.large_lambda.kind == RegimeKind::Inconclusive);
    CHECK(worse.small_lambda.kind == RegimeKind::Inconclusive);
}

TEST_CASE("double line is inconclusive") {
    auto v = analyzed("(x2-x1)^2", "global");
    CHECK(v.balanced);
    CHECK(v.delta_bac == ExtRational(1));
    CHECK(v.tau == 2);
    CHECK(v.large_lambda.kind == RegimeKind::Inconclusive);
    CHECK(v.oscillatory_large.kind == RegimeKind::Inconclusive);
}

TEST_CASE("oscillatory restriction is waived for tau = 1") {
    NewtonData nd = nd_of("x1*x2", "local");
    auto v = predict(nd, tau_search(nd, 0), tau_search(nd, 1));
    CHECK(v.tau == 0);
    CHECK(v.tau1 == 1);
    check_regime(v.large_lambda, RegimeKind::Sharp, 1, 1);
    check_regime(v.oscillatory_large, RegimeKind::UpperBoundOnly, 1, 1);
    check_regime(v.small_lambda, RegimeKind::Sharp, 0, 0);

    auto no_osc = predict(nd, tau_search(nd, 0));
    CHECK(no_osc.oscillatory_large.kind == RegimeKind::Inconclusive);
}

TEST_CASE("sigma mismatch is rejected") {
    NewtonData nd = nd_of("x1*x2", "local");
    auto r0 = tau_search(nd, 0);
    CHECK_THROWS_AS(predict(nd, r0, r0), std::invalid_argument);
}

TEST_CASE("non strongly convex domain gives no oscillatory estimate") {
    NewtonData nd = nd_of("x1*x2 + x1^2 + x2^2", "[(1,-1),(-1,1)]");
    auto v = predict(nd, declared_report(1, 1, "test"));
    CHECK(v.oscillatory_large.kind == RegimeKind::Inconclusive);
}

TEST_CASE("circle partition") {
    auto p = circle_pieces();
    CHECK(p.nds[0].delta_for == ExtRational(0));
    CHECK(p.nds[0].delta_bac == ExtRational(2));
    CHECK(p.nds[0].k_bac == 1);
    CHECK(p.nds[1].delta_bac.is_pos_inf());
    CHECK(p.nds[1].k_for == 1);
    auto v = combine_partition(p.pieces);
    CHECK(v.delta_for == ExtRational(2));
    CHECK(v.delta_bac == ExtRational(2));
    CHECK(v.k_for == 1);
    CHECK(v.k_bac == 1);
    check_regime(v.large_lambda, RegimeKind::Sharp, q(1, 2), 0);
    check_regime(v.small_lambda, RegimeKind::Sharp, q(1, 2), 0);
    CHECK(v.integrability.empty);
}

TEST_CASE("circle and parabola partition") {
    auto p = circle_parabola_pieces();
    CHECK(p.nds[0].delta_for == ExtRational(q(4, 3)));
    CHECK(p.nds[0].delta_bac == ExtRational(4));
    CHECK(p.nds[0].k_for == 1);
    CHECK(p.nds[0].k_bac == 0);
    CHECK(p.nds[2].delta_for == ExtRational(2));
    CHECK(p.nds[2].delta_bac == ExtRational(4));
    CHECK(p.nds[3].k_for == 0);
    auto v = combine_partition(p.pieces);
    CHECK(v.delta_for == ExtRational(2));
    CHECK(v.delta_bac == ExtRational(4));
    CHECK(v.k_for == 0);
    CHECK(v.k_bac == 0);
    check_regime(v.large_lambda, RegimeKind::Sharp, q(1, 2), 1);
    check_regime(v.small_lambda, RegimeKind::Sharp, q(1, 4), 1);
    CHECK_FALSE(v.integrability.empty);
}

TEST_CASE("combine_partition contract") {
    CHECK_THROWS_AS(combine_partition({}), std::invalid_argument);
    NewtonData a = nd_of("x1*x2", "local");
    NewtonData b = build_newton(parse_polynomial("x1*x2*x3"), DomainSpec::local(3));
    CHECK_THROWS_AS(combine_partition({{&a, declared_report(0, 0, "a"), "a"}, {&b, declared_report(0, 0, "b"), "b"}}),
                    std::invalid_argument);
    NewtonData u = nd_of("x2^2", "[(-2,1)]");
    auto v = combine_partition({{&a, declared_report(0, 0, "a"), "a"}, {&u, declared_report(0, 0, "u"), "u"}});
    CHECK(v.large_lambda.kind == RegimeKind::Divergent);
    CHECK(v.integrability.empty);
}

TEST_CASE("singleton partition reproduces predict") {
    for (auto [poly, dom] : std::vector<std::pair<std::string, std::string>>{
             {"x1^4*x2^4*(1-x1^2-x2^2)^2", "global"}, {"x1*x2", "local"}, {"x2^2", "global"}, {"(x2-x1)^2", "global"}}) {
        NewtonData nd = nd_of(poly, dom);
        for (int sigma : {0, 1}) {
            auto dr = tau_search(nd, sigma);
            CHECK(combine_partition({{&nd, dr, "only"}}) == predict(nd, dr));
        }
    }
}

TEST_CASE("combine_partition is invariant under reordering and duplication") {
    for (auto make : {circle_pieces, circle_parabola_pieces}) {
        auto p = make();
        auto t = props::combine_invariance(p.pieces);
        CHECK_MESSAGE(t.ok(), t.first_failure);
    }
}

TEST_CASE("verdicts see only the support") {
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int> nt(2, 4), sc(-7, 7);
    for (int t = 0; t < 20; ++t) {
        LaurentPolynomial p(2);
        int n = nt(rng);
        while (int(p.size()) < n) p.add_term(testutil::rand_nonneg_int(rng, 2, 4), testutil::rand_rational(rng, 5, 3));
        Rational s = 0;
        while (s == 0) s = q(sc(rng), 1 + t % 5);
        NewtonData a = build_newton(p, DomainSpec::global(2)), b = build_newton(p.scaled(s), DomainSpec::global(2));
        CAPTURE(to_string(p));
        CHECK(predict(a, tau_search(a, 1)) == predict(b, tau_search(b, 1)));
    }
}

TEST_CASE("regime consistency and unbalanced implications") {
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<int> nt(1, 5), dom(0, 2);
    const char* doms[] = {"global", "local", "outer"};
    int sharp = 0, divergent = 0;
    for (int t = 0; t < 200; ++t) {
        LaurentPolynomial p(2);
        int n = nt(rng);
        while (int(p.size()) < n) p.add_term(testutil::rand_qvector(rng, 2, 4), 1);
        NewtonData nd = build_newton(p, DomainSpec(parse_domain(doms[dom(rng)], 2)));
        auto v = predict(nd, declared_report(1, 1, "test"));
        if (v.large_lambda.kind == RegimeKind::Sharp && v.small_lambda.kind == RegimeKind::Sharp) {
            ++sharp;
            CHECK(v.small_lambda.rho <= v.large_lambda.rho);
        }
        if (!v.balanced) {
            ++divergent;
            CHECK(v.integrability.empty);
            CHECK(v.large_lambda.kind == RegimeKind::Divergent);
            CHECK(v.small_lambda.kind == RegimeKind::Divergent);
        } else {
            CHECK(v.large_lambda.kind != RegimeKind::Divergent);
        }
    }
    CHECK(sharp > 20);
    CHECK(divergent > 20);
}
