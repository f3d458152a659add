#include "sublevel/decomposition.hpp"
#include "sublevel/parser.hpp"
#include "support/random.hpp"
#include "support/properties.hpp"

#include <doctest.h>

#include <algorithm>

using namespace sublevel;

namespace {

QVector v2(long a, long b) { return QVector{Rational(a), Rational(b)}; }
QVector v3(long a, long b, long c) { return QVector{Rational(a), Rational(b), Rational(c)}; }

NewtonData nd_of(const std::string& poly, const std::string& dom) {
    LaurentPolynomial p = parse_polynomial(poly);
    return build_newton(p, DomainSpec(parse_domain(dom, p.dim())));
}

QVector random_in(std::mt19937_64& rng, const std::vector<QVector>& gens, std::size_t d, bool strict) {
    std::uniform_int_distribution<int> u(strict ? 1 : 0, 7);
    QVector x(d);
    for (const auto& g : gens) x += g * testutil::q(u(rng), u(rng) + 1);
    return x;
}

}  // namespace

TEST_CASE("placing triangulation of three planar rays") {
    auto cells = triangulate_cone(std::vector<QVector>{v2(1, 0), v2(1, 1), v2(0, 1)});
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].rays == std::vector<QVector>{v2(1, 0), v2(1, 1)});
    CHECK(cells[1].rays == std::vector<QVector>{v2(0, 1), v2(1, 1)});
}

TEST_CASE("simplicial cone triangulates to itself") {
    auto cells = triangulate_cone(std::vector<QVector>{v3(1, 0, 0), v3(1, 1, 0), v3(0, 0, 1)});
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].rays.size() == 3);
    CHECK_THROWS(triangulate_cone(std::vector<QVector>{v2(0, 0)}));
}

TEST_CASE("four rays in three dimensions give two cells") {
    std::vector<QVector> g{v3(1, 0, 1), v3(0, 1, 1), v3(-1, 0, 1), v3(0, -1, 1)};
    auto cells = triangulate_cone(g);
    REQUIRE(cells.size() == 2);
    Cone whole = cone_from_generators(3, g);
    std::mt19937_64 rng(3);
    int cover = 0, disjoint = 0;
    for (int s = 0; s < 1000; ++s) {
        QVector x = random_in(rng, g, 3, false);
        bool any = false;
        for (const auto& c : cells) any = any || c.contains(x);
        cover += any == whole.contains(x);
        const Cone& home = cells[s % 2];
        QVector y = random_in(rng, home.rays, 3, true);
        disjoint += !cells[1 - s % 2].contains(y);
    }
    CHECK(cover == 1000);
    CHECK(disjoint == 1000);
}

TEST_CASE("oriented split") {
    auto a = split_oriented(cone_from_generators(2, {v2(1, 2), v2(2, 1)}));
    REQUIRE(a.forward);
    CHECK_FALSE(a.backward);
    CHECK(a.forward->rays == std::vector<QVector>{QVector{Rational(1, 2), Rational(1)}, QVector{Rational(1), Rational(1, 2)}});

    auto b = split_oriented(cone_from_generators(2, {v2(2, -1), v2(-1, -1)}));
    REQUIRE(b.forward);
    REQUIRE(b.backward);
    CHECK(b.forward->dim == 2);
    CHECK(b.backward->dim == 2);
    auto has = [](const Cone& c, const QVector& r) {
        return std::find(c.rays.begin(), c.rays.end(), r.normalized()) != c.rays.end();
    };
    CHECK(has(*b.forward, v2(1, -1)));
    CHECK(has(*b.forward, v2(2, -1)));
    CHECK(has(*b.backward, v2(1, -1)));
    CHECK(has(*b.backward, v2(-1, -1)));
}

TEST_CASE("fan of x1 x2 over the local domain") {
    NewtonData nd = nd_of("x1*x2", "local");
    auto fan = build_fan(nd);
    REQUIRE(fan.cells.size() == 1);
    const auto& c = fan.cells[0];
    CHECK(c.rays == std::vector<QVector>{v2(0, 1), v2(1, 0)});
    CHECK(c.orientation == Orientation::Forward);
    CHECK(c.M0 == 1);
    CHECK(c.M1 == 1);
    auto loc = locate(v2(3, 5), fan);
    CHECK(loc.cell == 0);
    CHECK(loc.alpha == std::vector<Rational>{5, 3});
    CHECK_THROWS_AS(locate(v2(-1, 0), fan), std::out_of_range);
}

TEST_CASE("pentagon with one straddling vertex gives six cells") {
    NewtonData nd = nd_of("x1 + x1^3*x2 + x1^3*x2^3 + x1*x2^2 + x2", "global");
    REQUIRE(nd.polyhedron.vertices.size() == 5);
    auto fan = build_fan(nd);
    CHECK(fan.cells.size() == 6);
    int straddle = 0;
    for (auto id : nd.minimal_faces()) {
        int n = 0;
        for (const auto& c : fan.cells) n += c.owner == id;
        straddle += n == 2;
    }
    CHECK(straddle == 1);
}

TEST_CASE("fan of the first golden polytope") {
    NewtonData nd = nd_of("x1^4*x2^4*(1-x1^2-x2^2)^2", "global");
    auto fan = build_fan(nd);
    std::vector<std::size_t> fwd, bwd;
    for (std::size_t i = 0; i < fan.cells.size(); ++i) {
        const auto& c = fan.cells[i];
        if (c.cone.contains_in_relative_interior(v2(1, 1))) fwd.push_back(i);
        if (c.contains(v2(-1, -1))) bwd.push_back(i);
    }
    REQUIRE(fwd.size() == 1);
    CHECK(fan.cells[fwd[0]].orientation == Orientation::Forward);
    CHECK(nd.face(fan.cells[fwd[0]].owner).points == std::vector<QVector>{v2(4, 4)});
    // -(1,1) spans the dual of the main backward edge; with vertex-level cells it is a shared ray.
    REQUIRE(bwd.size() == 2);
    const Face& edge = nd.face(*nd.main_bac);
    for (auto i : bwd) {
        CHECK(fan.cells[i].orientation == Orientation::Backward);
        const auto& pts = nd.face(fan.cells[i].owner).points;
        CHECK(std::includes(edge.points.begin(), edge.points.end(), pts.begin(), pts.end()));
    }
    CHECK(locate(v2(-1, -1), fan).cell == bwd[0]);
}

TEST_CASE("fan cover, disjointness, lattice sandwich, orientation and owners") {
    std::mt19937_64 rng(29);
    for (auto [p, b] : std::vector<std::pair<std::string, std::string>>{
             {"x1^4*x2^4*(1-x1^2-x2^2)^2", "global"},
             {"x1^4*x2^4*(x2-x1^2)^2", "global"},
             {"x1*x2", "local"},
             {"x2^2*(x1^4+x1^8+1)", "[(-2,1)]"},
             {"(1+x1^4+x2^4)*(x1^4+x2^2)", "global"},
             {"x1*x2 + x1^2", "[(1,-1),(-1,1)]"},
             {"x1*x2+x2*x3+x3*x1", "global"},
             {"x1^2*x3 + x2^3 + x1*x2*x3^2 + x3^4", "local"},
             {"x1^(1/2)*x2 + x1^3*x2^(-1/3)", "[(1,1),(3,-1)]"}}) {
        CAPTURE(p);
        auto t = props::fan_properties(nd_of(p, b), rng);
        CHECK_MESSAGE(t.ok(), t.first_failure);
    }
}
