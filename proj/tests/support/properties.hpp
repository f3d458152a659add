#pragma once

// Property checks shared by the unit tests and the acceptance run. Each returns a tally of
// checked and failed assertions instead of asserting, so callers decide how to report.

#include "sublevel/asymptotics.hpp"
#include "sublevel/decomposition.hpp"
#include "sublevel/verifier.hpp"
#include "support/lp_oracle.hpp"
#include "support/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace props {

using namespace sublevel;

struct Tally {
    long checked = 0;
    long failed = 0;
    std::string first_failure;

    void check(bool ok, const std::string& what) {
        ++checked;
        if (!ok && failed++ == 0) first_failure = what;
    }
    Tally& operator+=(const Tally& o) {
        checked += o.checked;
        if (o.failed && !failed) first_failure = o.first_failure;
        failed += o.failed;
        return *this;
    }
    bool ok() const { return failed == 0 && checked > 0; }
};

inline QVector random_combination(std::mt19937_64& rng, const std::vector<QVector>& gens, std::size_t d,
                                  bool strict = false) {
    std::uniform_int_distribution<int> u(strict ? 1 : 0, 7);
    QVector x(d);
    for (const auto& g : gens) x += g * testutil::q(u(rng), u(rng) + 1);
    return x;
}

/// dual(dual(cone(G))) against the LP membership oracle on cone(G).
inline Tally duality_involution(std::mt19937_64& rng, int sets, int points) {
    Tally t;
    std::uniform_int_distribution<int> nd(1, 4), ng(1, 6);
    for (int k = 0; k < sets; ++k) {
        std::size_t d = nd(rng);
        std::vector<QVector> g;
        int n = ng(rng);
        for (int i = 0; i < n; ++i) g.push_back(testutil::rand_qvector(rng, d, 3, 2));
        Cone dd = dual_cone(dual_cone(g));
        for (int s = 0; s < points; ++s) {
            QVector x = (s % 2) ? testutil::rand_qvector(rng, d, 6, 3) : random_combination(rng, g, d);
            t.check(dd.contains(x) == oracle::in_cone(g, x), "involution at " + to_string(x));
        }
    }
    return t;
}

/// H-membership of the polyhedron against LP membership in conv(vertices) + recession.
inline Tally representation_agreement(const Polyhedron& P, std::mt19937_64& rng, int samples) {
    Tally t;
    std::size_t d = P.d;
    std::uniform_int_distribution<int> u(0, 4);
    for (int s = 0; s < samples; ++s) {
        QVector y;
        if (s % 2) {
            y = testutil::rand_qvector(rng, d, 10, 3);
        } else {
            y = QVector(d);
            Rational total = 0;
            std::vector<Rational> w;
            for (std::size_t i = 0; i < P.vertices.size(); ++i) {
                w.push_back(Rational(u(rng) + 1));
                total += w.back();
            }
            for (std::size_t i = 0; i < P.vertices.size(); ++i) y += P.vertices[i] * Rational(w[i] / total);
            for (const auto& r : P.recession.generators()) y += r * testutil::q(u(rng), 2);
            if (s % 4 == 0) y += testutil::rand_qvector(rng, d, 1, 4);
        }
        bool h = P.contains(y);
        bool v = oracle::in_polyhedron(P.vertices, P.recession.rays, P.recession.lineality, y);
        t.check(h == v, "representations disagree at " + to_string(y));
    }
    return t;
}

/// Cover, interior disjointness, simpliciality, orientation, owner minimality, lattice sandwich.
inline Tally fan_properties(const NewtonData& nd, std::mt19937_64& rng) {
    Tally t;
    auto fan = build_fan(nd);
    std::size_t d = nd.domain.d;
    t.check(!fan.cells.empty(), "empty fan");
    for (int s = 0; s < 1000; ++s) {
        QVector q = random_combination(rng, nd.dual.generators(), d);
        bool any = false;
        for (const auto& c : fan.cells) any = any || c.contains(q);
        t.check(any, "uncovered " + to_string(q));
    }
    for (std::size_t i = 0; i < fan.cells.size(); ++i) {
        const auto& cell = fan.cells[i];
        std::string tag = "cell " + std::to_string(i) + ": ";
        t.check(rank(cell.rays, d) == fan.d0 && cell.rays.size() == fan.d0, tag + "not simplicial");
        for (int s = 0; s < 1000; ++s) {
            QVector x = random_combination(rng, cell.rays, d, true);
            bool other = false;
            for (std::size_t k = 0; k < fan.cells.size(); ++k)
                if (k != i && fan.cells[k].contains(x)) other = true;
            t.check(!other, tag + "interior overlap at " + to_string(x));
        }
        for (const auto& r : cell.rays) {
            int sg = sgn(r.sum());
            t.check(cell.orientation == Orientation::Forward ? sg >= 0 : sg <= 0, tag + "orientation");
        }
        const Face& owner = nd.face(cell.owner);
        for (const auto& m : nd.poly.support()) {
            if (!owner.contains(nd.polyhedron, m)) continue;
            for (const auto& r : cell.rays) {
                Rational best = m.dot(r);
                for (const auto& n : nd.poly.support()) best = std::min(best, n.dot(r));
                t.check(m.dot(r) == best, tag + "owner not minimal");
            }
        }
        std::uniform_int_distribution<int> u(0, 4);
        for (int s = 0; s < 100; ++s) {
            QVector x(d);
            for (const auto& r : cell.rays) x += r * Rational(cell.M0 * u(rng));
            t.check(x.is_integral(), tag + "M0 lattice point not integral");
        }
        int found = 0;
        for (int s = 0; s < 4000 && found < 100; ++s) {
            QVector j = testutil::rand_qvector(rng, d, 12);
            if (!cell.contains(j)) continue;
            ++found;
            auto alpha = *cell.coordinates(j);
            for (const auto& a : alpha)
                t.check(sgn(a) >= 0 && Rational(a * cell.M1).get_den() == 1, tag + "M1 sandwich at " + to_string(j));
        }
        t.check(found > 0, tag + "no integer point sampled");
    }
    return t;
}

/// On lattice points j of each cell: <j,m> is minimal over Lambda and constant on the owner face,
/// and off-face exponents with a positive gap on every ray satisfy <j,n-m> >= c |j|_inf.
inline Tally monomialization(const NewtonData& nd, std::mt19937_64& rng, int points_per_cell) {
    Tally t;
    auto fan = build_fan(nd);
    std::uniform_int_distribution<int> u(0, 6);
    for (const auto& cell : fan.cells) {
        const Face& owner = nd.face(cell.owner);
        std::vector<QVector> on_face, off_face;
        for (const auto& m : nd.poly.support()) (owner.contains(nd.polyhedron, m) ? on_face : off_face).push_back(m);
        t.check(!on_face.empty(), "owner face carries no exponent");
        if (on_face.empty()) continue;
        for (int s = 0; s < points_per_cell; ++s) {
            QVector j(nd.domain.d);
            for (const auto& r : cell.rays) j += r * Rational(cell.M0 * u(rng));
            t.check(j.is_integral(), "non-integral lattice point");
            const QVector& m = on_face.front();
            for (const auto& mm : on_face) t.check(j.dot(mm) == j.dot(m), "face not monomial at " + to_string(j));
            for (const auto& n : nd.poly.support()) t.check(j.dot(m) <= j.dot(n), "not minimal at " + to_string(j));
            for (const auto& n : off_face) {
                Rational c = -1;
                for (const auto& r : cell.rays) {
                    Rational g = r.dot(n - m);
                    if (c < 0 || g < c) c = g;
                }
                if (sgn(c) > 0) t.check(j.dot(n) - j.dot(m) >= c * j.max_abs(), "gap fails at " + to_string(j));
            }
        }
    }
    return t;
}

/// <m,q> = distance * <q,1> on every supporting plane, and the distance ordering against the diagonal.
inline Tally distance_identity(const NewtonData& nd) {
    Tally t;
    std::size_t d = nd.domain.d;
    for (const auto& h : nd.polyhedron.halfspaces()) {
        Rational s = h.normal.sum();
        auto cls = classify_halfspace(h);
        std::string tag = "plane " + to_string(h.normal) + ": ";
        if (sgn(s) != 0)
            for (const auto& m : nd.poly.support())
                if (h.tight_at(m)) t.check(m.dot(h.normal) == cls.distance_for.value() * s, tag + "identity");
        if (!nd.diagonal.empty) {
            if (cls.forward) t.check(cls.distance_for <= nd.delta_for, tag + "forward ordering");
            if (cls.backward) t.check(nd.delta_bac <= cls.distance_bac, tag + "backward ordering");
            t.check(h.satisfied_by(QVector::ones(d) * nd.diagonal.lo), tag + "delta_for point outside");
            if (nd.delta_bac.is_finite())
                t.check(h.satisfied_by(QVector::ones(d) * nd.delta_bac.value()), tag + "delta_bac point outside");
        }
    }
    return t;
}

/// Every permutation of the pieces, and each permutation with its first piece repeated.
inline Tally combine_invariance(const std::vector<PartitionPiece>& pieces) {
    Tally t;
    auto ref = combine_partition(pieces);
    std::vector<std::size_t> idx(pieces.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    do {
        std::vector<PartitionPiece> perm;
        for (auto i : idx) perm.push_back(pieces[i]);
        t.check(combine_partition(perm) == ref, "reordering changes the verdict");
        perm.push_back(pieces[idx.front()]);
        t.check(combine_partition(perm) == ref, "duplication changes the verdict");
    } while (std::next_permutation(idx.begin(), idx.end()));
    return t;
}

/// Nesting of sublevel sets: estimates nonincreasing in lambda within 3 combined stderr.
inline Tally monotone_sweep(const std::vector<MeasureEstimate>& sweep) {
    Tally t;
    for (std::size_t i = 1; i < sweep.size(); ++i) {
        const auto& a = sweep[i - 1];
        const auto& b = sweep[i];
        const auto& lo = a.lambda <= b.lambda ? a : b;
        const auto& hi = a.lambda <= b.lambda ? b : a;
        t.check(lo.value >= hi.value - 3 * std::hypot(lo.std_error, hi.std_error),
                "not monotone at lambda " + std::to_string(hi.lambda));
    }
    return t;
}

/// Sublevel sets of 2P at lambda are those of P at 2 lambda: identical estimates bit for bit.
inline Tally doubling_shift(const LaurentPolynomial& p, const DomainSpec& b, const std::vector<double>& lambdas, int J,
                            int n, std::uint64_t seed) {
    Tally t;
    for (double l : lambdas) {
        auto a = measure_estimate(p.scaled(2), b, l, J, n, seed);
        auto c = measure_estimate(p, b, 2 * l, J, n, seed);
        t.check(a.value == c.value && a.std_error == c.std_error, "shift fails at lambda " + std::to_string(l));
    }
    return t;
}

}  // namespace props
