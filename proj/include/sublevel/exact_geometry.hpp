#pragma once

#include "sublevel/linalg.hpp"
#include "sublevel/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sublevel {

/// Thrown when two independent computations that must agree do not.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The set <normal, y> >= offset (or = offset when used as an equation).
struct Hyperplane {
    QVector normal;
    Rational offset;

    Hyperplane() = default;
    /// Canonicalizes by positive scaling to max-norm 1. Throws on a zero normal.
    Hyperplane(QVector q, Rational r);

    bool satisfied_by(const QVector& y) const { return normal.dot(y) >= offset; }
    bool tight_at(const QVector& y) const { return normal.dot(y) == offset; }

    friend bool operator==(const Hyperplane& a, const Hyperplane& b) {
        return a.normal == b.normal && a.offset == b.offset;
    }
    friend bool operator<(const Hyperplane& a, const Hyperplane& b);
};

/// Polyhedral cone in both representations.
///   V: cone(rays) + span(lineality)
///   H: {x : <f, x> >= 0 for f in facets, <e, x> = 0 for e in equations}
struct Cone {
    std::size_t d = 0;
    std::vector<QVector> rays;       ///< extreme rays modulo lineality, max-norm 1
    std::vector<QVector> lineality;  ///< RREF basis
    std::vector<Hyperplane> facets;  ///< irredundant, offset 0
    std::vector<QVector> equations;  ///< RREF basis of the orthogonal complement of the span
    int dim = 0;

    bool contains(const QVector& x) const;
    bool contains_in_relative_interior(const QVector& x) const;
    bool is_pointed() const { return lineality.empty(); }
    bool is_zero() const { return dim == 0; }
    bool is_full() const { return dim == static_cast<int>(d) && facets.empty(); }
    /// rays plus +/- lineality vectors.
    std::vector<QVector> generators() const;
    /// facets plus +/- equations, all offset 0.
    std::vector<Hyperplane> halfspaces() const;
    /// Normals of halfspaces(), i.e. generators of the dual cone.
    std::vector<QVector> halfspace_normals() const;
};

/// Extreme-ray computation for {x : <a, x> >= 0 for all a in constraints}.
struct DDResult {
    std::vector<QVector> rays;
    std::vector<QVector> lineality;
};
DDResult double_description(std::size_t d, const std::vector<QVector>& constraints);

Cone cone_from_generators(std::size_t d, const std::vector<QVector>& generators);
Cone cone_from_halfspaces(std::size_t d, const std::vector<QVector>& normals);

/// cone^dual(G) = {q : <g, q> >= 0 for all g in cone(G)}.
Cone dual_cone(const std::vector<QVector>& generators);
Cone dual_cone(const Cone& c);

bool is_strongly_convex(const Cone& c);

/// Convex polyhedron conv(vertices) + recession.
struct Polyhedron {
    std::size_t d = 0;
    std::vector<Hyperplane> inequalities;  ///< irredundant <q,y> >= r
    std::vector<Hyperplane> equations;     ///< affine hull, <q,y> = r
    std::vector<QVector> vertices;         ///< one input point per minimal face
    Cone recession;
    int dim = 0;

    /// inequalities followed by +/- equations.
    std::vector<Hyperplane> halfspaces() const;
    bool contains(const QVector& y) const;
    bool is_pointed() const { return recession.is_pointed(); }
};

Polyhedron hull_with_recession(const std::vector<QVector>& points, const Cone& rec);

struct Face {
    std::size_t id = 0;
    int dim = 0;
    std::vector<std::size_t> active;  ///< indices into Polyhedron::inequalities tight on the face
    std::vector<QVector> points;      ///< vertices of the polyhedron on the face
    std::vector<QVector> rays;        ///< recession rays lying in the face
    std::vector<Hyperplane> supporting;  ///< the active inequalities, tight on the face
    Cone dual;                        ///< F^dual

    bool contains(const Polyhedron& p, const QVector& y) const;
};

/// All faces from dimension k0 up to d-1, including the polyhedron itself when dim < d.
/// Ordered by dimension, then lexicographically by point set.
std::vector<Face> face_lattice(const Polyhedron& p);

/// {t >= 0 : t*1 in P} = [lo, hi], hi possibly +inf.
struct DiagonalInterval {
    bool empty = true;
    Rational lo;
    ExtRational hi;

    friend bool operator==(const DiagonalInterval&, const DiagonalInterval&) = default;
};
DiagonalInterval diagonal_intersection(const Polyhedron& p);

}  // namespace sublevel
