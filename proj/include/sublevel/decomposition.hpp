#pragma once

#include "sublevel/newton.hpp"

#include <optional>

namespace sublevel {

struct SimplicialDualCell {
    std::vector<QVector> rays;  ///< linearly independent, max-norm 1
    Orientation orientation = Orientation::Forward;
    std::size_t owner = 0;  ///< face id in NewtonData::faces
    mpz_class M0 = 1;
    mpz_class M1 = 1;
    Cone cone;
    std::vector<std::size_t> pivot_rows;  ///< rows of the ray matrix used for coordinates
    QMatrix pivot_inverse;

    /// Exact coordinates alpha with x = sum alpha_i rays_i, or nullopt when x is outside the span.
    std::optional<std::vector<Rational>> coordinates(const QVector& x) const;
    bool contains(const QVector& x) const;
};

struct OrientedSimplicialFan {
    std::vector<SimplicialDualCell> cells;
    Cone ambient;
    std::size_t d0 = 0;
};

/// Placing triangulation of cone(generators), generators taken in the given order.
/// Non-pointed inputs are first cut along their lineality. Throws on a zero-dimensional cone.
std::vector<Cone> triangulate_cone(const std::vector<QVector>& generators);
std::vector<Cone> triangulate_cone(const Cone& c);

struct OrientedParts {
    std::optional<Cone> forward;
    std::optional<Cone> backward;
};
OrientedParts split_oriented(const Cone& dual_face);

OrientedSimplicialFan build_fan(const NewtonData& nd);

struct Location {
    std::size_t cell;
    std::vector<Rational> alpha;
};
/// First cell (in fan order) containing the integer point j. Throws std::out_of_range outside P^dual.
Location locate(const QVector& j, const OrientedSimplicialFan& fan);

}  // namespace sublevel
