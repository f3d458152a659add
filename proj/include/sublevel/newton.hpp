#pragma once

#include "sublevel/exact_geometry.hpp"
#include "sublevel/polynomial.hpp"

#include <optional>

namespace sublevel {

/// The finite set B defining D_B = {x : |x^b| <= 1 for all b in B}.
struct DomainSpec {
    std::size_t d = 0;
    std::vector<QVector> generators;
    Cone cone;  ///< cone(B)
    Cone dual;  ///< cone^dual(B)

    explicit DomainSpec(std::vector<QVector> B);
    static DomainSpec global(std::size_t d);
    static DomainSpec local(std::size_t d);
    static DomainSpec outer(std::size_t d);

    /// 0 lies in the closure of D_B, i.e. cone(B) is inside the nonnegative orthant.
    bool contains_origin_neighborhood() const;
};

enum class Orientation { Forward, Backward, Level };

struct HalfspaceClass {
    bool forward = false;   ///< <q,1> >= 0
    bool backward = false;  ///< <q,1> <= 0
    bool off_diagonal = false;
    ExtRational distance_for;  ///< r/<q,1>, or -inf when <q,1> = 0
    ExtRational distance_bac;  ///< r/<q,1>, or +inf when <q,1> = 0
    Orientation orientation() const;
};

HalfspaceClass classify_halfspace(const Hyperplane& h);

struct NewtonData {
    LaurentPolynomial poly;
    DomainSpec domain;
    Polyhedron polyhedron;
    Cone dual;  ///< P^dual = cone^dual(B)
    std::vector<Face> faces;
    DiagonalInterval diagonal;
    ExtRational delta_for;
    ExtRational delta_bac;
    std::optional<std::size_t> main_for;  ///< face id
    std::optional<std::size_t> main_bac;
    std::optional<int> k_for;
    std::optional<int> k_bac;
    bool balanced = false;
    bool balanced_hrep_only = false;  ///< the weaker test on the minimal H-representation
    bool strongly_convex = false;
    int k0 = 0;

    const Face& face(std::size_t id) const { return faces.at(id); }
    std::vector<std::size_t> minimal_faces() const;
};

NewtonData build_newton(const LaurentPolynomial& p, const DomainSpec& b);

/// Criterion (a): cone(B u Lambda u {-1}) = R^d. Criterion (b): no supporting plane is
/// off-diagonal. Both are computed; disagreement throws ConsistencyError.
bool is_balanced(const NewtonData& nd);

struct MainFaces {
    std::size_t face_for;
    int k_for;
    std::optional<std::size_t> face_bac;
    std::optional<int> k_bac;
};

/// Throws std::domain_error when the diagonal intersection is empty.
MainFaces main_faces(const NewtonData& nd);

}  // namespace sublevel
