#include "sublevel/decomposition.hpp"

#include <algorithm>
#include <stdexcept>

namespace sublevel {

namespace {

std::vector<QVector> normalized_nonzero(const std::vector<QVector>& gens) {
    std::vector<QVector> out;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        QVector n = g.normalized();
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    }
    return out;
}

// Cut a cone along its lineality until every piece is pointed.
std::vector<Cone> pointed_pieces(const Cone& c) {
    if (c.is_pointed()) return {c};
    const QVector& l = c.lineality.front();
    std::vector<Cone> out;
    for (int s : {1, -1}) {
        std::vector<QVector> normals = c.halfspace_normals();
        normals.push_back(l * Rational(s));
        for (auto& piece : pointed_pieces(cone_from_halfspaces(c.d, normals))) out.push_back(std::move(piece));
    }
    return out;
}

std::vector<std::vector<QVector>> place(const std::vector<QVector>& gens, std::size_t d) {
    std::vector<std::vector<QVector>> cells{{}};
    std::vector<QVector> used;
    for (const auto& g : gens) {
        QMatrix span = used;
        std::size_t k = rank(span, d);
        span.push_back(g);
        if (rank(span, d) > k) {
            for (auto& cell : cells) cell.push_back(g);
            used.push_back(g);
            continue;
        }
        Cone cur = cone_from_generators(d, used);
        if (cur.contains(g)) continue;
        std::vector<QVector> visible;
        for (const auto& f : cur.facets)
            if (sgn(f.normal.dot(g)) < 0) visible.push_back(f.normal);
        std::vector<std::vector<QVector>> added;
        for (const auto& cell : cells) {
            for (std::size_t drop = 0; drop < cell.size(); ++drop) {
                std::vector<QVector> sub;
                for (std::size_t i = 0; i < cell.size(); ++i)
                    if (i != drop) sub.push_back(cell[i]);
                for (const auto& f : visible) {
                    bool on = true;
                    for (const auto& r : sub) on = on && sgn(f.dot(r)) == 0;
                    if (!on) continue;
                    sub.push_back(g);
                    added.push_back(sub);
                    break;
                }
            }
        }
        for (auto& a : added) cells.push_back(std::move(a));
        used.push_back(g);
    }
    return cells;
}

}  // namespace

std::vector<Cone> triangulate_cone(const std::vector<QVector>& generators) {
    if (generators.empty()) throw std::invalid_argument("triangulate_cone needs generators");
    std::size_t d = generators.front().dim();
    Cone c = cone_from_generators(d, generators);
    if (c.dim == 0) throw std::invalid_argument("cannot triangulate a zero-dimensional cone");
    if (!c.is_pointed()) return triangulate_cone(c);
    std::vector<Cone> out;
    for (const auto& cell : place(normalized_nonzero(generators), d)) out.push_back(cone_from_generators(d, cell));
    return out;
}

std::vector<Cone> triangulate_cone(const Cone& c) {
    if (c.dim == 0) throw std::invalid_argument("cannot triangulate a zero-dimensional cone");
    std::vector<Cone> out;
    for (const auto& piece : pointed_pieces(c))
        for (const auto& cell : place(piece.rays, c.d)) out.push_back(cone_from_generators(c.d, cell));
    return out;
}

OrientedParts split_oriented(const Cone& dual_face) {
    OrientedParts parts;
    QVector one = QVector::ones(dual_face.d);
    for (int s : {1, -1}) {
        std::vector<QVector> normals = dual_face.halfspace_normals();
        normals.push_back(one * Rational(s));
        Cone part = cone_from_halfspaces(dual_face.d, normals);
        if (part.dim < dual_face.dim || part.dim == 0) continue;
        (s > 0 ? parts.forward : parts.backward) = part;
    }
    return parts;
}

std::optional<std::vector<Rational>> SimplicialDualCell::coordinates(const QVector& x) const {
    std::size_t k = rays.size();
    std::vector<Rational> alpha(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) alpha[i] += pivot_inverse[i][j] * x[pivot_rows[j]];
    QVector back(x.dim());
    for (std::size_t i = 0; i < k; ++i) back += rays[i] * alpha[i];
    if (!(back == x)) return std::nullopt;
    return alpha;
}

bool SimplicialDualCell::contains(const QVector& x) const {
    auto a = coordinates(x);
    if (!a) return false;
    for (const auto& v : *a)
        if (sgn(v) < 0) return false;
    return true;
}

namespace {

SimplicialDualCell make_cell(const Cone& simplex, Orientation o, std::size_t owner) {
    SimplicialDualCell cell;
    cell.rays = simplex.rays;
    cell.orientation = o;
    cell.owner = owner;
    cell.cone = simplex;
    std::size_t d = simplex.d, k = cell.rays.size();
    std::vector<Rational> entries;
    for (const auto& r : cell.rays)
        for (std::size_t i = 0; i < d; ++i) entries.push_back(r[i]);
    cell.M0 = lcm_denominator(entries).get_num();

    // First k-subset of rows, in lexicographic order, giving a nonsingular block.
    std::vector<std::size_t> rows(k);
    for (std::size_t i = 0; i < k; ++i) rows[i] = i;
    while (true) {
        QMatrix block;
        for (auto r : rows) {
            QVector row(k);
            for (std::size_t c = 0; c < k; ++c) row[c] = cell.rays[c][r];
            block.push_back(row);
        }
        if (auto inv = inverse(block)) {
            cell.pivot_rows = rows;
            cell.pivot_inverse = *inv;
            break;
        }
        std::size_t i = k;
        while (i > 0 && rows[i - 1] == d - k + i - 1) --i;
        if (i == 0) throw ConsistencyError("simplicial cell rays are linearly dependent");
        ++rows[i - 1];
        for (std::size_t j = i; j < k; ++j) rows[j] = rows[j - 1] + 1;
    }
    std::vector<Rational> inv_entries;
    for (const auto& row : cell.pivot_inverse)
        for (std::size_t c = 0; c < k; ++c) inv_entries.push_back(row[c]);
    cell.M1 = lcm_denominator(inv_entries).get_num();
    return cell;
}

}  // namespace

OrientedSimplicialFan build_fan(const NewtonData& nd) {
    OrientedSimplicialFan fan;
    fan.ambient = nd.dual;
    fan.d0 = static_cast<std::size_t>(nd.dual.dim);
    if (nd.dual.dim == 0) return fan;
    for (auto id : nd.minimal_faces()) {
        const Face& f = nd.face(id);
        OrientedParts parts = split_oriented(f.dual);
        for (auto [o, part] : {std::pair{Orientation::Forward, parts.forward},
                               std::pair{Orientation::Backward, parts.backward}}) {
            if (!part) continue;
            for (const auto& simplex : triangulate_cone(*part)) {
                if (simplex.dim != part->dim) continue;
                for (const auto& r : simplex.rays) {
                    int s = sgn(r.sum());
                    if ((o == Orientation::Forward && s < 0) || (o == Orientation::Backward && s > 0))
                        throw ConsistencyError("oriented cell ray has the wrong orientation");
                }
                fan.cells.push_back(make_cell(simplex, o, id));
            }
        }
    }
    return fan;
}

Location locate(const QVector& j, const OrientedSimplicialFan& fan) {
    if (!j.is_integral()) throw std::invalid_argument("locate expects an integer point");
    if (!fan.ambient.contains(j)) throw std::out_of_range("point " + to_string(j) + " is outside the dual cone");
    for (std::size_t i = 0; i < fan.cells.size(); ++i) {
        auto a = fan.cells[i].coordinates(j);
        if (!a) continue;
        bool ok = true;
        for (const auto& v : *a) ok = ok && sgn(v) >= 0;
        if (ok) return {i, *a};
    }
    throw ConsistencyError("fan cells do not cover the dual cone at " + to_string(j));
}

}  // namespace sublevel
