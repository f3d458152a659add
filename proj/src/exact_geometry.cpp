#include "sublevel/exact_geometry.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace sublevel {

Hyperplane::Hyperplane(QVector q, Rational r) {
    Rational m = q.max_abs();
    if (sgn(m) == 0) throw std::invalid_argument("hyperplane with zero normal");
    Rational s = 1 / m;
    normal = q * s;
    offset = r * s;
}

bool operator<(const Hyperplane& a, const Hyperplane& b) {
    if (a.normal < b.normal) return true;
    if (b.normal < a.normal) return false;
    return a.offset < b.offset;
}

namespace {

using Bits = std::vector<bool>;

Bits zero_set(const QVector& r, const std::vector<QVector>& processed) {
    Bits z(processed.size());
    for (std::size_t i = 0; i < processed.size(); ++i) z[i] = sgn(processed[i].dot(r)) == 0;
    return z;
}

bool subset(const Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
    return true;
}

Bits intersect(const Bits& a, const Bits& b) {
    Bits c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] && b[i];
    return c;
}

void sort_unique(std::vector<QVector>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

QVector canonical_sign(const QVector& v) {
    for (std::size_t i = 0; i < v.dim(); ++i) {
        int s = sgn(v[i]);
        if (s != 0) return s < 0 ? -v : v;
    }
    return v;
}

Cone assemble(std::size_t d, const DDResult& primal, const DDResult& dual) {
    Cone c;
    c.d = d;
    c.rays = primal.rays;
    c.lineality = primal.lineality;
    for (const auto& f : dual.rays) c.facets.emplace_back(f, Rational(0));
    std::sort(c.facets.begin(), c.facets.end());
    c.equations = dual.lineality;
    c.dim = static_cast<int>(d - c.equations.size());
    return c;
}

std::vector<QVector> with_negatives(const std::vector<QVector>& rays, const std::vector<QVector>& lin) {
    std::vector<QVector> out = rays;
    for (const auto& l : lin) {
        out.push_back(l);
        out.push_back(-l);
    }
    return out;
}

}  // namespace

DDResult double_description(std::size_t d, const std::vector<QVector>& constraints) {
    std::vector<QVector> lin;
    for (std::size_t i = 0; i < d; ++i) lin.push_back(QVector::unit(d, i));
    std::vector<QVector> rays;
    std::vector<QVector> processed;

    for (const auto& a : constraints) {
        if (a.dim() != d) throw std::invalid_argument("dimension mismatch among generators");
        if (a.is_zero()) continue;

        std::size_t idx = lin.size();
        for (std::size_t i = 0; i < lin.size(); ++i)
            if (sgn(a.dot(lin[i])) != 0) { idx = i; break; }

        if (idx < lin.size()) {
            QVector ls = lin[idx];
            Rational s = a.dot(ls);
            if (sgn(s) < 0) { ls = -ls; s = -s; }
            std::vector<QVector> new_lin;
            for (std::size_t i = 0; i < lin.size(); ++i) {
                if (i == idx) continue;
                new_lin.push_back(lin[i] - ls * Rational(a.dot(lin[i]) / s));
            }
            for (auto& r : rays) r = (r - ls * Rational(a.dot(r) / s)).normalized();
            rays.push_back(ls.normalized());
            lin = std::move(new_lin);
        } else {
            std::vector<QVector> pos, neg, next;
            for (const auto& r : rays) {
                int s = sgn(a.dot(r));
                if (s > 0) pos.push_back(r);
                else if (s < 0) neg.push_back(r);
                else next.push_back(r);
            }
            for (const auto& r : pos) next.push_back(r);
            if (!neg.empty() && !pos.empty()) {
                std::vector<Bits> zall;
                for (const auto& r : rays) zall.push_back(zero_set(r, processed));
                for (const auto& p : pos) {
                    Bits zp = zero_set(p, processed);
                    for (const auto& n : neg) {
                        Bits zpn = intersect(zp, zero_set(n, processed));
                        bool adjacent = true;
                        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
                            if (rays[k] == p || rays[k] == n) continue;
                            if (subset(zpn, zall[k])) adjacent = false;
                        }
                        if (!adjacent) continue;
                        QVector nr = n * a.dot(p) - p * a.dot(n);
                        if (!nr.is_zero()) next.push_back(nr.normalized());
                    }
                }
            }
            rays = std::move(next);
        }
        processed.push_back(a);
    }

    DDResult out;
    out.lineality = rref(lin, d);
    std::vector<QVector> cleaned;
    for (const auto& r : rays) {
        QVector p = project_out(r, out.lineality).normalized();
        if (!p.is_zero()) cleaned.push_back(p);
    }
    sort_unique(cleaned);
    // Keep extreme rays only: tight constraints must have rank d - dim(lineality) - 1.
    std::size_t want = d - out.lineality.size() - 1;
    for (const auto& r : cleaned) {
        QMatrix tight;
        for (const auto& a : processed)
            if (sgn(a.dot(r)) == 0) tight.push_back(a);
        if (rank(tight, d) == want) out.rays.push_back(r);
    }
    return out;
}

Cone cone_from_generators(std::size_t d, const std::vector<QVector>& generators) {
    DDResult dual = double_description(d, generators);
    DDResult primal = double_description(d, with_negatives(dual.rays, dual.lineality));
    return assemble(d, primal, dual);
}

Cone cone_from_halfspaces(std::size_t d, const std::vector<QVector>& normals) {
    DDResult primal = double_description(d, normals);
    DDResult dual = double_description(d, with_negatives(primal.rays, primal.lineality));
    return assemble(d, primal, dual);
}

Cone dual_cone(const std::vector<QVector>& generators) {
    if (generators.empty()) throw std::invalid_argument("dual_cone needs at least one generator");
    std::size_t d = generators.front().dim();
    for (const auto& g : generators)
        if (g.dim() != d) throw std::invalid_argument("dimension mismatch among generators");
    return cone_from_halfspaces(d, generators);
}

Cone dual_cone(const Cone& c) {
    Cone out;
    out.d = c.d;
    for (const auto& f : c.facets) out.rays.push_back(f.normal);
    std::sort(out.rays.begin(), out.rays.end());
    out.lineality = c.equations;
    for (const auto& r : c.rays) out.facets.emplace_back(r, Rational(0));
    std::sort(out.facets.begin(), out.facets.end());
    out.equations = c.lineality;
    out.dim = static_cast<int>(c.d - c.lineality.size());
    return out;
}

bool is_strongly_convex(const Cone& c) { return c.lineality.empty(); }

bool Cone::contains(const QVector& x) const {
    for (const auto& f : facets)
        if (sgn(f.normal.dot(x)) < 0) return false;
    for (const auto& e : equations)
        if (sgn(e.dot(x)) != 0) return false;
    return true;
}

bool Cone::contains_in_relative_interior(const QVector& x) const {
    for (const auto& f : facets)
        if (sgn(f.normal.dot(x)) <= 0) return false;
    for (const auto& e : equations)
        if (sgn(e.dot(x)) != 0) return false;
    return true;
}

std::vector<QVector> Cone::generators() const { return with_negatives(rays, lineality); }

std::vector<Hyperplane> Cone::halfspaces() const {
    std::vector<Hyperplane> out = facets;
    for (const auto& e : equations) {
        out.emplace_back(e, Rational(0));
        out.emplace_back(-e, Rational(0));
    }
    return out;
}

std::vector<QVector> Cone::halfspace_normals() const {
    std::vector<QVector> out;
    for (const auto& h : halfspaces()) out.push_back(h.normal);
    return out;
}

std::vector<Hyperplane> Polyhedron::halfspaces() const {
    std::vector<Hyperplane> out = inequalities;
    for (const auto& e : equations) {
        out.push_back(e);
        out.emplace_back(-e.normal, -e.offset);
    }
    return out;
}

bool Polyhedron::contains(const QVector& y) const {
    for (const auto& h : inequalities)
        if (!h.satisfied_by(y)) return false;
    for (const auto& e : equations)
        if (!e.tight_at(y)) return false;
    return true;
}

Polyhedron hull_with_recession(const std::vector<QVector>& points, const Cone& rec) {
    if (points.empty()) throw std::invalid_argument("hull of an empty point set");
    std::size_t d = points.front().dim();
    if (rec.d != d) throw std::invalid_argument("dimension mismatch between points and recession cone");
    for (const auto& p : points)
        if (p.dim() != d) throw std::invalid_argument("dimension mismatch among points");

    auto lift = [d](const QVector& v, long t) {
        QVector w(d + 1);
        for (std::size_t i = 0; i < d; ++i) w[i] = v[i];
        w[d] = t;
        return w;
    };
    std::vector<QVector> gens;
    for (const auto& p : points) gens.push_back(lift(p, 1));
    for (const auto& g : rec.generators()) gens.push_back(lift(g, 0));

    DDResult dual = double_description(d + 1, gens);
    Polyhedron P;
    P.d = d;
    auto head = [d](const QVector& w) {
        QVector v(d);
        for (std::size_t i = 0; i < d; ++i) v[i] = w[i];
        return v;
    };
    for (const auto& w : dual.rays) {
        QVector q = head(w);
        if (q.is_zero()) continue;
        P.inequalities.emplace_back(q, Rational(-w[d]));
    }
    std::sort(P.inequalities.begin(), P.inequalities.end());
    for (const auto& w : dual.lineality) {
        QVector q = head(w);
        if (q.is_zero()) throw ConsistencyError("degenerate equation in homogenized hull");
        Hyperplane e(q, Rational(-w[d]));
        if (canonical_sign(e.normal) != e.normal) e = Hyperplane(-e.normal, -e.offset);
        P.equations.push_back(e);
    }
    std::sort(P.equations.begin(), P.equations.end());

    DDResult primal = double_description(d + 1, with_negatives(dual.rays, dual.lineality));
    for (const auto& w : primal.rays) {
        int ts = sgn(w[d]);
        if (ts < 0) throw ConsistencyError("homogenized hull ray with negative height");
        if (ts == 0) {
            if (!rec.contains(head(w))) throw ConsistencyError("hull recession ray outside recession cone");
            continue;
        }
        QVector y = head(w) * Rational(1 / w[d]);
        bool found = false;
        for (const auto& p : points) {
            QVector diff = p - y;
            if (project_out(diff, rec.lineality).is_zero()) {
                P.vertices.push_back(p);
                found = true;
                break;
            }
        }
        if (!found) throw ConsistencyError("hull vertex is not an input point");
    }
    sort_unique(P.vertices);
    P.recession = rec;
    P.dim = static_cast<int>(d - P.equations.size());
    return P;
}

bool Face::contains(const Polyhedron& p, const QVector& y) const {
    if (!p.contains(y)) return false;
    for (auto i : active)
        if (!p.inequalities[i].tight_at(y)) return false;
    return true;
}

std::vector<Face> face_lattice(const Polyhedron& P) {
    const auto& V = P.vertices;
    const auto& R = P.recession.rays;
    std::size_t nv = V.size(), n = V.size() + R.size();
    std::vector<Bits> tight;
    for (const auto& h : P.inequalities) {
        Bits b(n);
        for (std::size_t i = 0; i < nv; ++i) b[i] = h.tight_at(V[i]);
        for (std::size_t i = 0; i < R.size(); ++i) b[nv + i] = sgn(h.normal.dot(R[i])) == 0;
        tight.push_back(b);
    }
    auto has_vertex = [nv](const Bits& b) {
        for (std::size_t i = 0; i < nv; ++i)
            if (b[i]) return true;
        return false;
    };

    std::set<Bits> seen;
    std::deque<Bits> queue;
    if (P.dim < static_cast<int>(P.d) || P.inequalities.empty()) {
        Bits all(n, true);
        seen.insert(all);
    }
    for (const auto& t : tight)
        if (has_vertex(t) && seen.insert(t).second) queue.push_back(t);
    while (!queue.empty()) {
        Bits g = queue.front();
        queue.pop_front();
        for (const auto& t : tight) {
            Bits h = intersect(g, t);
            if (has_vertex(h) && seen.insert(h).second) queue.push_back(h);
        }
    }

    std::vector<Face> faces;
    for (const auto& g : seen) {
        Face f;
        for (std::size_t i = 0; i < nv; ++i)
            if (g[i]) f.points.push_back(V[i]);
        for (std::size_t i = 0; i < R.size(); ++i)
            if (g[nv + i]) f.rays.push_back(R[i]);
        std::vector<QVector> normals;
        for (std::size_t i = 0; i < tight.size(); ++i) {
            if (subset(g, tight[i])) {
                f.active.push_back(i);
                f.supporting.push_back(P.inequalities[i]);
                normals.push_back(P.inequalities[i].normal);
            }
        }
        for (const auto& e : P.equations) {
            normals.push_back(e.normal);
            normals.push_back(-e.normal);
        }
        QMatrix span;
        for (std::size_t i = 1; i < f.points.size(); ++i) span.push_back(f.points[i] - f.points[0]);
        for (const auto& r : f.rays) span.push_back(r);
        for (const auto& l : P.recession.lineality) span.push_back(l);
        f.dim = static_cast<int>(rank(span, P.d));
        f.dual = normals.empty() ? cone_from_generators(P.d, {QVector(P.d)}) : cone_from_generators(P.d, normals);
        if (f.dim + f.dual.dim != static_cast<int>(P.d))
            throw ConsistencyError("face and dual face dimensions do not add up to d");
        faces.push_back(std::move(f));
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.points != b.points)
            return std::lexicographical_compare(a.points.begin(), a.points.end(), b.points.begin(), b.points.end());
        return std::lexicographical_compare(a.rays.begin(), a.rays.end(), b.rays.begin(), b.rays.end());
    });
    for (std::size_t i = 0; i < faces.size(); ++i) faces[i].id = i;
    return faces;
}

DiagonalInterval diagonal_intersection(const Polyhedron& P) {
    DiagonalInterval out;
    Rational lo = 0;
    ExtRational hi = ExtRational::pos_inf();
    for (const auto& h : P.halfspaces()) {
        Rational s = h.normal.sum();
        int sg = sgn(s);
        if (sg > 0) {
            Rational t = h.offset / s;
            if (t > lo) lo = t;
        } else if (sg < 0) {
            ExtRational t(Rational(h.offset / s));
            if (t < hi) hi = t;
        } else if (sgn(h.offset) > 0) {
            return out;
        }
    }
    if (ExtRational(lo) > hi) return out;
    out.empty = false;
    out.lo = lo;
    out.hi = hi;
    return out;
}

}  // namespace sublevel
