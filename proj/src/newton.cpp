#include "sublevel/newton.hpp"

#include <stdexcept>

namespace sublevel {

DomainSpec::DomainSpec(std::vector<QVector> B) : generators(std::move(B)) {
    if (generators.empty()) throw std::invalid_argument("domain needs at least one generator");
    d = generators.front().dim();
    for (const auto& g : generators)
        if (g.dim() != d) throw std::invalid_argument("dimension mismatch among domain generators");
    cone = cone_from_generators(d, generators);
    dual = dual_cone(cone);
}

DomainSpec DomainSpec::global(std::size_t d) { return DomainSpec({QVector(d)}); }

DomainSpec DomainSpec::local(std::size_t d) {
    std::vector<QVector> B;
    for (std::size_t i = 0; i < d; ++i) B.push_back(QVector::unit(d, i));
    return DomainSpec(B);
}

DomainSpec DomainSpec::outer(std::size_t d) {
    std::vector<QVector> B;
    for (std::size_t i = 0; i < d; ++i) B.push_back(-QVector::unit(d, i));
    return DomainSpec(B);
}

bool DomainSpec::contains_origin_neighborhood() const {
    for (const auto& g : generators)
        for (std::size_t i = 0; i < d; ++i)
            if (sgn(g[i]) < 0) return false;
    return true;
}

Orientation HalfspaceClass::orientation() const {
    if (forward && backward) return Orientation::Level;
    return forward ? Orientation::Forward : Orientation::Backward;
}

HalfspaceClass classify_halfspace(const Hyperplane& h) {
    if (h.normal.is_zero()) throw std::invalid_argument("zero normal");
    HalfspaceClass c;
    Rational s = h.normal.sum();
    c.forward = sgn(s) >= 0;
    c.backward = sgn(s) <= 0;
    c.off_diagonal = sgn(h.offset) >= 0 && sgn(s) <= 0;
    if (sgn(s) == 0) {
        c.distance_for = ExtRational::neg_inf();
        c.distance_bac = ExtRational::pos_inf();
    } else {
        c.distance_for = c.distance_bac = ExtRational(Rational(h.offset / s));
    }
    return c;
}

std::vector<std::size_t> NewtonData::minimal_faces() const {
    std::vector<std::size_t> out;
    for (const auto& f : faces)
        if (f.dim == k0) out.push_back(f.id);
    return out;
}

namespace {

bool criterion_a(const NewtonData& nd) {
    std::vector<QVector> g = nd.domain.generators;
    for (const auto& m : nd.poly.support()) g.push_back(m);
    g.push_back(-QVector::ones(nd.domain.d));
    return dual_cone(g).is_zero();
}

bool criterion_b(const NewtonData& nd) {
    std::size_t d = nd.domain.d;
    for (auto id : nd.minimal_faces()) {
        const Face& f = nd.face(id);
        std::vector<QVector> normals = f.dual.halfspace_normals();
        normals.push_back(f.points.front());
        normals.push_back(-QVector::ones(d));
        if (!cone_from_halfspaces(d, normals).is_zero()) return false;
    }
    return true;
}

bool criterion_hrep(const NewtonData& nd) {
    for (const auto& h : nd.polyhedron.halfspaces())
        if (classify_halfspace(h).off_diagonal) return false;
    return true;
}

std::size_t minimal_face_containing(const NewtonData& nd, const QVector& y) {
    if (!nd.polyhedron.contains(y)) throw ConsistencyError("diagonal point outside the polyhedron");
    std::optional<std::size_t> best;
    for (const auto& f : nd.faces) {
        if (!f.contains(nd.polyhedron, y)) continue;
        if (!best || f.dim < nd.faces[*best].dim) best = f.id;
    }
    if (!best) throw std::out_of_range("point in the interior of the polyhedron");
    for (const auto& f : nd.faces)
        if (f.id != *best && f.dim == nd.faces[*best].dim && f.contains(nd.polyhedron, y))
            throw ConsistencyError("minimal face containing a point is not unique");
    return *best;
}

Face improper_face(const NewtonData& nd) {
    Face f;
    f.id = nd.faces.size();
    f.dim = nd.polyhedron.dim;
    f.points = nd.polyhedron.vertices;
    f.rays = nd.polyhedron.recession.rays;
    std::vector<QVector> normals{QVector(nd.domain.d)};
    for (const auto& e : nd.polyhedron.equations) {
        normals.push_back(e.normal);
        normals.push_back(-e.normal);
    }
    f.dual = cone_from_generators(nd.domain.d, normals);
    return f;
}

}  // namespace

bool is_balanced(const NewtonData& nd) {
    bool a = criterion_a(nd);
    bool b = criterion_b(nd);
    if (a != b) throw ConsistencyError("balancing criteria disagree");
    if (!criterion_hrep(nd) && a) throw ConsistencyError("off-diagonal facet in a balanced polyhedron");
    return a;
}

MainFaces main_faces(const NewtonData& nd) {
    if (nd.diagonal.empty) throw std::domain_error("diagonal intersection is empty; no main faces");
    std::size_t d = nd.domain.d;
    MainFaces mf;
    mf.face_for = minimal_face_containing(nd, QVector::ones(d) * nd.diagonal.lo);
    mf.k_for = nd.faces[mf.face_for].dim;
    if (nd.diagonal.hi.is_finite()) {
        mf.face_bac = minimal_face_containing(nd, QVector::ones(d) * nd.diagonal.hi.value());
        mf.k_bac = nd.faces[*mf.face_bac].dim;
    }
    return mf;
}

NewtonData build_newton(const LaurentPolynomial& p, const DomainSpec& b) {
    if (p.empty()) throw std::invalid_argument("polynomial has no terms");
    if (p.dim() != b.d)
        throw std::invalid_argument("dimension mismatch: polynomial has d=" + std::to_string(p.dim()) +
                                    ", domain has d=" + std::to_string(b.d));
    NewtonData nd{p, b, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, false, false, false, 0};
    nd.polyhedron = hull_with_recession(p.support(), b.cone);
    nd.dual = b.dual;
    nd.faces = face_lattice(nd.polyhedron);
    nd.k0 = static_cast<int>(b.d) - nd.dual.dim;
    if (!nd.faces.empty() && nd.faces.front().dim != nd.k0)
        throw ConsistencyError("minimal face dimension differs from d - dim(dual cone)");
    nd.diagonal = diagonal_intersection(nd.polyhedron);
    nd.strongly_convex = is_strongly_convex(b.cone);
    nd.balanced_hrep_only = criterion_hrep(nd);
    nd.balanced = is_balanced(nd);
    if (!nd.diagonal.empty) {
        nd.delta_for = ExtRational(nd.diagonal.lo);
        nd.delta_bac = nd.diagonal.hi;
        // delta_for = 0 may put 0 in the interior; then the main face is the polyhedron itself.
        if (nd.polyhedron.contains(QVector(b.d)) && nd.diagonal.lo == 0) {
            bool on_face = false;
            for (const auto& f : nd.faces) on_face = on_face || f.contains(nd.polyhedron, QVector(b.d));
            if (!on_face) nd.faces.push_back(improper_face(nd));
        }
        MainFaces mf = main_faces(nd);
        nd.main_for = mf.face_for;
        nd.k_for = mf.k_for;
        nd.main_bac = mf.face_bac;
        nd.k_bac = mf.k_bac;
    }
    return nd;
}

}  // namespace sublevel
