#include "sublevel/asymptotics.hpp"

#include <algorithm>
#include <stdexcept>

namespace sublevel {

std::string to_string(RegimeKind k) {
    switch (k) {
        case RegimeKind::Sharp: return "Sharp";
        case RegimeKind::UpperBoundOnly: return "UpperBoundOnly";
        case RegimeKind::Divergent: return "Divergent";
        case RegimeKind::ExistsDivergentAmplitude: return "ExistsDivergentAmplitude";
        default: return "Inconclusive";
    }
}

RegimeKind parse_regime_kind(const std::string& s) {
    for (auto k : {RegimeKind::Sharp, RegimeKind::UpperBoundOnly, RegimeKind::Divergent, RegimeKind::Inconclusive,
                   RegimeKind::ExistsDivergentAmplitude})
        if (to_string(k) == s) return k;
    throw std::invalid_argument("unknown regime kind: " + s);
}

ExtRational reciprocal(const ExtRational& x) {
    if (!x.is_finite()) return ExtRational(0);
    if (sgn(x.value()) == 0) return ExtRational::pos_inf();
    return ExtRational(Rational(1) / x.value());
}

namespace {

struct Indices {
    std::size_t d = 0;
    bool balanced = false;
    bool strongly_convex = false;
    bool origin_neighborhood = false;
    ExtRational delta_for, delta_bac;
    std::optional<int> k_for, k_bac;
};

RegimeVerdict make(RegimeKind kind, ExtRational rho = ExtRational(0), int log_power = 0) {
    RegimeVerdict v;
    v.kind = kind;
    v.rho = rho;
    v.log_power = log_power;
    return v;
}

// tau < delta for an integer tau and an extended delta.
bool below(int tau, const ExtRational& delta) { return ExtRational(long(tau)) < delta; }

RegimeVerdict forward_estimate(RegimeKind kind, const Indices& ix) {
    return make(kind, reciprocal(ix.delta_for), int(ix.d) - 1 - *ix.k_for);
}

RegimeVerdict backward_estimate(RegimeKind kind, const Indices& ix) {
    if (ix.delta_bac.is_pos_inf()) return make(kind, ExtRational(0), 0);
    return make(kind, reciprocal(ix.delta_bac), int(ix.d) - 1 - *ix.k_bac);
}

// The non-sharp large-lambda bound when delta_for <= tau.
RegimeVerdict fallback_estimate(int tau, const Indices& ix) {
    int p = ExtRational(long(tau)) == ix.delta_for ? int(ix.d) - *ix.k_for : 0;
    return make(RegimeKind::UpperBoundOnly, reciprocal(ExtRational(long(tau))), p);
}

std::string interval_bound(int tau, const Indices& ix) {
    ExtRational lo = std::max(ix.delta_for, ExtRational(long(tau)));
    return "for delta in (" + to_string(lo) + ", " + to_string(ix.delta_bac) +
           "): measure <= C_delta * lambda^(-1/delta) for all lambda > 0";
}

AsymptoticVerdict analyze(const Indices& ix, std::optional<int> tau, std::optional<int> tau1,
                          std::vector<std::string> assumptions) {
    AsymptoticVerdict v;
    v.d = ix.d;
    v.balanced = ix.balanced;
    v.delta_for = ix.delta_for;
    v.delta_bac = ix.delta_bac;
    v.k_for = ix.k_for;
    v.k_bac = ix.k_bac;
    v.tau = tau;
    v.tau1 = tau1;
    v.assumptions = std::move(assumptions);

    if (!ix.balanced) {
        std::string range = ix.origin_neighborhood ? "all lambda > 0" : "lambda in (0,c) for some c > 0";
        v.large_lambda = make(RegimeKind::Divergent);
        v.small_lambda = make(RegimeKind::Divergent);
        v.large_lambda.range = v.small_lambda.range = range;
        v.oscillatory_large = make(RegimeKind::ExistsDivergentAmplitude);
        v.oscillatory_small = make(RegimeKind::ExistsDivergentAmplitude);
        v.integrability = Window{};
        return v;
    }
    if (!ix.k_for || (ix.delta_bac.is_finite() && !ix.k_bac))
        throw ConsistencyError("balanced Newton polyhedron without main faces");
    v.assumptions.push_back("0 in P(D_B) assumed");

    if (!tau) {
        v.assumptions.push_back("no normal-crossing type found up to the degree bound");
        v.large_lambda = v.small_lambda = make(RegimeKind::Inconclusive);
    } else if (below(*tau, ix.delta_for)) {
        v.large_lambda = forward_estimate(RegimeKind::Sharp, ix);
        v.small_lambda = backward_estimate(RegimeKind::Sharp, ix);
    } else if (below(*tau, ix.delta_bac)) {
        v.large_lambda = fallback_estimate(*tau, ix);
        v.small_lambda = backward_estimate(RegimeKind::Sharp, ix);
        v.assumptions.push_back(interval_bound(*tau, ix));
    } else {
        v.large_lambda = v.small_lambda = make(RegimeKind::Inconclusive);
        v.assumptions.push_back("tau >= delta_bac: the measure may diverge");
    }

    if (!ix.strongly_convex) {
        v.oscillatory_large = v.oscillatory_small = make(RegimeKind::Inconclusive);
        v.assumptions.push_back("cone(B) not strongly convex: no oscillatory estimate");
    } else if (!tau1) {
        v.oscillatory_large = v.oscillatory_small = make(RegimeKind::Inconclusive);
        v.assumptions.push_back("no sigma = 1 type available: no oscillatory estimate");
    } else if (*tau1 == 1 || below(*tau1, ix.delta_for)) {
        v.oscillatory_large = forward_estimate(RegimeKind::UpperBoundOnly, ix);
        v.oscillatory_small = backward_estimate(RegimeKind::UpperBoundOnly, ix);
    } else if (below(*tau1, ix.delta_bac)) {
        v.oscillatory_large = fallback_estimate(*tau1, ix);
        v.oscillatory_small = backward_estimate(RegimeKind::UpperBoundOnly, ix);
    } else {
        v.oscillatory_large = v.oscillatory_small = make(RegimeKind::Inconclusive);
    }

    v.integrability = integrability_window(v);
    return v;
}

Indices indices_of(const NewtonData& nd) {
    Indices ix;
    ix.d = nd.domain.d;
    ix.balanced = nd.balanced;
    ix.strongly_convex = nd.strongly_convex;
    ix.origin_neighborhood = nd.domain.contains_origin_neighborhood();
    ix.delta_for = nd.delta_for;
    ix.delta_bac = nd.delta_bac;
    ix.k_for = nd.k_for;
    ix.k_bac = nd.k_bac;
    return ix;
}

void check_report(const NewtonData& nd, const DegeneracyReport& dr) {
    for (const auto& fv : dr.per_face)
        if (!dr.declared && fv.face_id >= nd.faces.size())
            throw std::invalid_argument("degeneracy report does not belong to this Newton polyhedron");
}

void note_report(const DegeneracyReport& dr, std::vector<std::string>& out) {
    std::string s = "sigma = " + std::to_string(dr.sigma) + ": ";
    if (dr.declared) out.push_back(s + "type declared (" + dr.justification + ")");
    else if (dr.numerical) out.push_back(s + "tau numerical");
}

}  // namespace

AsymptoticVerdict predict(const NewtonData& nd, const DegeneracyReport& dr) {
    if (dr.sigma != 0 && dr.sigma != 1) throw std::invalid_argument("sigma must be 0 or 1");
    check_report(nd, dr);
    std::vector<std::string> notes;
    note_report(dr, notes);
    return analyze(indices_of(nd), dr.tau, dr.sigma == 1 ? dr.tau : std::nullopt, notes);
}

AsymptoticVerdict predict(const NewtonData& nd, const DegeneracyReport& dr_sub, const DegeneracyReport& dr_osc) {
    if (dr_sub.sigma != 0 && dr_sub.sigma != 1) throw std::invalid_argument("sigma must be 0 or 1");
    if (dr_osc.sigma != 1) throw std::invalid_argument("oscillatory verdict needs a sigma = 1 report");
    check_report(nd, dr_sub);
    check_report(nd, dr_osc);
    std::vector<std::string> notes;
    note_report(dr_sub, notes);
    note_report(dr_osc, notes);
    return analyze(indices_of(nd), dr_sub.tau, dr_osc.tau, notes);
}

Window integrability_window(const AsymptoticVerdict& v) {
    Window w;
    if (v.large_lambda.kind != RegimeKind::Sharp || v.small_lambda.kind != RegimeKind::Sharp) return w;
    ExtRational lo = reciprocal(v.delta_bac), hi = reciprocal(v.delta_for);
    if (!(lo < hi)) return w;
    w.empty = false;
    w.lo = lo;
    w.hi = hi;
    return w;
}

AsymptoticVerdict combine_partition(const std::vector<PartitionPiece>& pieces) {
    if (pieces.empty()) throw std::invalid_argument("combine_partition: no pieces");
    Indices ix;
    ix.d = pieces.front().newton->domain.d;
    ix.balanced = true;
    ix.strongly_convex = true;
    ix.origin_neighborhood = false;
    ix.delta_for = ExtRational::neg_inf();
    ix.delta_bac = ExtRational::pos_inf();
    std::optional<int> tau = 0, tau1 = 0;
    std::vector<std::string> notes;
    if (pieces.size() > 1) notes.push_back("partition and coordinate maps declared by the user, not checked");

    for (const auto& piece : pieces) {
        const NewtonData& nd = *piece.newton;
        if (nd.domain.d != ix.d) throw std::invalid_argument("combine_partition: dimension mismatch in " + piece.label);
        check_report(nd, piece.degeneracy);
        ix.balanced = ix.balanced && nd.balanced;
        ix.strongly_convex = ix.strongly_convex && nd.strongly_convex;
        ix.origin_neighborhood = ix.origin_neighborhood || nd.domain.contains_origin_neighborhood();
        ix.delta_for = std::max(ix.delta_for, nd.delta_for);
        ix.delta_bac = std::min(ix.delta_bac, nd.delta_bac);
        const auto& dr = piece.degeneracy;
        tau = (tau && dr.tau) ? std::optional<int>(std::max(*tau, *dr.tau)) : std::nullopt;
        tau1 = (tau1 && dr.sigma == 1 && dr.tau) ? std::optional<int>(std::max(*tau1, *dr.tau)) : std::nullopt;
        std::vector<std::string> local;
        note_report(dr, local);
        notes.insert(notes.end(), local.begin(), local.end());
    }
    std::sort(notes.begin(), notes.end());
    notes.erase(std::unique(notes.begin(), notes.end()), notes.end());
    for (const auto& piece : pieces) {
        const NewtonData& nd = *piece.newton;
        if (nd.delta_for == ix.delta_for && nd.k_for) ix.k_for = ix.k_for ? std::min(*ix.k_for, *nd.k_for) : *nd.k_for;
        if (ix.delta_bac.is_finite() && nd.delta_bac == ix.delta_bac && nd.k_bac)
            ix.k_bac = ix.k_bac ? std::min(*ix.k_bac, *nd.k_bac) : *nd.k_bac;
    }
    return analyze(ix, tau, tau1, notes);
}

}  // namespace sublevel
