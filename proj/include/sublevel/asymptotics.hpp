#pragma once

#include "sublevel/degeneracy.hpp"

#include <string>
#include <vector>

namespace sublevel {

enum class RegimeKind { Sharp, UpperBoundOnly, Divergent, Inconclusive, ExistsDivergentAmplitude };

/// lambda^{-rho} (|log lambda| + 1)^{log_power}, or a non-estimate.
struct RegimeVerdict {
    RegimeKind kind = RegimeKind::Inconclusive;
    ExtRational rho;  ///< 1/0 is +inf, 1/inf is 0
    int log_power = 0;
    std::string range;  ///< lambda range of a Divergent verdict

    friend bool operator==(const RegimeVerdict&, const RegimeVerdict&) = default;
};

/// Open interval (lo, hi) of exponents rho with |P|^{-rho} integrable.
struct Window {
    bool empty = true;
    ExtRational lo;
    ExtRational hi;

    friend bool operator==(const Window&, const Window&) = default;
};

struct AsymptoticVerdict {
    std::size_t d = 0;
    bool balanced = false;
    ExtRational delta_for;
    ExtRational delta_bac;
    std::optional<int> k_for;
    std::optional<int> k_bac;
    std::optional<int> tau;   ///< drives the sublevel verdict
    std::optional<int> tau1;  ///< sigma = 1, drives the oscillatory verdict
    RegimeVerdict large_lambda;
    RegimeVerdict small_lambda;
    RegimeVerdict oscillatory_large;
    RegimeVerdict oscillatory_small;
    Window integrability;
    std::vector<std::string> assumptions;

    friend bool operator==(const AsymptoticVerdict&, const AsymptoticVerdict&) = default;
};

/// A sigma = 1 report serves both verdicts (tau_0 <= tau_1). A sigma = 0 report leaves the
/// oscillatory verdict Inconclusive.
AsymptoticVerdict predict(const NewtonData& nd, const DegeneracyReport& dr);
/// dr_sub has sigma 0 or 1, dr_osc must have sigma 1.
AsymptoticVerdict predict(const NewtonData& nd, const DegeneracyReport& dr_sub, const DegeneracyReport& dr_osc);

Window integrability_window(const AsymptoticVerdict& v);

struct PartitionPiece {
    const NewtonData* newton;
    DegeneracyReport degeneracy;
    std::string label;
};

/// Extremal indices over the pieces of a user-declared partition, then the predict case analysis
/// with tau = max over pieces.
AsymptoticVerdict combine_partition(const std::vector<PartitionPiece>& pieces);

ExtRational reciprocal(const ExtRational& x);
std::string to_string(RegimeKind k);
RegimeKind parse_regime_kind(const std::string& s);

}  // namespace sublevel
