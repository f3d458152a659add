#pragma once

#include "sublevel/newton.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace sublevel {

enum class DegeneracyMethod { ExactMonomial, ExactRank, NumericalSearch, Declared };
enum class FaceVerdictKind { Nondegenerate, DegenerateWitness, Inconclusive };

struct FaceVerdict {
    std::size_t face_id = 0;
    DegeneracyMethod method = DegeneracyMethod::NumericalSearch;
    FaceVerdictKind verdict = FaceVerdictKind::Inconclusive;
    std::vector<double> witness;  ///< set for DegenerateWitness
    double min_value = 0;         ///< min of the normalized derivative sum found (1 for exact verdicts)

    friend bool operator==(const FaceVerdict&, const FaceVerdict&) = default;
};

struct DegeneracyParams {
    std::vector<double> h_sweep{4.0, 16.0};  ///< shell radii; the first is the reported one
    int starts = 64;                         ///< per sign orthant
    int max_iterations = 200;
    double eps_nd = 1e-9;
    double eps_w = 1e-12;
    std::uint64_t seed = 0;
    bool exact_shortcuts = true;
};

struct DegeneracyReport {
    int sigma = 0;
    std::optional<int> tau;  ///< nullopt: no tau up to degree_bound passes
    long degree_bound = 0;
    std::vector<FaceVerdict> per_face;  ///< at the reported tau, or at degree_bound when none passes
    bool numerical = false;             ///< some face verdict came from numerical search
    bool declared = false;
    double h = 4.0;
    std::string justification;

    friend bool operator==(const DegeneracyReport&, const DegeneracyReport&) = default;
};

/// Sub-sum of p over exponents lying on the face.
LaurentPolynomial face_polynomial(const LaurentPolynomial& p, const Face& f);

/// Is sum_{sigma <= |alpha| <= tau} |x^alpha d^alpha pf| free of zeros off the coordinate hyperplanes?
FaceVerdict check_face_nondegenerate(const LaurentPolynomial& pf, int sigma, int tau,
                                     const DegeneracyParams& params = {}, std::size_t face_id = 0);

/// Smallest tau in [sigma, degree bound] for which every face passes.
DegeneracyReport tau_search(const NewtonData& nd, int sigma, const DegeneracyParams& params = {});
DegeneracyReport tau_search(const LaurentPolynomial& p, const DomainSpec& b, int sigma,
                            const DegeneracyParams& params = {});

/// A user-declared type [sigma, tau] for a partition piece.
DegeneracyReport declared_report(int sigma, int tau, const std::string& note);

/// x^alpha d^alpha x^m = falling(m, alpha) x^m.
Rational falling_factorial(const QVector& m, const std::vector<int>& alpha);
std::vector<std::vector<int>> multi_indices(std::size_t d, int lo, int hi);

std::string to_string(DegeneracyMethod m);
std::string to_string(FaceVerdictKind k);

}  // namespace sublevel
