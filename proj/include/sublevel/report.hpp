#pragma once

#include "sublevel/asymptotics.hpp"
#include "sublevel/decomposition.hpp"
#include "sublevel/verifier.hpp"

#include <json.hpp>

namespace sublevel {

using Json = nlohmann::json;

struct NewtonSummary {
    std::size_t d = 0;
    int dim = 0;
    std::vector<QVector> vertices;
    std::vector<QVector> recession_rays;
    std::vector<QVector> recession_lineality;
    std::vector<Hyperplane> inequalities;
    std::vector<Hyperplane> equations;
    std::size_t face_count = 0;
    DiagonalInterval diagonal;
    ExtRational delta_for;
    ExtRational delta_bac;
    std::optional<int> k_for;
    std::optional<int> k_bac;
    std::optional<std::vector<QVector>> main_face_for;  ///< points of the main face
    std::optional<std::vector<QVector>> main_face_bac;
    bool balanced = false;
    bool balanced_hrep_only = false;
    bool strongly_convex = false;

    friend bool operator==(const NewtonSummary&, const NewtonSummary&) = default;
};

struct FanSummary {
    std::size_t forward = 0;
    std::size_t backward = 0;
    std::size_t d0 = 0;

    friend bool operator==(const FanSummary&, const FanSummary&) = default;
};

struct AnalysisReport {
    std::string polynomial;  ///< canonical form
    std::string domain;      ///< as given
    std::vector<QVector> B;
    int sigma = 0;
    std::uint64_t seed = 0;
    NewtonSummary newton;
    FanSummary fan;
    DegeneracyReport degeneracy;
    std::optional<DegeneracyReport> degeneracy_oscillatory;  ///< sigma = 1, when sigma = 0 was requested
    AsymptoticVerdict verdict;
    std::string zero_in_image;
    std::vector<std::string> warnings;

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

NewtonSummary summarize(const NewtonData& nd);
FanSummary summarize(const OrientedSimplicialFan& fan);

/// parse, build_newton, build_fan, tau_search, predict, zero-in-image check.
AnalysisReport run_analysis(const std::string& polynomial, const std::string& domain, int sigma, std::uint64_t seed);

void to_json(Json& j, const Hyperplane& h);
void from_json(const Json& j, Hyperplane& h);
void to_json(Json& j, const DiagonalInterval& v);
void from_json(const Json& j, DiagonalInterval& v);
void to_json(Json& j, const FaceVerdict& v);
void from_json(const Json& j, FaceVerdict& v);
void to_json(Json& j, const DegeneracyReport& v);
void from_json(const Json& j, DegeneracyReport& v);
void to_json(Json& j, const RegimeVerdict& v);
void from_json(const Json& j, RegimeVerdict& v);
void to_json(Json& j, const Window& v);
void from_json(const Json& j, Window& v);
void to_json(Json& j, const AsymptoticVerdict& v);
void from_json(const Json& j, AsymptoticVerdict& v);
void to_json(Json& j, const NewtonSummary& v);
void from_json(const Json& j, NewtonSummary& v);
void to_json(Json& j, const FanSummary& v);
void from_json(const Json& j, FanSummary& v);
void to_json(Json& j, const AnalysisReport& v);
void from_json(const Json& j, AnalysisReport& v);
void to_json(Json& j, const MeasureEstimate& v);
void from_json(const Json& j, MeasureEstimate& v);
void to_json(Json& j, const FitResult& v);
void to_json(Json& j, const DivergenceProbe& v);
void to_json(Json& j, const SimplicialDualCell& c);
void to_json(Json& j, const OrientedSimplicialFan& f);

/// "lambda,value,stderr" rows, shortest round-trip decimal form.
std::string to_csv(const std::vector<MeasureEstimate>& sweep);
/// Shortest decimal that reads back to the same double, independent of the locale.
std::string format_double(double x);

}  // namespace sublevel
