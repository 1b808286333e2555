#pragma once

// JSON forms of parameters, semi-norm specs and reports. Infinite values
// are written as the string "inf" and NaN as null, so every document stays
// valid JSON.

#include <nlohmann/json.hpp>

#include "fracdev/axioms.hpp"
#include "fracdev/processes.hpp"
#include "fracdev/rates.hpp"
#include "fracdev/schauder.hpp"
#include "fracdev/seminorms.hpp"
#include "fracdev/smalldev.hpp"
#include "fracdev/stable_rng.hpp"
#include "fracdev/stats.hpp"

namespace fracdev::json {

using Json = nlohmann::json;

Json number(double x);
/// Accepts a number or the strings "inf" / "infinity".
double read_number(const Json& j);

Json to_json(const process::ProcessParams& params);
process::ProcessParams params_from_json(const Json& j);
Json to_json(const process::Grid& grid);
Json to_json(const process::Truncation& t);

/// {kind, eta?, p?, q?}; only the parameters used by the kind are written.
Json to_json(const seminorm::SemiNormSpec& spec);
seminorm::SemiNormSpec spec_from_json(const Json& j);
Json to_json(const seminorm::SemiNormClass& cls);
Json to_json(const seminorm::AxiomReport& report);

Json to_json(const rng::TailEstimate& t);
Json to_json(const stats::KsResult& ks);

Json to_json(const rates::RateGamma& g);
Json to_json(const rates::RateRow& row);

Json to_json(const schauder::SchauderCoeffs& c);
Json to_json(const schauder::CoefficientScale& s);
Json to_json(const schauder::ScalingReport& r);

Json to_json(const smalldev::SmallBallEstimate& e);
smalldev::SmallBallEstimate estimate_from_json(const Json& j);
Json to_json(const smalldev::RateFit& f);
Json to_json(const smalldev::LaplaceSummary& s);
Json to_json(const smalldev::DominanceReport& r);
Json to_json(const smalldev::NegligibilityReport& r);

}  // namespace fracdev::json
