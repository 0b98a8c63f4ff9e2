#pragma once

#include <json.hpp>

#include "dtc/bounds.hpp"
#include "dtc/coincidence.hpp"
#include "dtc/groups.hpp"
#include "dtc/measure.hpp"
#include "dtc/planner.hpp"
#include "dtc/simplicial.hpp"

namespace dtc {

using Json = nlohmann::ordered_json;

Json to_json(const FiniteMeasure& mu);
/// Inverse of to_json(FiniteMeasure); weights go through normalize().
FiniteMeasure measure_from_json(const Json& j);

Json to_json(const SimplicialComplex& k);
SimplicialComplex complex_from_json(const Json& j);

Json to_json(const MultiPath& m, int time_samples = kTimeSamples);
Json to_json(const VerificationReport& r);
Json to_json(const std::vector<HomologyGroup>& h);
Json to_json(const FixedSet& f);
Json to_json(const CoincidenceCertificate& c);
Json to_json(const SearchResult& r);
Json to_json(const SectionData& s);
Json to_json(const SectionCheck& c);
Json to_json(const FunctionFromSection& f);
Json to_json(const BoundsEntry& e);

/// Reads the fibers and weights written by to_json(SectionData).
SectionData section_from_json(const Json& j);

}  // namespace dtc
