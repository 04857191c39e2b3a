#pragma once

#include "regsing/frobenius.hpp"
#include "regsing/integrable.hpp"

#include "json.hpp"

namespace regsing {

// Reports are emitted with insertion-ordered keys so a document depends only
// on its mathematical content; whatever thread count or machine produced it,
// the bytes agree.
using Json = nlohmann::ordered_json;

Json json_scalars(const std::vector<Scalar>& v);
Json json_mi(const MultiIndex& g);
Json json_polys(const std::vector<MPoly>& v, const std::string& stem);

Json json_sigma_matrix(const std::vector<std::vector<SigmaStarOp>>& s);
Json json_solution(const LogSeriesSolution& u);
Json json_residual(const ResidualReport& r);
Json json_resonance(const ResonanceReport& r);
Json json_module(const ModuleDimension& d);
Json json_family(const SolutionFamily& f);
Json json_integrability(const IntegrabilityReport& r);
Json json_split_directions(const SplitDirections& d);
Json json_split_report(const SplitReport& r);

std::string dump_json(const Json& j, bool compact);

}  // namespace regsing
