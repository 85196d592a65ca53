#pragma once

#include <nlohmann/json.hpp>

#include "hysst/hybrid_arc.hpp"

namespace hysst {

/// Solution-pair wire format:
///   {
///     "domain": [[t_start, t_end, j], ...],
///     "states": [[t, j, x...], ...],
///     "inputs": [[t, j, u...], ...]
///   }
/// Doubles survive the round trip exactly; parse(serialize(psi)) == psi.
nlohmann::json to_json(const SolutionPair& psi);

SolutionPair solution_pair_from_json(const nlohmann::json& j);

}  // namespace hysst
