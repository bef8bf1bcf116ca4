#pragma once

#include <string>

#include <json.hpp>

#include "triq/correlations.hpp"
#include "triq/qstate.hpp"
#include "triq/relations.hpp"

// JSON interchange: state files consumed by the CLI, and the flat report
// encodings of profiles and relation checks.

namespace triq {

struct StateFile {
  PureState3 state;
  std::string label;
};

/// Parses a state-file JSON object holding either
///   {"canonical": {"l0":..,"l1":..,"l2":..,"l3":..,"l4":..,"phi":..}}
/// or
///   {"amplitudes": [[re,im] x 8]}
/// plus an optional "label". Throws std::invalid_argument naming the
/// offending field on malformed input.
StateFile parse_state(const nlohmann::json& j);
StateFile load_state(const std::string& path);

/// Flat keys s_iso, ds1..ds3, g1, g2, s_ani, V_ani.
nlohmann::json to_json(const AnisotropyProfile& p);

/// Keys name, lhs, rhs, residual, satisfied, state_label.
nlohmann::json to_json(const RelationReport& r);

}  // namespace triq
