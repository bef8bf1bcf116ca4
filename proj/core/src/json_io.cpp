#include "triq/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace triq {

namespace {

double require_number(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number())
    throw std::invalid_argument("state file: missing or non-numeric field '" +
                                key + "'");
  return j[key].get<double>();
}

}  // namespace

StateFile parse_state(const nlohmann::json& j) {
  std::string label = j.value("label", "");
  if (j.contains("canonical")) {
    const auto& c = j["canonical"];
    CanonicalParams p;
    p.l0 = require_number(c, "l0");
    p.l1 = require_number(c, "l1");
    p.l2 = require_number(c, "l2");
    p.l3 = require_number(c, "l3");
    p.l4 = require_number(c, "l4");
    p.phi = c.value("phi", 0.0);
    return {PureState3::from_canonical(p), label};
  }
  if (j.contains("amplitudes")) {
    const auto& a = j["amplitudes"];
    if (!a.is_array() || a.size() != 8)
      throw std::invalid_argument(
          "state file: field 'amplitudes' must hold 8 [re, im] pairs");
    Vec8 amp;
    for (size_t i = 0; i < 8; ++i) {
      if (!a[i].is_array() || a[i].size() != 2 || !a[i][0].is_number() ||
          !a[i][1].is_number())
        throw std::invalid_argument(
            "state file: field 'amplitudes' entries must be [re, im] pairs");
      amp(static_cast<int>(i)) = cplx(a[i][0].get<double>(), a[i][1].get<double>());
    }
    return {PureState3(amp), label};
  }
  throw std::invalid_argument(
      "state file: need field 'canonical' or 'amplitudes'");
}

StateFile load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("state file: invalid JSON (" +
                                std::string(e.what()) + ")");
  }
  return parse_state(j);
}

nlohmann::json to_json(const AnisotropyProfile& p) {
  return {{"s_iso", p.s_iso}, {"ds1", p.deltas[0]}, {"ds2", p.deltas[1]},
          {"ds3", p.deltas[2]}, {"g1", p.g1},       {"g2", p.g2},
          {"s_ani", p.s_ani},   {"V_ani", p.v_ani}};
}

nlohmann::json to_json(const RelationReport& r) {
  return {{"name", r.name},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"residual", r.residual},
          {"satisfied", r.satisfied},
          {"state_label", r.state_label}};
}

}  // namespace triq
