#ifndef M0N_INTLATTICE_SERIALIZE_HPP
#define M0N_INTLATTICE_SERIALIZE_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "m0n/errors.hpp"
#include "m0n/intlattice/glattice.hpp"

namespace m0n {

inline nlohmann::json matrix_to_json(const IntMatrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline IntMatrix matrix_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw ParseError("matrix has the wrong number of rows");
  IntMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ParseError("matrix row has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[i][c].is_number_integer()) throw ParseError("matrix entry is not an integer");
      a(i, c) = j[i][c].get<std::int64_t>();
    }
  }
  return a;
}

/// {rank, group: {degree, generators}, action: {g1: rows, ...}}
inline nlohmann::json to_json(const GLattice& m) {
  nlohmann::json j;
  j["rank"] = m.rank();
  j["group"]["degree"] = m.group().degree();
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : m.group().generators()) gens.push_back(g.to_cycles());
  j["group"]["generators"] = std::move(gens);
  j["action"] = nlohmann::json::object();
  const auto names = m.generator_names();
  for (std::size_t i = 0; i < names.size(); ++i) j["action"][names[i]] = matrix_to_json(m.action(i));
  return j;
}

/// Inverse of to_json. The action is checked against the group.
inline GLattice glattice_from_json(const nlohmann::json& j) {
  try {
    const std::size_t rank = j.at("rank").get<std::size_t>();
    const int degree = j.at("group").at("degree").get<int>();
    std::vector<Permutation> gens;
    for (const auto& s : j.at("group").at("generators")) gens.push_back(Permutation::parse_cycles(s.get<std::string>(), degree));
    if (gens.empty()) throw ParseError("group needs at least one generator");
    PermutationGroup g(degree, gens);
    const auto& act = j.at("action");
    if (act.size() != gens.size()) throw ParseError("action must list one matrix per generator");
    std::vector<IntMatrix> mats;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::string name = "g" + std::to_string(i + 1);
      if (!act.contains(name)) throw ParseError("action is missing generator " + name);
      mats.push_back(matrix_from_json(act.at(name), rank, rank));
    }
    auto mode = GLattice::Verify::exhaustive;
    try {
      g.order(kVerifyElementCap);
    } catch (const CapExceeded&) {
      mode = GLattice::Verify::relators_only;
    }
    return GLattice(std::move(g), std::move(mats), {}, mode);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed lattice JSON: ") + e.what());
  }
}

inline std::string serialize(const GLattice& m) { return to_json(m).dump(); }

inline GLattice deserialize_glattice(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return glattice_from_json(j);
}

}  // namespace m0n

#endif  // M0N_INTLATTICE_SERIALIZE_HPP
