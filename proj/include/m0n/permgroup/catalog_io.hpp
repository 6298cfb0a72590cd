#ifndef M0N_PERMGROUP_CATALOG_IO_HPP
#define M0N_PERMGROUP_CATALOG_IO_HPP

#include <istream>
#include <ostream>
#include <string>

#include "m0n/permgroup/catalog.hpp"

namespace m0n {

namespace detail {
inline std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}
}  // namespace detail

/// Writes the catalog text format: a `degree: N` header, an optional
/// `provenance:` line, then one `NAME: gen1; gen2` line per class.
inline void write_catalog(std::ostream& os, const SubgroupClassCatalog& cat) {
  os << "# subgroup classes of S_" << cat.degree << ", one representative per line\n";
  os << "degree: " << cat.degree << "\n";
  os << "provenance: " << to_string(cat.provenance) << "\n";
  for (std::size_t i = 0; i < cat.classes.size(); ++i) os << cat.names[i] << ": " << cat.classes[i].to_string() << "\n";
}

/// Parses the catalog text format. Lines after '#' are ignored. The result
/// is marked imported-file unless the file declares otherwise. Duplicate
/// names and (when check_distinct) conjugate entries are rejected.
inline SubgroupClassCatalog read_catalog(std::istream& is, bool check_distinct = true) {
  SubgroupClassCatalog cat;
  cat.provenance = CatalogProvenance::imported_file;
  std::string line;
  int lineno = 0;
  bool have_degree = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError("catalog line " + std::to_string(lineno) + ": expected NAME: generators");
    const std::string name = detail::trim(line.substr(0, colon));
    const std::string body = detail::trim(line.substr(colon + 1));
    if (name == "degree") {
      if (have_degree) throw ParseError("catalog line " + std::to_string(lineno) + ": repeated degree header");
      try {
        std::size_t used = 0;
        cat.degree = std::stoi(body, &used);
        if (used != body.size()) throw ParseError("");
      } catch (const std::exception&) {
        throw ParseError("catalog line " + std::to_string(lineno) + ": bad degree \"" + body + "\"");
      }
      if (cat.degree < 1 || cat.degree > Permutation::kMaxDegree)
        throw DomainError("catalog degree " + body + " out of range");
      have_degree = true;
      continue;
    }
    if (name == "provenance") {
      cat.provenance = parse_provenance(body);
      continue;
    }
    if (!have_degree) throw ParseError("catalog line " + std::to_string(lineno) + ": class before degree header");
    if (name.empty()) throw ParseError("catalog line " + std::to_string(lineno) + ": empty class name");
    for (const auto& existing : cat.names)
      if (existing == name) throw ParseError("catalog line " + std::to_string(lineno) + ": duplicate name " + name);
    cat.names.push_back(name);
    cat.classes.push_back(PermutationGroup::parse(body, cat.degree));
  }
  if (!have_degree) throw ParseError("catalog has no degree header");
  if (check_distinct)
    for (std::size_t i = 0; i < cat.classes.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (cat.classes[i].order() == cat.classes[j].order() && is_conjugate_subgroup(cat.classes[i], cat.classes[j]))
          throw DomainError("catalog entries " + cat.names[j] + " and " + cat.names[i] + " are conjugate");
  return cat;
}

}  // namespace m0n

#endif  // M0N_PERMGROUP_CATALOG_IO_HPP
