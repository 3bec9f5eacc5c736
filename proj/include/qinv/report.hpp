#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qinv {

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

// One invariant evaluation, ready for printing. Digests are over canonical
// serializations, so equivalent inputs (file vs builder, reformatted file)
// agree. Cost statistics carry no wall-clock entries; reports are
// deterministic across runs.
struct InvariantReport {
  std::string manifold;
  std::string kind;  // kuperberg | tv | homcount
  std::string object_id;
  std::string field;
  std::string value;
  std::vector<std::pair<std::string, std::string>> digests;
  std::vector<std::pair<std::string, long long>> cost;
  std::vector<std::pair<std::string, std::string>> notes;
  std::string version;

  InvariantReport();
  std::string to_json() const;
  std::string to_text() const;
};

}  // namespace qinv
