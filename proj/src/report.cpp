#include "qinv/report.hpp"

#include <sstream>

#include "json.hpp"

#include "qinv/version.hpp"

namespace qinv {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 15];
    v >>= 4;
  }
  return out;
}

InvariantReport::InvariantReport() : version(kToolVersion) {}

std::string InvariantReport::to_json() const {
  nlohmann::ordered_json j;
  j["manifold"] = manifold;
  j["kind"] = kind;
  j["object"] = object_id;
  j["field"] = field;
  j["value"] = value;
  nlohmann::ordered_json jd = nlohmann::ordered_json::object();
  for (const auto& [k, v] : digests) jd[k] = v;
  j["digests"] = jd;
  nlohmann::ordered_json jc = nlohmann::ordered_json::object();
  for (const auto& [k, v] : cost) jc[k] = v;
  j["cost"] = jc;
  nlohmann::ordered_json jn = nlohmann::ordered_json::object();
  for (const auto& [k, v] : notes) jn[k] = v;
  j["notes"] = jn;
  j["version"] = version;
  return j.dump();
}

std::string InvariantReport::to_text() const {
  std::ostringstream out;
  out << "manifold: " << manifold << "\n";
  out << "kind: " << kind << "\n";
  out << "object: " << object_id << "\n";
  out << "field: " << field << "\n";
  for (const auto& [k, v] : digests) out << "digest " << k << ": " << v << "\n";
  for (const auto& [k, v] : cost) out << "cost " << k << ": " << v << "\n";
  for (const auto& [k, v] : notes) out << k << ": " << v << "\n";
  out << "version: " << version << "\n";
  return out.str();
}

}  // namespace qinv
