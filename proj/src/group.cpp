#include "qinv/group.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qinv/error.hpp"

namespace qinv {

int Group::identity() const {
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = mul[e][a] == a && mul[a][e] == a;
    if (ok) return e;
  }
  throw ValidationError("group '" + name + "' has no identity element");
}

int Group::inverse(int a) const {
  int e = identity();
  for (int b = 0; b < n; ++b)
    if (mul[a][b] == e && mul[b][a] == e) return b;
  throw ValidationError("group '" + name + "': element " + std::to_string(a) +
                        " has no inverse");
}

bool Group::is_abelian() const {
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (mul[a][b] != mul[b][a]) return false;
  return true;
}

std::vector<std::string> Group::validate() const {
  std::vector<std::string> problems;
  if (n <= 0) {
    problems.push_back("order must be positive, got " + std::to_string(n));
    return problems;
  }
  if ((int)mul.size() != n) {
    problems.push_back("table has " + std::to_string(mul.size()) +
                       " rows, expected " + std::to_string(n));
    return problems;
  }
  for (int a = 0; a < n; ++a) {
    if ((int)mul[a].size() != n) {
      problems.push_back("row " + std::to_string(a) + " has " +
                         std::to_string(mul[a].size()) + " entries, expected " +
                         std::to_string(n));
      return problems;
    }
    for (int b = 0; b < n; ++b)
      if (mul[a][b] < 0 || mul[a][b] >= n) {
        problems.push_back("entry (" + std::to_string(a) + "," +
                           std::to_string(b) + ") = " +
                           std::to_string(mul[a][b]) + " out of range");
        return problems;
      }
  }

  int e = -1;
  for (int c = 0; c < n && e < 0; ++c) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = mul[c][a] == a && mul[a][c] == a;
    if (ok) e = c;
  }
  if (e < 0) problems.push_back("no two-sided identity element");

  if (e >= 0) {
    for (int a = 0; a < n; ++a) {
      bool has = false;
      for (int b = 0; b < n && !has; ++b)
        has = mul[a][b] == e && mul[b][a] == e;
      if (!has)
        problems.push_back("element " + std::to_string(a) + " has no inverse");
    }
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) {
          problems.push_back("associativity fails at (" + std::to_string(a) +
                             "," + std::to_string(b) + "," + std::to_string(c) +
                             ")");
          return problems;
        }
  return problems;
}

std::string Group::serialize() const {
  std::ostringstream out;
  out << "group " << name << " order " << n << "\n";
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (b) out << ' ';
      out << mul[a][b];
    }
    out << "\n";
  }
  return out.str();
}

Group Group::parse(const std::string& text) {
  std::istringstream in(text);
  std::string kw;
  Group g;
  in >> kw;
  if (kw != "group") throw ParseError("group file must start with 'group'");
  std::string order_kw;
  if (!(in >> g.name >> order_kw >> g.n) || order_kw != "order")
    throw ParseError("expected 'group <name> order <n>'");
  if (g.n <= 0 || g.n > 4096)
    throw ParseError("group order " + std::to_string(g.n) + " out of range");
  g.mul.assign(g.n, std::vector<int>(g.n, 0));
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      if (!(in >> g.mul[a][b]))
        throw ParseError("group table ends early at row " + std::to_string(a));
  std::string extra;
  if (in >> extra) throw ParseError("trailing content in group file: " + extra);
  auto problems = g.validate();
  if (!problems.empty())
    throw ValidationError("group '" + g.name + "': " + problems.front());
  return g;
}

Group Group::cyclic(int n) {
  if (n <= 0) throw ValidationError("cyclic group order must be positive");
  Group g;
  g.name = "Z" + std::to_string(n);
  g.n = n;
  g.mul.assign(n, std::vector<int>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mul[a][b] = (a + b) % n;
  return g;
}

Group Group::sym3() {
  // Permutations of {0,1,2} listed as: id, (01), (02), (12), (012), (021).
  const int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0},
                           {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  Group g;
  g.name = "S3";
  g.n = 6;
  g.mul.assign(6, std::vector<int>(6, -1));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      int comp[3];
      for (int i = 0; i < 3; ++i) comp[i] = perms[a][perms[b][i]];
      for (int c = 0; c < 6; ++c)
        if (comp[0] == perms[c][0] && comp[1] == perms[c][1] &&
            comp[2] == perms[c][2])
          g.mul[a][b] = c;
    }
  return g;
}

Group Group::quat8() {
  // Elements 1, -1, i, -i, j, -j, k, -k in that order. sign bit = index & 1,
  // axis = index >> 1 with 0 <-> 1, 1 <-> i, 2 <-> j, 3 <-> k.
  auto enc = [](int axis, int sign) { return axis * 2 + sign; };
  Group g;
  g.name = "Q8";
  g.n = 8;
  g.mul.assign(8, std::vector<int>(8, -1));
  // axis_mul[a][b] = {axis, sign} for the product of unit quaternions.
  const int axis_mul[4][4][2] = {
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
      {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
      {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
      {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
  };
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int ax = a >> 1, bx = b >> 1;
      int axis = axis_mul[ax][bx][0];
      int sign = (axis_mul[ax][bx][1] + (a & 1) + (b & 1)) % 2;
      g.mul[a][b] = enc(axis, sign);
    }
  return g;
}

Group Group::direct_product(const Group& a, const Group& b) {
  Group g;
  g.name = a.name + "x" + b.name;
  g.n = a.n * b.n;
  g.mul.assign(g.n, std::vector<int>(g.n, 0));
  for (int a1 = 0; a1 < a.n; ++a1)
    for (int b1 = 0; b1 < b.n; ++b1)
      for (int a2 = 0; a2 < a.n; ++a2)
        for (int b2 = 0; b2 < b.n; ++b2)
          g.mul[a1 * b.n + b1][a2 * b.n + b2] =
              a.mul[a1][a2] * b.n + b.mul[b1][b2];
  return g;
}

Group Group::from_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : spec) {
    if (ch == 'x' || ch == 'X') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);

  auto one = [](const std::string& p) -> Group {
    if (p.empty()) throw ParseError("empty factor in group spec");
    std::string up;
    for (char ch : p) up.push_back((char)std::toupper((unsigned char)ch));
    if (up == "S3") return sym3();
    if (up == "Q8") return quat8();
    if (up[0] == 'Z' && up.size() > 1) {
      for (size_t i = 1; i < up.size(); ++i)
        if (!std::isdigit((unsigned char)up[i]))
          throw ParseError("bad group spec factor '" + p + "'");
      long n = std::stol(up.substr(1));
      if (n <= 0 || n > 4096)
        throw ParseError("cyclic order out of range in '" + p + "'");
      return cyclic((int)n);
    }
    throw ParseError("unknown group spec factor '" + p +
                     "' (expected Z<n>, S3 or Q8)");
  };

  Group g = one(parts[0]);
  for (size_t i = 1; i < parts.size(); ++i)
    g = direct_product(g, one(parts[i]));
  return g;
}

}  // namespace qinv
