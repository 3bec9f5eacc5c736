#include "qinv/hopf.hpp"

#include <algorithm>
#include <sstream>

#include "qinv/error.hpp"

namespace qinv {

namespace {

template <typename Map, typename Key>
void acc(Map& m, const Key& k, const Scalar& v) {
  auto it = m.find(k);
  if (it == m.end())
    m.emplace(k, v);
  else
    it->second += v;
}

template <typename Map>
bool map_eq(const Map& a, const Map& b) {
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it == b.end()) {
      if (!v.is_zero()) return false;
    } else if (!(v == it->second)) {
      return false;
    }
  }
  for (const auto& [k, v] : b)
    if (a.find(k) == a.end() && !v.is_zero()) return false;
  return true;
}

bool vec_eq(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string join_from(const std::vector<std::string>& toks, size_t start) {
  std::string out;
  for (size_t i = start; i < toks.size(); ++i) {
    if (i > start) out += ' ';
    out += toks[i];
  }
  return out;
}

int parse_index(const std::string& tok, int n, const std::string& what,
                int line_no) {
  for (char c : tok)
    if (!std::isdigit((unsigned char)c))
      throw ParseError("line " + std::to_string(line_no) + ": bad " + what +
                       " index '" + tok + "'");
  long v = std::stol(tok);
  if (v < 0 || v >= n)
    throw ParseError("line " + std::to_string(line_no) + ": " + what +
                     " index " + tok + " out of range [0," +
                     std::to_string(n) + ")");
  return (int)v;
}

}  // namespace

std::string HopfData::serialize() const {
  std::ostringstream out;
  out << "hopf " << name << " dim " << n << " field " << field->text() << "\n";
  out << "mult:\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!m(i, j, k).is_zero())
          out << i << ' ' << j << ' ' << k << ' ' << m(i, j, k).text() << "\n";
  out << "comult:\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!co(i, j, k).is_zero())
          out << i << ' ' << j << ' ' << k << ' ' << co(i, j, k).text()
              << "\n";
  out << "unit:\n";
  for (int i = 0; i < n; ++i)
    if (!unit[i].is_zero()) out << i << ' ' << unit[i].text() << "\n";
  out << "counit:\n";
  for (int i = 0; i < n; ++i)
    if (!counit[i].is_zero()) out << i << ' ' << counit[i].text() << "\n";
  out << "antipode:\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!s(i, j).is_zero())
        out << i << ' ' << j << ' ' << s(i, j).text() << "\n";
  return out.str();
}

HopfData HopfData::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  HopfData d;
  bool header_seen = false;
  // 0 none, 1 mult, 2 comult, 3 unit, 4 counit, 5 antipode
  int section = 0;
  std::vector<bool> seen_mult, seen_comult, seen_unit, seen_counit, seen_anti;

  while (std::getline(in, line)) {
    ++line_no;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;

    if (!header_seen) {
      if (toks.size() < 6 || toks[0] != "hopf" || toks[2] != "dim" ||
          toks[4] != "field")
        throw ParseError(
            "line " + std::to_string(line_no) +
            ": expected header 'hopf <name> dim <n> field <desc>'");
      d.name = toks[1];
      try {
        d.n = std::stoi(toks[3]);
      } catch (...) {
        throw ParseError("line " + std::to_string(line_no) + ": bad dim '" +
                         toks[3] + "'");
      }
      if (d.n <= 0 || d.n > 128)
        throw ParseError("line " + std::to_string(line_no) + ": dim " +
                         toks[3] + " out of supported range [1,128]");
      d.field = FieldDescriptor::parse(join_from(toks, 5));
      size_t n3 = (size_t)d.n * d.n * d.n;
      d.mult.assign(n3, Scalar::zero(d.field));
      d.comult.assign(n3, Scalar::zero(d.field));
      d.unit.assign(d.n, Scalar::zero(d.field));
      d.counit.assign(d.n, Scalar::zero(d.field));
      d.antipode.assign((size_t)d.n * d.n, Scalar::zero(d.field));
      seen_mult.assign(n3, false);
      seen_comult.assign(n3, false);
      seen_unit.assign(d.n, false);
      seen_counit.assign(d.n, false);
      seen_anti.assign((size_t)d.n * d.n, false);
      header_seen = true;
      continue;
    }

    if (toks.size() == 1 && toks[0].back() == ':') {
      std::string sec = toks[0];
      if (sec == "mult:")
        section = 1;
      else if (sec == "comult:")
        section = 2;
      else if (sec == "unit:")
        section = 3;
      else if (sec == "counit:")
        section = 4;
      else if (sec == "antipode:")
        section = 5;
      else
        throw ParseError("line " + std::to_string(line_no) +
                         ": unknown section '" + sec + "'");
      continue;
    }

    if (section == 0)
      throw ParseError("line " + std::to_string(line_no) +
                       ": entry before any section header");

    int want = (section == 1 || section == 2) ? 3
               : (section == 5)               ? 2
                                              : 1;
    if ((int)toks.size() < want + 1)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected " + std::to_string(want) +
                       " indices and a scalar");
    int idx[3] = {0, 0, 0};
    for (int t = 0; t < want; ++t)
      idx[t] = parse_index(toks[t], d.n, "basis", line_no);
    Scalar val = Scalar::parse(d.field, join_from(toks, want));

    auto put = [&](std::vector<Scalar>& tensor, std::vector<bool>& seen,
                   size_t flat) {
      if (seen[flat])
        throw ParseError("line " + std::to_string(line_no) +
                         ": duplicate entry");
      seen[flat] = true;
      tensor[flat] = val;
    };
    size_t n = d.n;
    switch (section) {
      case 1:
        put(d.mult, seen_mult, ((size_t)idx[0] * n + idx[1]) * n + idx[2]);
        break;
      case 2:
        put(d.comult, seen_comult, ((size_t)idx[0] * n + idx[1]) * n + idx[2]);
        break;
      case 3:
        put(d.unit, seen_unit, idx[0]);
        break;
      case 4:
        put(d.counit, seen_counit, idx[0]);
        break;
      case 5:
        put(d.antipode, seen_anti, (size_t)idx[0] * n + idx[1]);
        break;
    }
  }
  if (!header_seen) throw ParseError("empty Hopf algebra file");
  return d;
}

HopfOps::HopfOps(const HopfData& d) : data(&d), n(d.n) {
  mrow.resize((size_t)n * n);
  col.resize(n);
  srow.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!d.m(i, j, k).is_zero())
          mrow[(size_t)i * n + j].emplace_back(k, d.m(i, j, k));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (!d.co(i, a, b).is_zero()) col[i].emplace_back(a, b, d.co(i, a, b));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!d.s(i, j).is_zero()) srow[i].emplace_back(j, d.s(i, j));
}

Vec HopfOps::zero_vec() const {
  return Vec((size_t)n, Scalar::zero(data->field));
}

Vec HopfOps::basis_vec(int i) const {
  Vec v = zero_vec();
  v[i] = Scalar::one(data->field);
  return v;
}

Vec HopfOps::mul(const Vec& x, const Vec& y) const {
  Vec z = zero_vec();
  for (int i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      Scalar c = x[i] * y[j];
      for (const auto& [k, mc] : mrow[(size_t)i * n + j]) z[k] += c * mc;
    }
  }
  return z;
}

Vec HopfOps::antipode_vec(const Vec& x) const {
  Vec z = zero_vec();
  for (int i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (const auto& [j, c] : srow[i]) z[j] += x[i] * c;
  }
  return z;
}

Scalar HopfOps::counit_of(const Vec& x) const {
  Scalar r = Scalar::zero(data->field);
  for (int i = 0; i < n; ++i) r += x[i] * data->counit[i];
  return r;
}

Scalar HopfOps::pair(const Vec& cov, const Vec& x) const {
  Scalar r = Scalar::zero(data->field);
  for (int i = 0; i < n; ++i) r += cov[i] * x[i];
  return r;
}

std::vector<std::string> validate_hopf(const HopfData& d) {
  size_t n = d.n, n3 = n * n * n;
  if (!d.field) throw ValidationError("Hopf data has no field");
  if (d.mult.size() != n3 || d.comult.size() != n3 || d.unit.size() != n ||
      d.counit.size() != n || d.antipode.size() != n * n)
    throw ValidationError("Hopf tensor sizes inconsistent with dim " +
                          std::to_string(d.n));

  HopfOps ops(d);
  std::vector<std::string> problems;
  Scalar zero = Scalar::zero(d.field);
  Scalar one = Scalar::one(d.field);

  // Associativity (e_i e_j) e_k = e_i (e_j e_k).
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j)
      for (int k = 0; k < d.n; ++k) {
        std::map<int, Scalar> lhs, rhs;
        for (const auto& [p, c1] : ops.mrow[(size_t)i * n + j])
          for (const auto& [q, c2] : ops.mrow[(size_t)p * n + k])
            acc(lhs, q, c1 * c2);
        for (const auto& [p, c1] : ops.mrow[(size_t)j * n + k])
          for (const auto& [q, c2] : ops.mrow[(size_t)i * n + p])
            acc(rhs, q, c1 * c2);
        if (!map_eq(lhs, rhs)) {
          problems.push_back("associativity fails at (" + std::to_string(i) +
                             "," + std::to_string(j) + "," +
                             std::to_string(k) + ")");
          goto assoc_done;
        }
      }
assoc_done:

  for (int i = 0; i < d.n; ++i) {
    if (!vec_eq(ops.mul(d.unit, ops.basis_vec(i)), ops.basis_vec(i)))
      problems.push_back("left unit law fails at " + std::to_string(i));
    if (!vec_eq(ops.mul(ops.basis_vec(i), d.unit), ops.basis_vec(i)))
      problems.push_back("right unit law fails at " + std::to_string(i));
  }

  // Coassociativity (Delta (x) id)Delta = (id (x) Delta)Delta.
  for (int i = 0; i < d.n; ++i) {
    std::map<long long, Scalar> lhs, rhs;
    for (const auto& [a, b, c1] : ops.col[i]) {
      for (const auto& [p, q, c2] : ops.col[a])
        acc(lhs, (long long)((p * n + q) * n + b), c1 * c2);
      for (const auto& [p, q, c2] : ops.col[b])
        acc(rhs, (long long)((a * n + p) * n + q), c1 * c2);
    }
    if (!map_eq(lhs, rhs)) {
      problems.push_back("coassociativity fails at " + std::to_string(i));
      break;
    }
  }

  // Counit laws (eps (x) id)Delta = id = (id (x) eps)Delta.
  for (int i = 0; i < d.n; ++i) {
    Vec left = ops.zero_vec(), right = ops.zero_vec();
    for (const auto& [a, b, c] : ops.col[i]) {
      left[b] += c * d.counit[a];
      right[a] += c * d.counit[b];
    }
    if (!vec_eq(left, ops.basis_vec(i)))
      problems.push_back("left counit law fails at " + std::to_string(i));
    if (!vec_eq(right, ops.basis_vec(i)))
      problems.push_back("right counit law fails at " + std::to_string(i));
  }

  // Bialgebra: Delta and eps are algebra maps, Delta(1) = 1 (x) 1, eps(1) = 1.
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j) {
      std::map<long long, Scalar> lhs, rhs;
      Scalar eps_prod = zero;
      for (const auto& [k, c] : ops.mrow[(size_t)i * n + j]) {
        eps_prod += c * d.counit[k];
        for (const auto& [a, b, c2] : ops.col[k])
          acc(lhs, (long long)(a * n + b), c * c2);
      }
      for (const auto& [a1, b1, c1] : ops.col[i])
        for (const auto& [a2, b2, c2] : ops.col[j]) {
          Scalar c12 = c1 * c2;
          for (const auto& [p, cp] : ops.mrow[(size_t)a1 * n + a2])
            for (const auto& [q, cq] : ops.mrow[(size_t)b1 * n + b2])
              acc(rhs, (long long)(p * n + q), c12 * cp * cq);
        }
      if (!map_eq(lhs, rhs)) {
        problems.push_back("comultiplication is not multiplicative at (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
        goto bialg_done;
      }
      if (!(eps_prod == d.counit[i] * d.counit[j])) {
        problems.push_back("counit is not multiplicative at (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
        goto bialg_done;
      }
    }
bialg_done:

  {
    std::map<long long, Scalar> dunit, uu;
    for (int i = 0; i < d.n; ++i) {
      if (d.unit[i].is_zero()) continue;
      for (const auto& [a, b, c] : ops.col[i])
        acc(dunit, (long long)(a * n + b), d.unit[i] * c);
    }
    for (int a = 0; a < d.n; ++a)
      for (int b = 0; b < d.n; ++b)
        if (!d.unit[a].is_zero() && !d.unit[b].is_zero())
          acc(uu, (long long)(a * n + b), d.unit[a] * d.unit[b]);
    if (!map_eq(dunit, uu))
      problems.push_back("comultiplication of the unit fails");
    if (!(ops.counit_of(d.unit) == one))
      problems.push_back("counit of the unit fails");
  }

  // Antipode axiom m(S (x) id)Delta = unit*eps = m(id (x) S)Delta.
  for (int i = 0; i < d.n; ++i) {
    Vec left = ops.zero_vec(), right = ops.zero_vec();
    for (const auto& [a, b, c] : ops.col[i]) {
      for (const auto& [p, cp] : ops.srow[a])
        for (const auto& [k, mc] : ops.mrow[(size_t)p * n + b])
          left[k] += c * cp * mc;
      for (const auto& [q, cq] : ops.srow[b])
        for (const auto& [k, mc] : ops.mrow[(size_t)a * n + q])
          right[k] += c * cq * mc;
    }
    Vec want = ops.zero_vec();
    for (int k = 0; k < d.n; ++k) want[k] = d.counit[i] * d.unit[k];
    if (!vec_eq(left, want))
      problems.push_back("antipode axiom m(S x id)Delta fails at " +
                         std::to_string(i));
    if (!vec_eq(right, want))
      problems.push_back("antipode axiom m(id x S)Delta fails at " +
                         std::to_string(i));
  }

  return problems;
}

Vec right_integral(const HopfData& d) {
  int n = d.n;
  Mat sys;
  sys.reserve((size_t)n * n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      Vec row((size_t)n, Scalar::zero(d.field));
      for (int j = 0; j < n; ++j) {
        row[j] = d.co(i, j, k);
        if (i == j) row[j] = row[j] - d.unit[k];
      }
      sys.push_back(std::move(row));
    }
  auto basis = nullspace(sys, d.field, n);
  if (basis.size() != 1)
    throw ValidationError(
        "right integral solution space has dimension " +
        std::to_string(basis.size()) + " (expected 1) for '" + d.name + "'");
  return basis[0];
}

Vec left_cointegral(const HopfData& d) {
  int n = d.n;
  Mat sys;
  sys.reserve((size_t)n * n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      Vec row((size_t)n, Scalar::zero(d.field));
      for (int j = 0; j < n; ++j) {
        row[j] = d.m(i, j, k);
        if (j == k) row[j] = row[j] - d.counit[i];
      }
      sys.push_back(std::move(row));
    }
  auto basis = nullspace(sys, d.field, n);
  if (basis.size() != 1)
    throw ValidationError(
        "left cointegral solution space has dimension " +
        std::to_string(basis.size()) + " (expected 1) for '" + d.name + "'");
  return basis[0];
}

IntegralPair normalize_integral_pair(const HopfData& d, Vec lambda,
                                     Vec cointegral) {
  HopfOps ops(d);
  Scalar val = ops.pair(lambda, cointegral);
  if (val.is_zero())
    throw ValidationError("lambda(Lambda) = 0 for '" + d.name +
                          "': not a valid integral pair");
  Scalar inv = val.inverse();
  for (auto& c : lambda) c *= inv;
  IntegralPair pair;
  pair.lambda = std::move(lambda);
  pair.cointegral = std::move(cointegral);
  pair.normalized = true;
  return pair;
}

HopfProfile profile(const HopfData& d, const IntegralPair& pair) {
  int n = d.n;
  HopfOps ops(d);
  HopfProfile prof;

  prof.unimodular = vec_eq(ops.antipode_vec(pair.cointegral), pair.cointegral);

  // S squared as a dense matrix.
  Mat s2((size_t)n, Vec((size_t)n, Scalar::zero(d.field)));
  for (int i = 0; i < n; ++i)
    for (const auto& [p, c1] : ops.srow[i])
      for (const auto& [j, c2] : ops.srow[p]) s2[i][j] += c1 * c2;
  prof.involutory = true;
  for (int i = 0; i < n && prof.involutory; ++i)
    for (int j = 0; j < n && prof.involutory; ++j) {
      Scalar want = (i == j) ? Scalar::one(d.field) : Scalar::zero(d.field);
      if (!(s2[i][j] == want)) prof.involutory = false;
    }

  // Pivot: solve S^2(e_i)*g - g*e_i = 0 in the unknown g.
  Mat sys;
  sys.reserve((size_t)n * n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      Vec row((size_t)n, Scalar::zero(d.field));
      for (int l = 0; l < n; ++l) {
        Scalar c = Scalar::zero(d.field);
        for (int j = 0; j < n; ++j)
          if (!s2[i][j].is_zero()) c += s2[i][j] * d.m(j, l, k);
        row[l] = c - d.m(l, i, k);
      }
      sys.push_back(std::move(row));
    }

  auto satisfies = [&](const Vec& g) {
    for (const auto& row : sys) {
      Scalar v = Scalar::zero(d.field);
      for (int l = 0; l < n; ++l) v += row[l] * g[l];
      if (!v.is_zero()) return false;
    }
    return true;
  };
  auto invertible = [&](const Vec& g) {
    Mat lm((size_t)n, Vec((size_t)n, Scalar::zero(d.field)));
    for (int l = 0; l < n; ++l) {
      if (g[l].is_zero()) continue;
      for (int j = 0; j < n; ++j)
        for (const auto& [k, c] : ops.mrow[(size_t)l * n + j])
          lm[k][j] += g[l] * c;
    }
    return rank(lm, d.field) == n;
  };

  std::vector<Vec> candidates;
  candidates.push_back(d.unit);
  auto basis = nullspace(sys, d.field, n);
  for (const auto& b : basis) candidates.push_back(b);
  if (basis.size() > 1) {
    Vec sum((size_t)n, Scalar::zero(d.field));
    for (const auto& b : basis)
      for (int l = 0; l < n; ++l) sum[l] += b[l];
    candidates.push_back(sum);
  }
  for (const auto& g : candidates) {
    bool nonzero = false;
    for (const auto& c : g) nonzero = nonzero || !c.is_zero();
    if (nonzero && satisfies(g) && invertible(g)) {
      prof.pivot = g;
      break;
    }
  }
  return prof;
}

SparseTensor expand_slot(const HopfOps& ops, const SparseTensor& t,
                         int slot) {
  SparseTensor out;
  for (const auto& [key, c] : t) {
    for (const auto& [a, b, c2] : ops.col[key[slot]]) {
      std::vector<int> nk;
      nk.reserve(key.size() + 1);
      nk.insert(nk.end(), key.begin(), key.begin() + slot);
      nk.push_back(a);
      nk.push_back(b);
      nk.insert(nk.end(), key.begin() + slot + 1, key.end());
      acc(out, nk, c * c2);
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

SparseTensor antipode_slot(const HopfOps& ops, const SparseTensor& t,
                           int slot) {
  SparseTensor out;
  for (const auto& [key, c] : t) {
    for (const auto& [j, c2] : ops.srow[key[slot]]) {
      std::vector<int> nk = key;
      nk[slot] = j;
      acc(out, nk, c * c2);
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

SparseTensor sweedler_power(const HopfOps& ops, const Vec& v, long m,
                            long long cap) {
  if (m < 0) throw ValidationError("sweedler_power: m must be >= 0");
  long long cost = 1;
  for (long s = 0; s < m; ++s) {
    if (cost > cap / std::max(1, ops.n)) {
      cost = cap + 1;
      break;
    }
    cost *= std::max(1, ops.n);
  }
  if (cost > cap)
    throw CostCapError("sweedler_power: n^m = " + std::to_string(ops.n) + "^" +
                       std::to_string(m) + " exceeds cap " +
                       std::to_string(cap));

  SparseTensor t;
  if (m == 0) {
    Scalar e = ops.counit_of(v);
    if (!e.is_zero()) t.emplace(std::vector<int>{}, e);
    return t;
  }
  for (int i = 0; i < ops.n; ++i)
    if (!v[i].is_zero()) t.emplace(std::vector<int>{i}, v[i]);
  for (long legs = 1; legs < m; ++legs) t = expand_slot(ops, t, (int)legs - 1);
  return t;
}

namespace {

// Shared core of the chromatic-matrix verification. The identity threads a
// basis element x through the first output leg of the matrix and must
// collapse to lambda(x) times the identity on the remaining legs.
std::vector<std::string> chromatic_problems(const HopfData& d,
                                            const IntegralPair& pair,
                                            const ChromaticMatrix& mat,
                                            bool stop_early) {
  int n = d.n;
  unsigned long long nn = (unsigned long long)n * n;
  std::vector<std::string> problems;
  for (int x = 0; x < n; ++x) {
    std::map<std::pair<int, int>, Scalar> got;
    for (const auto& [key, c] : mat.entries) {
      int in = (int)(key % nn), out = (int)(key / nn);
      int o1 = out / n, o2 = out % n;
      int i1 = in / n, i2 = in % n;
      const Scalar& mc = d.m(x, o1, i1);
      if (mc.is_zero()) continue;
      acc(got, std::make_pair(o2, i2), mc * c);
    }
    for (int l = 0; l < n; ++l)
      for (int j = 0; j < n; ++j) {
        Scalar want =
            (l == j) ? pair.lambda[x] : Scalar::zero(d.field);
        auto it = got.find(std::make_pair(l, j));
        Scalar have = (it == got.end()) ? Scalar::zero(d.field) : it->second;
        if (!(have == want)) {
          problems.push_back("chromatic identity fails at x=" +
                             std::to_string(x) + " legs (" +
                             std::to_string(l) + "," + std::to_string(j) +
                             ")");
          if (stop_early) return problems;
        }
      }
  }
  return problems;
}

}  // namespace

ChromaticMatrix chromatic_morphism_matrix(const HopfData& d,
                                          const IntegralPair& pair) {
  if (!pair.normalized)
    throw ValidationError(
        "chromatic_morphism_matrix requires a normalized integral pair");
  int n = d.n;
  HopfOps ops(d);

  // lam_s[p][i] = lambda(S(e_p) * e_i).
  Mat lam_s((size_t)n, Vec((size_t)n, Scalar::zero(d.field)));
  for (int p = 0; p < n; ++p)
    for (const auto& [u, cu] : ops.srow[p])
      for (int i = 0; i < n; ++i)
        for (const auto& [k, cm] : ops.mrow[(size_t)u * n + i])
          lam_s[p][i] += cu * cm * pair.lambda[k];

  ChromaticMatrix mat;
  mat.n = n;
  unsigned long long nn = (unsigned long long)n * n;
  for (int j = 0; j < n; ++j)
    for (const auto& [a, b, c1] : ops.col[j])
      for (const auto& [p, q, c2] : ops.col[a]) {
        // Delta^2(e_j) = sum (e_p (x) e_q (x) e_b).
        Scalar cc = c1 * c2;
        for (int i = 0; i < n; ++i) {
          if (lam_s[p][i].is_zero()) continue;
          unsigned long long key =
              ((unsigned long long)q * n + b) * nn + ((unsigned long long)i * n + j);
          acc(mat.entries, key, cc * lam_s[p][i]);
        }
      }
  for (auto it = mat.entries.begin(); it != mat.entries.end();)
    it = it->second.is_zero() ? mat.entries.erase(it) : std::next(it);

  auto problems = chromatic_problems(d, pair, mat, true);
  if (!problems.empty())
    throw ValidationError("chromatic morphism verification failed (" +
                          problems.front() +
                          "): structure constants and integral pair are "
                          "inconsistent");
  return mat;
}

std::vector<std::string> check_chromatic_identity(const HopfData& d,
                                                  const IntegralPair& pair,
                                                  const ChromaticMatrix& mat) {
  return chromatic_problems(d, pair, mat, false);
}

std::vector<std::string> check_integral_identities(const HopfData& d,
                                                   const IntegralPair& pair) {
  int n = d.n;
  HopfOps ops(d);
  std::vector<std::string> problems;

  // lambda(S(Lambda_(2))) Lambda_(1) = 1.
  Vec lam_of_s = ops.zero_vec();  // covector b -> lambda(S(e_b))
  for (int b = 0; b < n; ++b)
    for (const auto& [u, cu] : ops.srow[b]) lam_of_s[b] += cu * pair.lambda[u];
  Vec r = ops.zero_vec();
  for (int i = 0; i < n; ++i) {
    if (pair.cointegral[i].is_zero()) continue;
    for (const auto& [a, b, c] : ops.col[i])
      r[a] += pair.cointegral[i] * c * lam_of_s[b];
  }
  if (!vec_eq(r, d.unit))
    problems.push_back(
        "identity lambda(S(Lambda_(2))) Lambda_(1) = 1 fails");

  // Right integral property of lambda.
  for (int i = 0; i < n; ++i) {
    Vec v = ops.zero_vec();
    for (const auto& [a, b, c] : ops.col[i]) v[b] += c * pair.lambda[a];
    Vec want = ops.zero_vec();
    for (int k = 0; k < n; ++k) want[k] = pair.lambda[i] * d.unit[k];
    if (!vec_eq(v, want)) {
      problems.push_back("right integral property fails at x=" +
                         std::to_string(i));
      break;
    }
  }

  // Left cointegral property, entrywise: x*Lambda = eps(x)*Lambda.
  for (int x = 0; x < n; ++x) {
    Vec prod = ops.mul(ops.basis_vec(x), pair.cointegral);
    Vec want = ops.zero_vec();
    for (int k = 0; k < n; ++k) want[k] = d.counit[x] * pair.cointegral[k];
    if (!vec_eq(prod, want)) {
      problems.push_back("left cointegral property fails at x=" +
                         std::to_string(x));
      break;
    }
  }

  // Module-morphism evaluation: sum over Delta(e_a) of
  // lambda(S(a_(1)) x a_(2)) = lambda(x) eps(a).
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x) {
      Scalar lhs = Scalar::zero(d.field);
      for (const auto& [p, q, c] : ops.col[a]) {
        // lambda(S(e_p) e_x e_q)
        for (const auto& [u, cu] : ops.srow[p])
          for (const auto& [w, cw] : ops.mrow[(size_t)u * n + x])
            for (const auto& [k, ck] : ops.mrow[(size_t)w * n + q])
              lhs += c * cu * cw * ck * pair.lambda[k];
      }
      if (!(lhs == pair.lambda[x] * d.counit[a])) {
        problems.push_back("module-morphism evaluation fails at (a=" +
                           std::to_string(a) + ", x=" + std::to_string(x) +
                           ")");
        if (problems.size() > 8) return problems;
      }
    }

  return problems;
}

HopfData group_algebra(const Group& g, const FieldPtr& field) {
  auto bad = g.validate();
  if (!bad.empty())
    throw ValidationError("group_algebra: " + bad.front());
  int n = g.n;
  HopfData d;
  d.name = "group:" + g.name;
  d.n = n;
  d.field = field;
  size_t n3 = (size_t)n * n * n;
  Scalar zero = Scalar::zero(field), one = Scalar::one(field);
  d.mult.assign(n3, zero);
  d.comult.assign(n3, zero);
  d.unit.assign(n, zero);
  d.counit.assign(n, zero);
  d.antipode.assign((size_t)n * n, zero);
  int e = g.identity();
  d.unit[e] = one;
  for (int a = 0; a < n; ++a) {
    d.counit[a] = one;
    d.antipode[(size_t)a * n + g.inverse(a)] = one;
    d.comult[((size_t)a * n + a) * n + a] = one;
    for (int b = 0; b < n; ++b)
      d.mult[((size_t)a * n + b) * n + g.op(a, b)] = one;
  }
  return d;
}

HopfData function_algebra(const Group& g, const FieldPtr& field) {
  auto bad = g.validate();
  if (!bad.empty())
    throw ValidationError("function_algebra: " + bad.front());
  int n = g.n;
  HopfData d;
  d.name = "function:" + g.name;
  d.n = n;
  d.field = field;
  size_t n3 = (size_t)n * n * n;
  Scalar zero = Scalar::zero(field), one = Scalar::one(field);
  d.mult.assign(n3, zero);
  d.comult.assign(n3, zero);
  d.unit.assign(n, one);
  d.counit.assign(n, zero);
  d.antipode.assign((size_t)n * n, zero);
  int e = g.identity();
  d.counit[e] = one;
  for (int a = 0; a < n; ++a) {
    d.mult[((size_t)a * n + a) * n + a] = one;
    d.antipode[(size_t)a * n + g.inverse(a)] = one;
    for (int b = 0; b < n; ++b)
      d.comult[((size_t)g.op(a, b) * n + a) * n + b] = one;
  }
  return d;
}

HopfData drinfeld_double(const Group& g, const FieldPtr& field, int cap) {
  auto bad = g.validate();
  if (!bad.empty())
    throw ValidationError("drinfeld_double: " + bad.front());
  if (g.n > cap)
    throw UnsupportedError("drinfeld_double: |G| = " + std::to_string(g.n) +
                           " exceeds cap " + std::to_string(cap) +
                           " (dim would be " + std::to_string(g.n * g.n) +
                           ")");
  int k = g.n;
  int n = k * k;  // basis delta_g (x) h at index g*k + h
  HopfData d;
  d.name = "double:" + g.name;
  d.n = n;
  d.field = field;
  size_t n3 = (size_t)n * n * n;
  Scalar zero = Scalar::zero(field), one = Scalar::one(field);
  d.mult.assign(n3, zero);
  d.comult.assign(n3, zero);
  d.unit.assign(n, zero);
  d.counit.assign(n, zero);
  d.antipode.assign((size_t)n * n, zero);
  int e = g.identity();
  for (int gg = 0; gg < k; ++gg) d.unit[(size_t)gg * k + e] = one;
  for (int gg = 0; gg < k; ++gg)
    for (int h = 0; h < k; ++h) {
      int idx = gg * k + h;
      if (gg == e) d.counit[idx] = one;
      int hi = g.inverse(h);
      int sg = g.op(g.op(hi, g.inverse(gg)), h);
      d.antipode[(size_t)idx * n + (sg * k + hi)] = one;
      for (int a = 0; a < k; ++a) {
        int b = g.op(g.inverse(a), gg);  // a*b = gg
        d.comult[((size_t)idx * n + (a * k + h)) * n + (b * k + h)] = one;
      }
      for (int g2 = 0; g2 < k; ++g2)
        for (int h2 = 0; h2 < k; ++h2) {
          // (delta_gg (x) h)(delta_g2 (x) h2) is nonzero iff gg = h g2 h^{-1}.
          if (gg != g.op(g.op(h, g2), hi)) continue;
          d.mult[((size_t)idx * n + (g2 * k + h2)) * n +
                 (gg * k + g.op(h, h2))] = one;
        }
    }
  return d;
}

}  // namespace qinv
