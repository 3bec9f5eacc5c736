#include "qinv/fusion.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qinv/error.hpp"

namespace qinv {

namespace {

constexpr int kMaxLabels = 128;
constexpr size_t kMaxProblems = 64;

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
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

int parse_label(const std::string& tok, int k, int line_no) {
  size_t pos = 0;
  int v = -1;
  try {
    v = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != tok.size() || v < 0 || v >= k)
    throw ParseError("line " + std::to_string(line_no) + ": bad label '" +
                     tok + "'");
  return v;
}

std::string tuple_text(const std::array<int, 6>& t) {
  std::string s = "(";
  for (int i = 0; i < 6; ++i) {
    if (i) s += ' ';
    s += std::to_string(t[i]);
  }
  return s + ")";
}

bool push_problem(std::vector<std::string>* problems, std::string msg) {
  if (problems->size() >= kMaxProblems) {
    if (problems->size() == kMaxProblems)
      problems->push_back("further problems suppressed");
    return false;
  }
  problems->push_back(std::move(msg));
  return true;
}

}  // namespace

std::string FusionData::serialize() const {
  std::ostringstream out;
  out << "fusion " << name << " labels " << labels << " field "
      << field->text() << "\n";
  for (int i = 0; i < labels; ++i) out << "dual: " << i << ' ' << dual[i] << "\n";
  for (int i = 0; i < labels; ++i)
    out << "qdim: " << i << ' ' << qdim[i].text() << "\n";
  for (int i = 0; i < labels; ++i)
    for (int j = 0; j < labels; ++j)
      for (int l = 0; l < labels; ++l)
        if (n(i, j, l)) out << "fuse: " << i << ' ' << j << ' ' << l << "\n";
  std::vector<std::uint64_t> keys;
  keys.reserve(sixj.size());
  for (const auto& e : sixj) keys.push_back(e.first);
  std::sort(keys.begin(), keys.end());
  for (std::uint64_t k : keys) {
    auto t = unkey(k);
    out << "sixj:";
    for (int v : t) out << ' ' << v;
    out << ' ' << sixj.at(k).text() << "\n";
  }
  return out.str();
}

FusionData FusionData::parse(const std::string& text) {
  FusionData f;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  bool seen_header = false;
  std::vector<char> dual_seen, qdim_seen;
  while (std::getline(is, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (!seen_header) {
      if (toks.size() < 6 || toks[0] != "fusion" || toks[2] != "labels" ||
          toks[4] != "field")
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected 'fusion <name> labels <k> field <desc>'");
      f.name = toks[1];
      try {
        f.labels = std::stoi(toks[3]);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad label count '" +
                         toks[3] + "'");
      }
      if (f.labels < 1 || f.labels > kMaxLabels)
        throw ParseError("line " + std::to_string(line_no) + ": label count " +
                         std::to_string(f.labels) + " out of range 1.." +
                         std::to_string(kMaxLabels));
      f.field = FieldDescriptor::parse(join_from(toks, 5));
      f.dual.assign(f.labels, 0);
      f.qdim.assign(f.labels, Scalar::zero(f.field));
      f.fuse.assign((size_t)f.labels * f.labels * f.labels, 0);
      dual_seen.assign(f.labels, 0);
      qdim_seen.assign(f.labels, 0);
      seen_header = true;
      continue;
    }
    const std::string& tag = toks[0];
    if (tag == "dual:") {
      if (toks.size() != 3)
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected 'dual: <i> <i*>'");
      int i = parse_label(toks[1], f.labels, line_no);
      int di = parse_label(toks[2], f.labels, line_no);
      if (dual_seen[i])
        throw ParseError("line " + std::to_string(line_no) +
                         ": duplicate dual entry for label " + std::to_string(i));
      dual_seen[i] = 1;
      f.dual[i] = di;
    } else if (tag == "qdim:") {
      if (toks.size() < 3)
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected 'qdim: <i> <scalar>'");
      int i = parse_label(toks[1], f.labels, line_no);
      if (qdim_seen[i])
        throw ParseError("line " + std::to_string(line_no) +
                         ": duplicate qdim entry for label " + std::to_string(i));
      qdim_seen[i] = 1;
      f.qdim[i] = Scalar::parse(f.field, join_from(toks, 2));
    } else if (tag == "fuse:") {
      if (toks.size() != 4)
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected 'fuse: <i> <j> <k>'");
      int i = parse_label(toks[1], f.labels, line_no);
      int j = parse_label(toks[2], f.labels, line_no);
      int l = parse_label(toks[3], f.labels, line_no);
      char& flag = f.fuse[((size_t)i * f.labels + j) * f.labels + l];
      if (flag)
        throw ParseError("line " + std::to_string(line_no) +
                         ": duplicate fusion channel " + toks[1] + " " +
                         toks[2] + " " + toks[3]);
      flag = 1;
    } else if (tag == "sixj:") {
      if (toks.size() < 8)
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected 'sixj: <6 labels> <scalar>'");
      std::array<int, 6> t;
      for (int s = 0; s < 6; ++s)
        t[s] = parse_label(toks[1 + s], f.labels, line_no);
      std::uint64_t k = key(t[0], t[1], t[2], t[3], t[4], t[5]);
      if (f.sixj.count(k))
        throw ParseError("line " + std::to_string(line_no) +
                         ": duplicate 6j entry at " + tuple_text(t));
      f.sixj.emplace(k, Scalar::parse(f.field, join_from(toks, 7)));
    } else {
      throw ParseError("line " + std::to_string(line_no) +
                       ": unknown directive '" + tag + "'");
    }
  }
  if (!seen_header) throw ParseError("missing 'fusion' header line");
  for (int i = 0; i < f.labels; ++i) {
    if (!dual_seen[i])
      throw ParseError("missing dual entry for label " + std::to_string(i));
    if (!qdim_seen[i])
      throw ParseError("missing qdim entry for label " + std::to_string(i));
  }
  return f;
}

std::vector<std::string> validate_fusion(const FusionData& f) {
  std::vector<std::string> problems;
  int k = f.labels;
  if (k < 1) return {"label count must be positive"};
  if ((int)f.dual.size() != k || (int)f.qdim.size() != k ||
      f.fuse.size() != (size_t)k * k * k || !f.field)
    return {"fusion data arrays do not match the label count"};
  if (f.dual[0] != 0) push_problem(&problems, "dual of the unit is not the unit");
  for (int i = 0; i < k; ++i)
    if (f.dual[i] < 0 || f.dual[i] >= k || f.dual[f.dual[i]] != i) {
      push_problem(&problems,
                   "dual is not an involution at label " + std::to_string(i));
      break;
    }
  for (int j = 0; j < k && problems.size() < kMaxProblems; ++j)
    for (int l = 0; l < k; ++l) {
      if (f.n(0, j, l) != (j == l)) {
        push_problem(&problems, "left unit fusion rule fails at (" +
                                    std::to_string(j) + ", " +
                                    std::to_string(l) + ")");
        break;
      }
      if (f.n(j, 0, l) != (j == l)) {
        push_problem(&problems, "right unit fusion rule fails at (" +
                                    std::to_string(j) + ", " +
                                    std::to_string(l) + ")");
        break;
      }
    }
  for (int i = 0; i < k && problems.size() < kMaxProblems; ++i)
    for (int j = 0; j < k; ++j)
      if (f.n(i, j, 0) != (j == f.dual[i])) {
        push_problem(&problems, "duality channel N_(i,j)^0 = [j = i*] fails at (" +
                                    std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
        break;
      }
  Scalar one = Scalar::one(f.field);
  if (f.qdim[0] != one)
    push_problem(&problems, "qdim of the unit is not 1");
  for (int i = 0; i < k; ++i)
    if (f.qdim[f.dual[i]] != f.qdim[i]) {
      push_problem(&problems,
                   "qdim is not dual-invariant at label " + std::to_string(i));
      break;
    }
  for (int i = 0; i < k && problems.size() < kMaxProblems; ++i)
    for (int j = 0; j < k; ++j) {
      Scalar lhs = f.qdim[i] * f.qdim[j];
      Scalar rhs = Scalar::zero(f.field);
      for (int l = 0; l < k; ++l)
        if (f.n(i, j, l)) rhs += f.qdim[l];
      if (lhs != rhs) {
        push_problem(&problems, "qdim multiplicativity fails at (" +
                                    std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
        break;
      }
    }
  for (int i = 0; i < k && problems.size() < kMaxProblems; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l)
        if (f.n(i, j, l) != f.n(j, f.dual[l], f.dual[i])) {
          push_problem(&problems,
                       "duality cyclicity N_(i,j)^k = N_(j,k*)^(i*) fails at (" +
                           std::to_string(i) + ", " + std::to_string(j) +
                           ", " + std::to_string(l) + ")");
          i = j = k;  // witness recorded, abandon the scan
          break;
        }
  return problems;
}

const std::vector<SixjSymmetry>& sixj_symmetries() {
  static const std::vector<SixjSymmetry> table = [] {
    // Generators: the vertex transpositions (01), (12), (23) acting on the
    // slot order (01, 12, 02, 23, 13, 03), with a dual bit wherever the
    // image edge is traversed against its low-to-high direction.
    std::vector<SixjSymmetry> gens = {
        {{0, 2, 1, 3, 5, 4}, 0b000001u},
        {{2, 1, 0, 4, 3, 5}, 0b000010u},
        {{0, 4, 5, 3, 1, 2}, 0b001000u},
    };
    auto comp = [](const SixjSymmetry& s, const SixjSymmetry& t) {
      SixjSymmetry r{{0, 0, 0, 0, 0, 0}, 0};
      for (int i = 0; i < 6; ++i) {
        r.perm[i] = t.perm[s.perm[i]];
        unsigned bit = ((s.mask >> i) ^ (t.mask >> s.perm[i])) & 1u;
        r.mask |= bit << i;
      }
      return r;
    };
    auto encode = [](const SixjSymmetry& s) {
      std::uint64_t v = s.mask;
      for (int i = 0; i < 6; ++i) v = v * 6 + s.perm[i];
      return v;
    };
    std::vector<SixjSymmetry> closure = {{{0, 1, 2, 3, 4, 5}, 0}};
    std::set<std::uint64_t> seen = {encode(closure[0])};
    for (size_t head = 0; head < closure.size(); ++head) {
      SixjSymmetry cur = closure[head];
      for (const auto& g : gens) {
        SixjSymmetry nxt = comp(cur, g);
        if (seen.insert(encode(nxt)).second) closure.push_back(nxt);
      }
    }
    if (closure.size() != 24)
      throw std::logic_error("tetrahedral symmetry closure has size " +
                             std::to_string(closure.size()));
    return closure;
  }();
  return table;
}

std::array<int, 6> apply_symmetry(const SixjSymmetry& s,
                                  const std::array<int, 6>& t,
                                  const std::vector<int>& dual) {
  std::array<int, 6> out;
  for (int i = 0; i < 6; ++i) {
    int v = t[s.perm[i]];
    out[i] = (s.mask >> i) & 1u ? dual[v] : v;
  }
  return out;
}

namespace {

// 6j lookup that distinguishes "structurally zero" from "table gap": an
// inadmissible tuple contributes zero, an admissible tuple must be present.
struct SixjLookup {
  const FusionData& f;
  std::vector<std::string>* problems;
  std::set<std::uint64_t> reported;
  Scalar zero;
  bool instance_ok = true;

  SixjLookup(const FusionData& fd, std::vector<std::string>* p)
      : f(fd), problems(p), zero(Scalar::zero(fd.field)) {}

  Scalar get(int i, int j, int k, int l, int m, int n) {
    std::array<int, 6> t = {i, j, k, l, m, n};
    if (!f.tuple_admissible(t)) return zero;
    auto it = f.sixj.find(FusionData::key(i, j, k, l, m, n));
    if (it == f.sixj.end()) {
      if (reported.insert(FusionData::key(i, j, k, l, m, n)).second)
        push_problem(problems,
                     "missing 6j entry required by the pentagon check at " +
                         tuple_text(t));
      instance_ok = false;
      return zero;
    }
    return it->second;
  }
};

}  // namespace

std::vector<std::string> validate_pentagon(const FusionData& f) {
  std::vector<std::string> problems;
  {
    auto base = validate_fusion(f);
    if (!base.empty()) return base;
  }
  const auto& syms = sixj_symmetries();
  std::vector<std::uint64_t> entry_keys;
  entry_keys.reserve(f.sixj.size());
  for (const auto& e : f.sixj) entry_keys.push_back(e.first);
  std::sort(entry_keys.begin(), entry_keys.end());
  for (std::uint64_t ek : entry_keys) {
    if (problems.size() >= kMaxProblems) break;
    const Scalar& val = f.sixj.at(ek);
    auto t = FusionData::unkey(ek);
    bool in_range = true;
    for (int v : t) in_range = in_range && v >= 0 && v < f.labels;
    if (!in_range) {
      push_problem(&problems, "6j entry with out-of-range labels at " +
                                  tuple_text(t));
      continue;
    }
    if (!f.tuple_admissible(t)) {
      push_problem(&problems, "6j entry on inadmissible tuple " + tuple_text(t));
      continue;
    }
    for (const auto& s : syms) {
      auto u = apply_symmetry(s, t, f.dual);
      auto it = f.sixj.find(FusionData::key(u[0], u[1], u[2], u[3], u[4], u[5]));
      if (it == f.sixj.end()) {
        push_problem(&problems, "6j table is not closed under tetrahedral "
                                "symmetry: entry " + tuple_text(t) +
                                " has no image entry " + tuple_text(u));
        break;
      }
      if (it->second != val) {
        push_problem(&problems, "6j values differ across a tetrahedral "
                                "symmetry: " + tuple_text(t) + " = " +
                                val.text() + " but " + tuple_text(u) +
                                " = " + it->second.text());
        break;
      }
    }
  }
  if (!problems.empty()) return problems;

  // Dimension-weighted pentagon: for every labeled bipyramid boundary,
  //   sum_x qdim(x) W(u1,p,u2,v2,v1,x) W(u1,q,u3,v3,v1,x) W(u2,r,u3,v3,v2,x)
  //     = W(u1,p,u2,r,q,u3) W(p,r,q,v3,v2,v1).
  // Every instance with a nonzero side has admissible faces (u1,p,u2),
  // (u1,q,u3), (u2,r,u3), so the outer enumeration is restricted to those.
  SixjLookup w(f, &problems);
  int k = f.labels;
  for (int u1 = 0; u1 < k; ++u1)
    for (int p = 0; p < k; ++p)
      for (int u2 = 0; u2 < k; ++u2) {
        if (!f.face_admissible(u1, p, u2)) continue;
        for (int q = 0; q < k; ++q)
          for (int u3 = 0; u3 < k; ++u3) {
            if (!f.face_admissible(u1, q, u3)) continue;
            for (int r = 0; r < k; ++r) {
              if (!f.face_admissible(u2, r, u3)) continue;
              for (int v1 = 0; v1 < k; ++v1)
                for (int v2 = 0; v2 < k; ++v2)
                  for (int v3 = 0; v3 < k; ++v3) {
                    if (problems.size() >= kMaxProblems) return problems;
                    w.instance_ok = true;
                    Scalar lhs = Scalar::zero(f.field);
                    for (int x = 0; x < k; ++x) {
                      Scalar a = w.get(u1, p, u2, v2, v1, x);
                      if (a == w.zero) continue;
                      Scalar b = w.get(u1, q, u3, v3, v1, x);
                      if (b == w.zero) continue;
                      Scalar c = w.get(u2, r, u3, v3, v2, x);
                      if (c == w.zero) continue;
                      lhs += f.qdim[x] * a * b * c;
                    }
                    Scalar rhs = w.get(u1, p, u2, r, q, u3) *
                                 w.get(p, r, q, v3, v2, v1);
                    if (!w.instance_ok) continue;
                    if (lhs != rhs)
                      push_problem(
                          &problems,
                          "pentagon identity fails at u1=" + std::to_string(u1) +
                              " p=" + std::to_string(p) +
                              " u2=" + std::to_string(u2) +
                              " r=" + std::to_string(r) +
                              " q=" + std::to_string(q) +
                              " u3=" + std::to_string(u3) +
                              " v1=" + std::to_string(v1) +
                              " v2=" + std::to_string(v2) +
                              " v3=" + std::to_string(v3) + " (lhs " +
                              lhs.text() + ", rhs " + rhs.text() + ")");
                  }
            }
          }
      }
  return problems;
}

Scalar global_dimension(const FusionData& f) {
  Scalar total = Scalar::zero(f.field);
  for (const Scalar& d : f.qdim) total += d * d;
  return total;
}

FusionData vec_g_category(const Group& g, const FieldPtr& field) {
  FusionData f;
  f.name = "vecg:" + g.name;
  f.labels = g.n;
  f.field = field ? field : FieldDescriptor::rationals();
  f.dual.resize(g.n);
  f.qdim.assign(g.n, Scalar::one(f.field));
  f.fuse.assign((size_t)g.n * g.n * g.n, 0);
  for (int a = 0; a < g.n; ++a) f.dual[a] = g.inverse(a);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      f.fuse[((size_t)a * g.n + b) * g.n + g.op(a, b)] = 1;
  Scalar one = Scalar::one(f.field);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int l = 0; l < g.n; ++l) {
        int kk = g.op(i, j);
        int m = g.op(j, l);
        int n = g.op(i, m);
        f.sixj.emplace(FusionData::key(i, j, kk, l, m, n), one);
      }
  return f;
}

FusionData trivial_category() {
  FusionData f = vec_g_category(Group::cyclic(1));
  f.name = "trivial";
  return f;
}

FusionData fibonacci_category() {
  FusionData f;
  f.name = "fibonacci";
  f.labels = 2;
  f.field = FieldDescriptor::parse("NF:t^4-t^2-1");
  f.dual = {0, 1};
  f.qdim = {Scalar::one(f.field), Scalar::parse(f.field, "t^2")};
  f.fuse.assign(8, 0);
  auto set = [&](int i, int j, int l) { f.fuse[(i * 2 + j) * 2 + l] = 1; };
  set(0, 0, 0);
  set(0, 1, 1);
  set(1, 0, 1);
  set(1, 1, 0);
  set(1, 1, 1);
  // 6j values depend only on the number of tau edges; t^2 is the golden
  // ratio, so 1/t^2 = t^2 - 1 and 1/t = t^3 - t.
  Scalar by_weight[7] = {
      Scalar::one(f.field),          Scalar::zero(f.field),
      Scalar::zero(f.field),         Scalar::parse(f.field, "t^3 - t"),
      Scalar::parse(f.field, "t^2 - 1"), Scalar::parse(f.field, "t^2 - 1"),
      Scalar::parse(f.field, "t^2 - 2")};
  for (int bits = 0; bits < 64; ++bits) {
    std::array<int, 6> t;
    int weight = 0;
    for (int s = 0; s < 6; ++s) {
      t[s] = (bits >> s) & 1;
      weight += t[s];
    }
    if (!f.tuple_admissible(t)) continue;
    f.sixj.emplace(FusionData::key(t[0], t[1], t[2], t[3], t[4], t[5]),
                   by_weight[weight]);
  }
  return f;
}

}  // namespace qinv
