#include "qinv/triangulate.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <sstream>

#include "qinv/error.hpp"
#include "qinv/linalg.hpp"

#ifdef QINV_HAVE_OPENMP
#include <omp.h>
#endif

namespace qinv {

namespace {

constexpr int kMaxTets = 512;

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

int parse_tag(const std::string& tok, char tag, int limit,
              const std::string& what, int line_no) {
  if (tok.size() < 2 || tok[0] != tag)
    throw ParseError("line " + std::to_string(line_no) + ": expected " + what +
                     " token, got '" + tok + "'");
  size_t pos = 0;
  int v = -1;
  try {
    v = std::stoi(tok.substr(1), &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos + 1 != tok.size() || v < 0 || v >= limit)
    throw ParseError("line " + std::to_string(line_no) + ": bad " + what +
                     " '" + tok + "'");
  return v;
}

// Union-find tracking each element's direction flip relative to its root.
struct ParityDsu {
  std::vector<int> parent;
  std::vector<unsigned char> flip;

  explicit ParityDsu(int n) : parent(n), flip(n, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  std::pair<int, unsigned char> find(int x) {
    int root = x;
    unsigned char p = 0;
    while (parent[root] != root) {
      p ^= flip[root];
      root = parent[root];
    }
    // path compression, rewriting flips to point at the root
    int cur = x;
    unsigned char cp = 0;
    while (parent[cur] != cur) {
      int next = parent[cur];
      unsigned char step = flip[cur];
      parent[cur] = root;
      flip[cur] = p ^ cp;
      cp ^= step;
      cur = next;
    }
    return {root, p};
  }

  // twist = 1 when a and b are oppositely directed. False on conflict.
  bool unite(int a, int b, unsigned char twist) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (unsigned char)(pa ^ pb) == twist;
    parent[rb] = ra;
    flip[rb] = pa ^ pb ^ twist;
    return true;
  }
};

int permutation_sign(const std::array<int, 4>& m) {
  int inv = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (m[i] > m[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

// Shared validation and class-building pass. Returns the complex through
// *out when out != nullptr and the report stays empty.
std::vector<std::string> analyze(const Triangulation& t, TriComplex* out) {
  std::vector<std::string> problems;
  if (t.tets < 1) return {"tetrahedron count must be positive"};
  if (t.tets > kMaxTets)
    return {"tetrahedron count " + std::to_string(t.tets) +
            " exceeds the supported limit " + std::to_string(kMaxTets)};
  std::vector<int> glued(4 * t.tets, -1);
  for (size_t gi = 0; gi < t.gluings.size(); ++gi) {
    const Gluing& g = t.gluings[gi];
    if (g.tet_a < 0 || g.tet_a >= t.tets || g.tet_b < 0 || g.tet_b >= t.tets ||
        g.face_a < 0 || g.face_a > 3 || g.face_b < 0 || g.face_b > 3) {
      problems.push_back("gluing " + std::to_string(gi) +
                         " references a tetrahedron or face out of range");
      continue;
    }
    std::array<int, 3> seen = {0, 0, 0};
    for (int d : g.perm)
      if (d < 0 || d > 2)
        problems.push_back("gluing " + std::to_string(gi) +
                           " has a permutation digit out of range");
      else
        seen[d] = 1;
    if (seen[0] + seen[1] + seen[2] != 3) {
      problems.push_back("gluing " + std::to_string(gi) +
                         " does not carry a permutation of 0 1 2");
      continue;
    }
    if (g.tet_a == g.tet_b && g.face_a == g.face_b) {
      problems.push_back("gluing " + std::to_string(gi) +
                         " identifies a face with itself");
      continue;
    }
    for (int side = 0; side < 2; ++side) {
      int idx = side == 0 ? g.tet_a * 4 + g.face_a : g.tet_b * 4 + g.face_b;
      if (glued[idx] >= 0)
        problems.push_back("face f" + std::to_string(idx % 4) + " of t" +
                           std::to_string(idx / 4) + " is glued more than once");
      else
        glued[idx] = (int)gi;
    }
  }
  for (int idx = 0; idx < 4 * t.tets; ++idx)
    if (glued[idx] < 0)
      problems.push_back("face f" + std::to_string(idx % 4) + " of t" +
                         std::to_string(idx / 4) + " is not glued");
  if (!problems.empty()) return problems;

  ParityDsu edges(6 * t.tets);
  ParityDsu verts(4 * t.tets);
  for (const Gluing& g : t.gluings) {
    const auto& fa = kFaceVerts[g.face_a];
    const auto& fb = kFaceVerts[g.face_b];
    for (int i = 0; i < 3; ++i)
      verts.unite(g.tet_a * 4 + fa[i], g.tet_b * 4 + fb[g.perm[i]], 0);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        int u = fa[i], v = fa[j];  // ascending already
        int pu = fb[g.perm[i]], pv = fb[g.perm[j]];
        unsigned char twist = pu > pv ? 1 : 0;
        int sa = g.tet_a * 6 + edge_slot(u, v);
        int sb = g.tet_b * 6 + edge_slot(pu, pv);
        if (!edges.unite(sa, sb, twist))
          problems.push_back(
              "edge (" + std::to_string(u) + "," + std::to_string(v) +
              ") of t" + std::to_string(g.tet_a) +
              " is identified with itself reversed");
      }
  }
  if (!problems.empty()) return problems;

  TriComplex cx;
  cx.tets = t.tets;
  cx.faces = (int)t.gluings.size();
  cx.edge_of.assign(t.tets, {});
  cx.face_of.assign(t.tets, {-1, -1, -1, -1});
  cx.vclass.assign(4 * t.tets, -1);
  std::vector<int> edge_cls(6 * t.tets, -1);
  for (int e = 0; e < 6 * t.tets; ++e) {
    auto [root, p] = edges.find(e);
    if (edge_cls[root] < 0) {
      edge_cls[root] = cx.edges++;
      cx.edge_rep.push_back({root / 6, root % 6});
    }
    cx.edge_of[e / 6][e % 6] = {edge_cls[root], p ? -1 : 1};
  }
  for (int v = 0; v < 4 * t.tets; ++v) {
    auto [root, p] = verts.find(v);
    if (cx.vclass[root] < 0) cx.vclass[root] = cx.vertices++;
    cx.vclass[v] = cx.vclass[root];
  }
  for (size_t gi = 0; gi < t.gluings.size(); ++gi) {
    const Gluing& g = t.gluings[gi];
    cx.face_of[g.tet_a][g.face_a] = (int)gi;
    cx.face_of[g.tet_b][g.face_b] = (int)gi;
    cx.face_rep.push_back({g.tet_a, g.face_a});
  }

  int chi = cx.vertices - cx.edges + cx.faces - cx.tets;
  if (chi != 0)
    problems.push_back("Euler characteristic is " + std::to_string(chi) +
                       ", not 0 (V=" + std::to_string(cx.vertices) +
                       " E=" + std::to_string(cx.edges) +
                       " F=" + std::to_string(cx.faces) +
                       " T=" + std::to_string(cx.tets) + ")");

  // orientability and connectivity in one sweep over the gluing graph
  std::vector<std::vector<std::pair<int, int>>> adj(t.tets);
  for (const Gluing& g : t.gluings) {
    std::array<int, 4> m = {-1, -1, -1, -1};
    for (int i = 0; i < 3; ++i)
      m[kFaceVerts[g.face_a][i]] = kFaceVerts[g.face_b][g.perm[i]];
    m[g.face_a] = g.face_b;
    int sgn = permutation_sign(m);
    adj[g.tet_a].push_back({g.tet_b, sgn});
    adj[g.tet_b].push_back({g.tet_a, sgn});
  }
  cx.orient.assign(t.tets, 0);
  cx.orient[0] = 1;
  std::vector<int> queue = {0};
  bool orientable = true;
  for (size_t head = 0; head < queue.size(); ++head) {
    int cur = queue[head];
    for (auto [next, sgn] : adj[cur]) {
      int want = -sgn * cx.orient[cur];
      if (cx.orient[next] == 0) {
        cx.orient[next] = want;
        queue.push_back(next);
      } else if (cx.orient[next] != want) {
        orientable = false;
      }
    }
  }
  if ((int)queue.size() != t.tets)
    problems.push_back("triangulation is not connected");
  else if (!orientable)
    problems.push_back("triangulation is not orientable");
  if (problems.empty() && out) *out = std::move(cx);
  return problems;
}

}  // namespace

int edge_slot(int u, int v) {
  static const auto table = [] {
    std::array<std::array<int, 4>, 4> t{};
    for (auto& row : t) row.fill(-1);
    for (int s = 0; s < 6; ++s) {
      t[kTetEdges[s][0]][kTetEdges[s][1]] = s;
      t[kTetEdges[s][1]][kTetEdges[s][0]] = s;
    }
    return t;
  }();
  return table[u][v];
}

std::string Triangulation::serialize() const {
  std::ostringstream out;
  out << "triangulation " << name << " tets " << tets << "\n";
  for (const Gluing& g : gluings)
    out << "glue t" << g.tet_a << " f" << g.face_a << " t" << g.tet_b << " f"
        << g.face_b << " perm " << g.perm[0] << g.perm[1] << g.perm[2] << "\n";
  return out.str();
}

Triangulation Triangulation::parse(const std::string& text) {
  Triangulation t;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  bool seen_header = false;
  while (std::getline(is, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (!seen_header) {
      if (toks.size() != 4 || toks[0] != "triangulation" || toks[2] != "tets")
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected 'triangulation <name> tets <T>'");
      t.name = toks[1];
      try {
        t.tets = std::stoi(toks[3]);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": bad tetrahedron count '" + toks[3] + "'");
      }
      if (t.tets < 1 || t.tets > kMaxTets)
        throw ParseError("line " + std::to_string(line_no) +
                         ": tetrahedron count " + std::to_string(t.tets) +
                         " out of range 1.." + std::to_string(kMaxTets));
      seen_header = true;
      continue;
    }
    if (toks[0] != "glue" || toks.size() != 7 || toks[5] != "perm")
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'glue t<a> f<x> t<b> f<y> perm <digits>'");
    Gluing g;
    g.tet_a = parse_tag(toks[1], 't', t.tets, "tetrahedron", line_no);
    g.face_a = parse_tag(toks[2], 'f', 4, "face", line_no);
    g.tet_b = parse_tag(toks[3], 't', t.tets, "tetrahedron", line_no);
    g.face_b = parse_tag(toks[4], 'f', 4, "face", line_no);
    const std::string& digits = toks[6];
    std::array<int, 3> seen = {0, 0, 0};
    if (digits.size() != 3)
      throw ParseError("line " + std::to_string(line_no) +
                       ": permutation must be three digits");
    for (int i = 0; i < 3; ++i) {
      if (digits[i] < '0' || digits[i] > '2')
        throw ParseError("line " + std::to_string(line_no) +
                         ": bad permutation digit '" + digits[i] + "'");
      g.perm[i] = digits[i] - '0';
      seen[g.perm[i]] = 1;
    }
    if (seen[0] + seen[1] + seen[2] != 3)
      throw ParseError("line " + std::to_string(line_no) +
                       ": permutation digits must be distinct");
    t.gluings.push_back(g);
  }
  if (!seen_header) throw ParseError("missing 'triangulation' header line");
  return t;
}

std::vector<std::string> validate_triangulation(const Triangulation& t) {
  return analyze(t, nullptr);
}

TriComplex build_complex(const Triangulation& t) {
  TriComplex cx;
  auto problems = analyze(t, &cx);
  if (!problems.empty())
    throw ValidationError("triangulation '" + t.name + "': " + problems[0]);
  return cx;
}

H1Group homology_h1(const Triangulation& t) {
  TriComplex cx = build_complex(t);
  std::vector<std::vector<mpz_class>> d1(
      cx.vertices, std::vector<mpz_class>(cx.edges, 0));
  for (int e = 0; e < cx.edges; ++e) {
    auto [tet, slot] = cx.edge_rep[e];
    d1[cx.vclass[tet * 4 + kTetEdges[slot][1]]][e] += 1;
    d1[cx.vclass[tet * 4 + kTetEdges[slot][0]]][e] -= 1;
  }
  std::vector<std::vector<mpz_class>> d2(
      cx.edges, std::vector<mpz_class>(cx.faces, 0));
  for (int fc = 0; fc < cx.faces; ++fc) {
    auto [tet, face] = cx.face_rep[fc];
    const auto& fv = kFaceVerts[face];
    const int coeff[3] = {1, 1, -1};  // boundary of the triangle (a, b, c)
    const int pairs[3][2] = {{fv[0], fv[1]}, {fv[1], fv[2]}, {fv[0], fv[2]}};
    for (int s = 0; s < 3; ++s) {
      EdgeRef r = cx.edge_of[tet][edge_slot(pairs[s][0], pairs[s][1])];
      d2[r.cls][fc] += coeff[s] * r.sign;
    }
  }
  SmithForm s1 = smith_normal_form(std::move(d1));
  SmithForm s2 = smith_normal_form(d2);
  H1Group h;
  h.free_rank = cx.edges - s1.rank - s2.rank;
  for (const auto& f : s2.factors)
    if (f > 1) h.torsion.push_back(f);
  return h;
}

namespace {

struct TvShared {
  const FusionData& f;
  TriComplex cx;
  int k = 0;
  long long cap = 0;
  long long node_budget = 0;
  // per edge class, the face constraints that become decidable there
  struct FaceCheck {
    EdgeRef a, b, c;
  };
  std::vector<std::vector<FaceCheck>> checks_at;

  TvShared(const Triangulation& t, const FusionData& fus, long long cap_in)
      : f(fus), cx(build_complex(t)), k(fus.labels), cap(cap_in) {
    node_budget = cap > (LLONG_MAX - 1024) / 4 ? LLONG_MAX : cap * 4 + 1024;
    checks_at.assign(cx.edges, {});
    for (int fc = 0; fc < cx.faces; ++fc) {
      auto [tet, face] = cx.face_rep[fc];
      const auto& fv = kFaceVerts[face];
      FaceCheck chk = {cx.edge_of[tet][edge_slot(fv[0], fv[1])],
                       cx.edge_of[tet][edge_slot(fv[1], fv[2])],
                       cx.edge_of[tet][edge_slot(fv[0], fv[2])]};
      int last = std::max({chk.a.cls, chk.b.cls, chk.c.cls});
      checks_at[last].push_back(chk);
    }
  }

  int eff(EdgeRef r, const std::vector<int>& colors) const {
    int c = colors[r.cls];
    return r.sign > 0 ? c : f.dual[c];
  }
};

struct TvEngine {
  const TvShared& s;
  std::vector<int> colors;
  Scalar sum;
  long long colorings = 0;
  long long nodes = 0;
  bool over_nodes = false;
  bool over_cap = false;
  int restrict_c0 = -1;

  explicit TvEngine(const TvShared& sh)
      : s(sh), colors(sh.cx.edges, 0), sum(Scalar::zero(sh.f.field)) {}

  bool aborted() const { return over_nodes || over_cap; }

  void run() { step(0); }

  void step(int idx) {
    if (idx == s.cx.edges) {
      leaf();
      return;
    }
    for (int c = 0; c < s.k; ++c) {
      if (idx == 0 && restrict_c0 >= 0 && c != restrict_c0) continue;
      if (++nodes > s.node_budget) {
        over_nodes = true;
        return;
      }
      colors[idx] = c;
      bool ok = true;
      for (const auto& chk : s.checks_at[idx])
        if (!s.f.face_admissible(s.eff(chk.a, colors), s.eff(chk.b, colors),
                                 s.eff(chk.c, colors))) {
          ok = false;
          break;
        }
      if (ok) step(idx + 1);
      if (aborted()) return;
    }
  }

  void leaf() {
    if (++colorings > s.cap) {
      over_cap = true;
      return;
    }
    Scalar w = Scalar::one(s.f.field);
    for (int e = 0; e < s.cx.edges; ++e) w *= s.f.qdim[colors[e]];
    for (int tet = 0; tet < s.cx.tets; ++tet) {
      std::array<int, 6> t;
      for (int slot = 0; slot < 6; ++slot)
        t[slot] = s.eff(s.cx.edge_of[tet][slot], colors);
      auto it = s.f.sixj.find(FusionData::key(t[0], t[1], t[2], t[3], t[4], t[5]));
      if (it == s.f.sixj.end()) {
        std::string txt;
        for (int v : t) txt += (txt.empty() ? "" : " ") + std::to_string(v);
        throw UnsupportedError("category '" + s.f.name +
                               "' has no 6j entry for the admissible tuple (" +
                               txt + ")");
      }
      w *= it->second;
    }
    sum += w;
  }
};

Scalar tv_impl(const Triangulation& t, const FusionData& f,
               const TvOptions& opts, TvStats* stats, bool allow_parallel) {
  {
    auto fp = validate_fusion(f);
    if (!fp.empty())
      throw ValidationError("category '" + f.name + "': " + fp[0]);
  }
  for (int i = 0; i < f.labels; ++i)
    for (int j = 0; j < i; ++j)
      for (int l = 0; l < f.labels; ++l)
        if (f.n(i, j, l) != f.n(j, i, l))
          throw UnsupportedError(
              "category '" + f.name + "' has non-commutative fusion rules at (" +
              std::to_string(i) + ", " + std::to_string(j) +
              "); face-class admissibility requires N_(i,j)^k = N_(j,i)^k");
  Scalar dim = global_dimension(f);
  if (dim == Scalar::zero(f.field))
    throw UnsupportedError("category '" + f.name +
                           "' has global dimension zero over " +
                           f.field->text() + "; the normalization is undefined");

  TvShared shared(t, f, opts.cap);
  bool parallel = allow_parallel && shared.k > 1;
#ifndef QINV_HAVE_OPENMP
  parallel = false;
#endif

  Scalar total = Scalar::zero(f.field);
  long long colorings = 0, nodes = 0;
  bool over_nodes = false;
  if (!parallel) {
    TvEngine eng(shared);
    eng.run();
    over_nodes = eng.over_nodes;
    colorings = eng.colorings;
    nodes = eng.nodes;
    total = eng.sum;
  } else {
#ifdef QINV_HAVE_OPENMP
    std::vector<TvEngine> engines;
    engines.reserve(shared.k);
    for (int c = 0; c < shared.k; ++c) {
      engines.emplace_back(shared);
      engines.back().restrict_c0 = c;
    }
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < shared.k; ++c) {
      try {
        engines[c].run();
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    for (const TvEngine& eng : engines) {
      total += eng.sum;
      colorings += eng.colorings;
      nodes += eng.nodes;
      over_nodes = over_nodes || eng.over_nodes;
    }
#endif
  }
  if (over_nodes)
    throw CostCapError("tv: contraction node budget exhausted (cap " +
                       std::to_string(opts.cap) + ")");
  if (colorings > opts.cap)
    throw CostCapError("tv: admissible coloring count " +
                       std::to_string(colorings) + " exceeds cap " +
                       std::to_string(opts.cap));
  if (stats) {
    stats->colorings = colorings;
    stats->nodes = nodes;
    stats->parallel = parallel;
  }
  return dim.inverse().pow(shared.cx.vertices) * total;
}

}  // namespace

Scalar tv_state_sum(const Triangulation& t, const FusionData& f,
                    const TvOptions& opts, TvStats* stats) {
  return tv_impl(t, f, opts, stats, opts.parallel);
}

Scalar tv_state_sum_serial(const Triangulation& t, const FusionData& f,
                           const TvOptions& opts, TvStats* stats) {
  return tv_impl(t, f, opts, stats, false);
}

Triangulation s3_one_tet() {
  Triangulation t;
  t.name = "s3_one_tet";
  t.tets = 1;
  t.gluings = {{0, 0, 0, 3, {0, 1, 2}}, {0, 1, 0, 2, {0, 1, 2}}};
  return t;
}

Triangulation s3_two_tet() {
  Triangulation t;
  t.name = "s3_two_tet";
  t.tets = 2;
  t.gluings = {{0, 0, 1, 0, {0, 1, 2}},
               {0, 1, 1, 1, {0, 1, 2}},
               {0, 2, 1, 2, {0, 1, 2}},
               {0, 3, 1, 3, {0, 1, 2}}};
  return t;
}

Triangulation s3_pentachoron() {
  // boundary of the 4-simplex: tetrahedron i omits global vertex i, and two
  // tetrahedra share the triangle omitting both; sorted vertex lists make
  // every gluing permutation the identity
  Triangulation t;
  t.name = "s3_pentachoron";
  t.tets = 5;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      auto local_face = [](int tet, int missing) {
        int pos = 0;
        for (int g = 0; g < 5; ++g) {
          if (g == tet) continue;
          if (g == missing) return pos;
          ++pos;
        }
        return -1;
      };
      t.gluings.push_back({i, local_face(i, j), j, local_face(j, i), {0, 1, 2}});
    }
  return t;
}

Triangulation s2xs1_tri() {
  Triangulation t;
  t.name = "s2xs1";
  t.tets = 2;
  t.gluings = {{0, 0, 0, 1, {1, 2, 0}},
               {0, 2, 1, 0, {1, 2, 0}},
               {0, 3, 1, 1, {1, 2, 0}},
               {1, 2, 1, 3, {1, 2, 0}}};
  return t;
}

Triangulation lens_2_1_tri() {
  Triangulation t;
  t.name = "lens_2_1";
  t.tets = 2;
  t.gluings = {{0, 0, 0, 1, {0, 1, 2}},
               {0, 2, 1, 0, {0, 1, 2}},
               {0, 3, 1, 1, {2, 0, 1}},
               {1, 2, 1, 3, {2, 0, 1}}};
  return t;
}

Triangulation lens_3_1_tri() {
  Triangulation t;
  t.name = "lens_3_1";
  t.tets = 2;
  t.gluings = {{0, 0, 0, 1, {0, 1, 2}},
               {0, 2, 1, 0, {1, 2, 0}},
               {0, 3, 1, 1, {1, 2, 0}},
               {1, 2, 1, 3, {1, 2, 0}}};
  return t;
}

}  // namespace qinv
