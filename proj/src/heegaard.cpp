#include "qinv/heegaard.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qinv/error.hpp"
#include "qinv/linalg.hpp"

#ifdef QINV_HAVE_OPENMP
#include <omp.h>
#endif

namespace qinv {

namespace {

int parse_tagged(const std::string& tok, char tag, const std::string& what,
                 int line_no) {
  if (tok.size() < 2 || tok[0] != tag)
    throw ParseError("line " + std::to_string(line_no) + ": expected " + what +
                     " token '" + tag + "<id>', got '" + tok + "'");
  for (size_t i = 1; i < tok.size(); ++i)
    if (!std::isdigit((unsigned char)tok[i]))
      throw ParseError("line " + std::to_string(line_no) + ": bad " + what +
                       " token '" + tok + "'");
  return std::stoi(tok.substr(1));
}

}  // namespace

std::string HeegaardDiagram::serialize() const {
  std::ostringstream out;
  out << "heegaard " << name << "\n";
  out << "genus " << genus << "\n";
  out << "crossings " << crossings.size() << "\n";
  for (size_t id = 0; id < crossings.size(); ++id)
    out << 'c' << id << " a" << crossings[id].alpha_curve << " b"
        << crossings[id].beta_curve << ' '
        << (crossings[id].sign > 0 ? '+' : '-') << "\n";
  for (int j = 0; j < genus; ++j) {
    out << "alpha a" << j << ':';
    for (int id : alpha[j]) out << " c" << id;
    out << "\n";
  }
  for (int i = 0; i < genus; ++i) {
    out << "beta b" << i << ':';
    for (int id : beta[i]) out << " c" << id;
    out << "\n";
  }
  return out.str();
}

HeegaardDiagram HeegaardDiagram::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  HeegaardDiagram d;
  int ncross = -1;
  bool have_name = false, have_genus = false;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;

    if (tok == "heegaard") {
      if (!(ls >> d.name))
        throw ParseError("line " + std::to_string(line_no) + ": missing name");
      have_name = true;
    } else if (tok == "genus") {
      if (!(ls >> d.genus) || d.genus < 0 || d.genus > 4096)
        throw ParseError("line " + std::to_string(line_no) + ": bad genus");
      d.alpha.assign(d.genus, {});
      d.beta.assign(d.genus, {});
      have_genus = true;
    } else if (tok == "crossings") {
      if (!(ls >> ncross) || ncross < 0 || ncross > 1000000)
        throw ParseError("line " + std::to_string(line_no) +
                         ": bad crossing count");
      d.crossings.assign(ncross, Crossing{});
    } else if (tok[0] == 'c' && tok.size() > 1 &&
               std::isdigit((unsigned char)tok[1])) {
      if (ncross < 0)
        throw ParseError("line " + std::to_string(line_no) +
                         ": crossing before 'crossings <n>'");
      int id = parse_tagged(tok, 'c', "crossing", line_no);
      if (id >= ncross)
        throw ParseError("line " + std::to_string(line_no) + ": crossing id " +
                         std::to_string(id) + " not below count " +
                         std::to_string(ncross));
      std::string atok, btok, stok;
      if (!(ls >> atok >> btok >> stok))
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected 'c<id> a<j> b<i> <+|->'");
      Crossing c;
      c.alpha_curve = parse_tagged(atok, 'a', "alpha curve", line_no);
      c.beta_curve = parse_tagged(btok, 'b', "beta curve", line_no);
      if (stok == "+")
        c.sign = +1;
      else if (stok == "-")
        c.sign = -1;
      else
        throw ParseError("line " + std::to_string(line_no) + ": bad sign '" +
                         stok + "'");
      d.crossings[id] = c;
    } else if (tok == "alpha" || tok == "beta") {
      if (!have_genus)
        throw ParseError("line " + std::to_string(line_no) +
                         ": curve before 'genus <g>'");
      std::string head;
      if (!(ls >> head) || head.back() != ':')
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected '" + tok + " " +
                         (tok == "alpha" ? "a" : "b") + "<j>:'");
      head.pop_back();
      int idx = parse_tagged(head, tok == "alpha" ? 'a' : 'b', "curve",
                             line_no);
      if (idx >= d.genus)
        throw ParseError("line " + std::to_string(line_no) + ": curve index " +
                         std::to_string(idx) + " not below genus " +
                         std::to_string(d.genus));
      std::vector<int> ids;
      std::string ctok;
      while (ls >> ctok) {
        int id = parse_tagged(ctok, 'c', "crossing", line_no);
        if (ncross < 0 || id >= ncross)
          throw ParseError("line " + std::to_string(line_no) +
                           ": crossing id " + std::to_string(id) +
                           " out of range");
        ids.push_back(id);
      }
      if (tok == "alpha")
        d.alpha[idx] = ids;
      else
        d.beta[idx] = ids;
    } else {
      throw ParseError("line " + std::to_string(line_no) +
                       ": unrecognized line '" + line + "'");
    }
  }
  if (!have_name) throw ParseError("missing 'heegaard <name>' header");
  if (!have_genus) throw ParseError("missing 'genus <g>' line");
  if (ncross < 0) throw ParseError("missing 'crossings <n>' line");
  auto problems = validate_diagram(d);
  if (!problems.empty())
    throw ValidationError("diagram '" + d.name + "': " + problems.front());
  return d;
}

std::vector<std::string> validate_diagram(const HeegaardDiagram& d) {
  std::vector<std::string> problems;
  int n = (int)d.crossings.size();
  if ((int)d.alpha.size() != d.genus)
    problems.push_back("expected " + std::to_string(d.genus) +
                       " alpha curves, have " + std::to_string(d.alpha.size()));
  if ((int)d.beta.size() != d.genus)
    problems.push_back("expected " + std::to_string(d.genus) +
                       " beta curves, have " + std::to_string(d.beta.size()));
  if (!problems.empty()) return problems;

  for (int id = 0; id < n; ++id) {
    const Crossing& c = d.crossings[id];
    if (c.alpha_curve < 0 || c.alpha_curve >= d.genus)
      problems.push_back("crossing c" + std::to_string(id) +
                         " references alpha curve a" +
                         std::to_string(c.alpha_curve) + " out of range");
    if (c.beta_curve < 0 || c.beta_curve >= d.genus)
      problems.push_back("crossing c" + std::to_string(id) +
                         " references beta curve b" +
                         std::to_string(c.beta_curve) + " out of range");
    if (c.sign != 1 && c.sign != -1)
      problems.push_back("crossing c" + std::to_string(id) + " has sign " +
                         std::to_string(c.sign));
  }
  if (!problems.empty()) return problems;

  for (int side = 0; side < 2; ++side) {
    const auto& curves = side == 0 ? d.alpha : d.beta;
    const char* sname = side == 0 ? "alpha" : "beta";
    std::vector<int> count(n, 0);
    for (int j = 0; j < (int)curves.size(); ++j)
      for (int id : curves[j]) {
        if (id < 0 || id >= n) {
          problems.push_back(std::string(sname) + " curve " +
                             std::to_string(j) + " references crossing c" +
                             std::to_string(id) + " out of range");
          return problems;
        }
        count[id]++;
        int want = side == 0 ? d.crossings[id].alpha_curve
                             : d.crossings[id].beta_curve;
        if (want != j)
          problems.push_back("crossing c" + std::to_string(id) +
                             " appears on " + sname + " curve " +
                             std::to_string(j) + " but is declared on " +
                             std::to_string(want));
      }
    for (int id = 0; id < n; ++id) {
      if (count[id] == 0)
        problems.push_back("crossing c" + std::to_string(id) +
                           " missing from its " + sname + " curve");
      else if (count[id] > 1)
        problems.push_back("crossing c" + std::to_string(id) +
                           " appears " + std::to_string(count[id]) +
                           " times on " + sname + " curves");
    }
  }
  return problems;
}

HeegaardDiagram s3_diagram() {
  HeegaardDiagram d;
  d.name = "s3";
  d.genus = 1;
  d.crossings = {Crossing{0, 0, +1}};
  d.alpha = {{0}};
  d.beta = {{0}};
  return d;
}

HeegaardDiagram s2xs1_diagram() {
  HeegaardDiagram d;
  d.name = "s2xs1";
  d.genus = 1;
  d.alpha = {{}};
  d.beta = {{}};
  return d;
}

HeegaardDiagram lens_diagram(int p, int q) {
  if (p < 1) throw ValidationError("lens diagram requires p >= 1");
  int qm = ((q % p) + p) % p;
  if (std::gcd(p, q) != 1)
    throw ValidationError("lens diagram requires gcd(p,q) = 1, got p=" +
                          std::to_string(p) + " q=" + std::to_string(q));
  HeegaardDiagram d;
  d.name = "lens_" + std::to_string(p) + "_" + std::to_string(q);
  d.genus = 1;
  d.crossings.assign(p, Crossing{0, 0, +1});
  d.alpha.assign(1, {});
  d.beta.assign(1, {});
  for (int i = 0; i < p; ++i) {
    d.alpha[0].push_back(i);
    d.beta[0].push_back((int)(((long long)i * qm) % p));
  }
  return d;
}

HeegaardDiagram connected_sum(const HeegaardDiagram& d1,
                              const HeegaardDiagram& d2) {
  HeegaardDiagram d;
  d.name = d1.name + "#" + d2.name;
  d.genus = d1.genus + d2.genus;
  int n1 = (int)d1.crossings.size();
  d.crossings = d1.crossings;
  for (const Crossing& c : d2.crossings)
    d.crossings.push_back(
        Crossing{c.alpha_curve + d1.genus, c.beta_curve + d1.genus, c.sign});
  d.alpha = d1.alpha;
  d.beta = d1.beta;
  for (const auto& curve : d2.alpha) {
    std::vector<int> shifted;
    for (int id : curve) shifted.push_back(id + n1);
    d.alpha.push_back(shifted);
  }
  for (const auto& curve : d2.beta) {
    std::vector<int> shifted;
    for (int id : curve) shifted.push_back(id + n1);
    d.beta.push_back(shifted);
  }
  return d;
}

HeegaardDiagram stabilize(const HeegaardDiagram& d) {
  HeegaardDiagram out = d;
  int id = (int)out.crossings.size();
  out.crossings.push_back(Crossing{out.genus, out.genus, +1});
  out.alpha.push_back({id});
  out.beta.push_back({id});
  out.genus += 1;
  return out;
}

HeegaardDiagram reverse_curve(const HeegaardDiagram& d, Side side,
                              int index) {
  auto& curves = side == Side::alpha ? d.alpha : d.beta;
  if (index < 0 || index >= (int)curves.size())
    throw ValidationError("reverse_curve: index " + std::to_string(index) +
                          " out of range");
  HeegaardDiagram out = d;
  auto& seq =
      side == Side::alpha ? out.alpha[index] : out.beta[index];
  std::reverse(seq.begin(), seq.end());
  for (int id : seq) out.crossings[id].sign = -out.crossings[id].sign;
  return out;
}

HeegaardDiagram move_basepoint(const HeegaardDiagram& d, Side side, int index,
                               int k) {
  auto& curves = side == Side::alpha ? d.alpha : d.beta;
  if (index < 0 || index >= (int)curves.size())
    throw ValidationError("move_basepoint: index " + std::to_string(index) +
                          " out of range");
  int len = (int)curves[index].size();
  if (k < 0 || (len == 0 ? k != 0 : k >= len))
    throw ValidationError("move_basepoint: rotation " + std::to_string(k) +
                          " out of range for curve of length " +
                          std::to_string(len));
  HeegaardDiagram out = d;
  auto& seq = side == Side::alpha ? out.alpha[index] : out.beta[index];
  std::rotate(seq.begin(), seq.begin() + k, seq.end());
  return out;
}

GroupPresentation pi1_presentation(const HeegaardDiagram& d) {
  auto problems = validate_diagram(d);
  if (!problems.empty())
    throw ValidationError("pi1_presentation: " + problems.front());
  GroupPresentation pres;
  pres.generators = d.genus;
  for (int i = 0; i < d.genus; ++i) {
    std::vector<std::pair<int, int>> word;
    for (int id : d.beta[i])
      word.emplace_back(d.crossings[id].alpha_curve, d.crossings[id].sign);
    pres.relators.push_back(std::move(word));
  }
  return pres;
}

namespace {

long long hom_cost(int order, int generators, long long cap) {
  long long cost = 1;
  for (int s = 0; s < generators; ++s) {
    if (order > 0 && cost > cap / order) return cap + 1;
    cost *= order;
  }
  return cost;
}

bool tuple_satisfies(const GroupPresentation& pres, const Group& g, int e,
                     const std::vector<int>& img) {
  for (const auto& rel : pres.relators) {
    int acc = e;
    for (const auto& [gen, exp] : rel) {
      int x = img[gen];
      if (exp < 0) x = g.inverse(x);
      acc = g.op(acc, x);
    }
    if (acc != e) return false;
  }
  return true;
}

}  // namespace

long long hom_count_serial(const GroupPresentation& pres, const Group& g,
                           long long cap) {
  if (hom_cost(g.n, pres.generators, cap) > cap)
    throw CostCapError("hom_count: |G|^g = " + std::to_string(g.n) + "^" +
                       std::to_string(pres.generators) + " exceeds cap " +
                       std::to_string(cap));
  int e = g.identity();
  std::vector<int> img(pres.generators, 0);
  long long total = 0;
  while (true) {
    if (tuple_satisfies(pres, g, e, img)) ++total;
    int slot = pres.generators - 1;
    while (slot >= 0 && ++img[slot] == g.n) img[slot--] = 0;
    if (slot < 0) break;
  }
  return total;
}

long long hom_count(const GroupPresentation& pres, const Group& g,
                    long long cap) {
  if (hom_cost(g.n, pres.generators, cap) > cap)
    throw CostCapError("hom_count: |G|^g = " + std::to_string(g.n) + "^" +
                       std::to_string(pres.generators) + " exceeds cap " +
                       std::to_string(cap));
  if (pres.generators == 0) {
    int e = g.identity();
    std::vector<int> img;
    return tuple_satisfies(pres, g, e, img) ? 1 : 0;
  }
  int e = g.identity();
  long long total = 0;
  // Partitioned by the image of generator 0; each worker runs its own
  // odometer over the remaining generators.
#ifdef QINV_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
#endif
  for (int first = 0; first < g.n; ++first) {
    std::vector<int> img(pres.generators, 0);
    img[0] = first;
    long long part = 0;
    while (true) {
      if (tuple_satisfies(pres, g, e, img)) ++part;
      int slot = pres.generators - 1;
      while (slot >= 1 && ++img[slot] == g.n) img[slot--] = 0;
      if (slot < 1) break;
    }
    total += part;
  }
  return total;
}

std::string H1Group::text() const {
  std::vector<std::string> parts;
  for (int i = 0; i < free_rank; ++i) parts.push_back("Z");
  for (const auto& t : torsion) parts.push_back("Z/" + t.get_str());
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

H1Group h1_from_presentation(const GroupPresentation& pres) {
  std::vector<std::vector<mpz_class>> rel(
      pres.relators.size(),
      std::vector<mpz_class>((size_t)pres.generators, mpz_class(0)));
  for (size_t r = 0; r < pres.relators.size(); ++r)
    for (const auto& [gen, exp] : pres.relators[r]) rel[r][gen] += exp;
  SmithForm sf = smith_normal_form(std::move(rel));
  H1Group h;
  h.free_rank = pres.generators - sf.rank;
  for (const auto& f : sf.factors)
    if (f > 1) h.torsion.push_back(f);
  return h;
}

}  // namespace qinv
