#pragma once

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qinv/group.hpp"

namespace qinv {

struct Crossing {
  int alpha_curve = 0;
  int beta_curve = 0;
  int sign = +1;  // +1 or -1
};

// Combinatorial genus-g Heegaard diagram: g alpha curves and g beta curves,
// each an ordered sequence of crossing ids (basepoint first, following the
// curve's orientation). Crossing ids are dense 0..n-1.
//
// Realizability of this data as an embedded curve system on a genus-g
// surface is NOT checked; every algorithm below is well-defined on any valid
// combinatorial diagram, but topological invariance is only guaranteed for
// diagrams that do come from a surface.
struct HeegaardDiagram {
  std::string name;
  int genus = 0;
  std::vector<Crossing> crossings;
  std::vector<std::vector<int>> alpha;  // alpha[j] = ids along curve a<j>
  std::vector<std::vector<int>> beta;   // beta[i] = ids along curve b<i>

  std::string serialize() const;
  static HeegaardDiagram parse(const std::string& text);
};

// Empty report iff the diagram satisfies all structural invariants.
std::vector<std::string> validate_diagram(const HeegaardDiagram& d);

// Builders.
HeegaardDiagram s3_diagram();
HeegaardDiagram s2xs1_diagram();
// Genus 1, p crossings; beta visits them with step q. Requires gcd(p,q) = 1.
HeegaardDiagram lens_diagram(int p, int q);
HeegaardDiagram connected_sum(const HeegaardDiagram& d1,
                              const HeegaardDiagram& d2);

enum class Side { alpha, beta };

// Appends one alpha curve and one beta curve sharing a single new +1
// crossing.
HeegaardDiagram stabilize(const HeegaardDiagram& d);
// Reverses the chosen curve's sequence and flips the sign of every crossing
// on it.
HeegaardDiagram reverse_curve(const HeegaardDiagram& d, Side side, int index);
// Cyclic rotation of the chosen sequence by k (0 <= k < length; k = 0 is
// allowed on empty curves).
HeegaardDiagram move_basepoint(const HeegaardDiagram& d, Side side, int index,
                               int k);

struct GroupPresentation {
  int generators = 0;
  // Each relator is a word of (generator index, exponent +1/-1) letters.
  std::vector<std::vector<std::pair<int, int>>> relators;
};

// Generators dual to the alpha discs; the relator of beta_i reads
// x_{alpha(c)}^{sign(c)} along the beta order.
GroupPresentation pi1_presentation(const HeegaardDiagram& d);

// Number of homomorphisms into G, by brute-force enumeration of generator
// images. Throws CostCapError when |G|^generators exceeds cap.
long long hom_count_serial(const GroupPresentation& pres, const Group& g,
                           long long cap = 10000000LL);
// Same count, enumeration partitioned by the image of the first generator.
long long hom_count(const GroupPresentation& pres, const Group& g,
                    long long cap = 10000000LL);

struct H1Group {
  int free_rank = 0;
  std::vector<mpz_class> torsion;  // invariant factors > 1, ascending

  bool operator==(const H1Group& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  std::string text() const;  // e.g. "Z", "Z/2", "Z + Z/3", "0"
};

H1Group h1_from_presentation(const GroupPresentation& pres);

}  // namespace qinv
