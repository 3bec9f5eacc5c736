#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "qinv/group.hpp"
#include "qinv/scalars.hpp"

namespace qinv {

// Skeletal multiplicity-free fusion-category data: labels 0..k-1 with unit 0,
// dual involution, quantum dimensions, fusion flags N_{ij}^l in {0,1}, and a
// partial 6j-symbol table.
//
// A 6j entry is keyed by the edge 6-tuple (i,j,k,l,m,n) of a tetrahedron,
// slots ordered (01, 12, 02, 23, 13, 03) by vertex pair; its faces are
// (i,j,k), (i,m,n), (j,l,m), (k,l,n). Tables must be closed under the full
// 24-element tetrahedral symmetry group (validated, not assumed).
struct FusionData {
  std::string name;
  int labels = 0;
  FieldPtr field;
  std::vector<int> dual;
  std::vector<Scalar> qdim;
  std::vector<char> fuse;  // [(i*k+j)*k+l] = N_{ij}^l
  std::unordered_map<std::uint64_t, Scalar> sixj;

  bool n(int i, int j, int l) const {
    return fuse[((size_t)i * labels + j) * labels + l] != 0;
  }
  // Face admissibility: the triangle with edge colors (i, j, k) read along
  // vertices a<b<c as (ab, bc, ac) is admissible iff N_{ij}^k = 1.
  bool face_admissible(int i, int j, int k) const { return n(i, j, k); }

  static std::uint64_t key(int i, int j, int k, int l, int m, int n) {
    return ((std::uint64_t)i << 40) | ((std::uint64_t)j << 32) |
           ((std::uint64_t)k << 24) | ((std::uint64_t)l << 16) |
           ((std::uint64_t)m << 8) | (std::uint64_t)n;
  }
  static std::array<int, 6> unkey(std::uint64_t key) {
    return {(int)(key >> 40) & 255, (int)(key >> 32) & 255,
            (int)(key >> 24) & 255, (int)(key >> 16) & 255,
            (int)(key >> 8) & 255,  (int)key & 255};
  }
  bool tuple_admissible(const std::array<int, 6>& t) const {
    return face_admissible(t[0], t[1], t[2]) &&
           face_admissible(t[0], t[4], t[5]) &&
           face_admissible(t[1], t[3], t[4]) &&
           face_admissible(t[2], t[3], t[5]);
  }

  std::string serialize() const;
  static FusionData parse(const std::string& text);
};

// Type invariants: unit behavior of N, dual involution with 0* = 0,
// qdim_0 = 1, qdim_{i*} = qdim_i, qdim multiplicativity, and the duality
// cyclicity N_{ij}^k = N_{jk*}^{i*} that makes face admissibility
// independent of the chosen face representative.
std::vector<std::string> validate_fusion(const FusionData& f);

// The 24 tetrahedral symmetries acting on 6j keys, as (slot permutation,
// dual mask) pairs: image[i] = dual-if-bit-i(tuple[perm[i]]).
struct SixjSymmetry {
  std::array<int, 6> perm;
  unsigned mask;
};
const std::vector<SixjSymmetry>& sixj_symmetries();
std::array<int, 6> apply_symmetry(const SixjSymmetry& s,
                                  const std::array<int, 6>& t,
                                  const std::vector<int>& dual);

// Pentagon consistency (dimension-weighted Biedenharn-Elliott identity over
// all boundary colorings of the bipyramid), plus table hygiene: entries must
// sit on admissible tuples and the table must be closed under the
// tetrahedral symmetries with equal values. Empty report iff consistent.
std::vector<std::string> validate_pentagon(const FusionData& f);

// Sum of squared quantum dimensions.
Scalar global_dimension(const FusionData& f);

// Pointed category of a finite group: labels = G, one fusion channel
// g (x) h -> gh, all qdim and all admissible 6j equal to 1.
FusionData vec_g_category(const Group& g, const FieldPtr& field = nullptr);
FusionData trivial_category();
// The two-label golden category over Q[t]/(t^4 - t^2 - 1), where t^2 is the
// golden ratio and qdim(tau) = t^2. The quartic field is used because the
// dimension-weighted pentagon identity has no solution with these fusion
// rules over Q[t]/(t^2 - t - 1) itself.
FusionData fibonacci_category();

}  // namespace qinv
