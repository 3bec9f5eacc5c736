#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "qinv/fusion.hpp"
#include "qinv/heegaard.hpp"
#include "qinv/scalars.hpp"

namespace qinv {

// A closed 3-manifold triangulation given as abstract tetrahedra with face
// gluings. Face f of a tetrahedron is the face opposite vertex f; its
// vertices are listed ascending. A gluing maps the i-th vertex of face
// face_a (in ascending order) to the perm[i]-th vertex of face face_b.
struct Gluing {
  int tet_a = 0, face_a = 0;
  int tet_b = 0, face_b = 0;
  std::array<int, 3> perm = {0, 1, 2};
};

struct Triangulation {
  std::string name;
  int tets = 0;
  std::vector<Gluing> gluings;

  std::string serialize() const;
  static Triangulation parse(const std::string& text);
};

// Vertices of face f, ascending.
inline constexpr std::array<std::array<int, 3>, 4> kFaceVerts = {
    {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};
// Edge slot order used everywhere a tetrahedron's six edges are listed.
inline constexpr std::array<std::array<int, 2>, 6> kTetEdges = {
    {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {1, 3}, {0, 3}}};
// Slot of the edge between two distinct vertices.
int edge_slot(int u, int v);

// One tetrahedron edge resolved against its edge class: sign is +1 when the
// tet-local low-to-high direction agrees with the class representative.
struct EdgeRef {
  int cls = 0;
  int sign = 1;
};

struct TriComplex {
  int tets = 0;
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  std::vector<std::array<EdgeRef, 6>> edge_of;    // [tet][slot]
  std::vector<std::array<int, 4>> face_of;        // [tet][face] -> class
  std::vector<std::pair<int, int>> face_rep;      // class -> (tet, face)
  std::vector<std::pair<int, int>> edge_rep;      // class -> (tet, slot)
  std::vector<int> vclass;                        // [tet*4 + v] -> class
  std::vector<int> orient;                        // per-tet sign
};

// Empty report iff the gluings describe a closed connected orientable
// 3-manifold: every face glued exactly once, no edge identified with itself
// reversed, Euler characteristic zero, connected, orientable.
std::vector<std::string> validate_triangulation(const Triangulation& t);
// Same checks; throws ValidationError on the first problem.
TriComplex build_complex(const Triangulation& t);

H1Group homology_h1(const Triangulation& t);

struct TvOptions {
  long long cap = 100000000;
  bool parallel = true;
};

struct TvStats {
  long long colorings = 0;  // admissible colorings summed
  long long nodes = 0;      // color assignments attempted
  bool parallel = false;
};

// Turaev-Viro state sum: colorings of edge classes by labels, restricted by
// face admissibility, weighted by edge qdims and one 6j symbol per
// tetrahedron, normalized by global_dimension^-(vertex classes). Requires
// commutative fusion rules and nonzero global dimension (UnsupportedError
// otherwise, as is a missing 6j entry on a reachable admissible tuple);
// CostCapError once the admissible coloring count exceeds the cap.
Scalar tv_state_sum(const Triangulation& t, const FusionData& f,
                    const TvOptions& opts = {}, TvStats* stats = nullptr);
Scalar tv_state_sum_serial(const Triangulation& t, const FusionData& f,
                           const TvOptions& opts = {}, TvStats* stats = nullptr);

// Shipped complexes.
Triangulation s3_one_tet();
Triangulation s3_two_tet();
Triangulation s3_pentachoron();
Triangulation s2xs1_tri();
Triangulation lens_2_1_tri();
Triangulation lens_3_1_tri();

}  // namespace qinv
