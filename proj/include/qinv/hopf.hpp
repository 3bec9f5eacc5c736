#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qinv/group.hpp"
#include "qinv/linalg.hpp"
#include "qinv/scalars.hpp"

namespace qinv {

// Finite-dimensional Hopf algebra given by dense structure constants over an
// exact field. Index conventions:
//   mult[(i*n+j)*n+k]    coefficient of e_k in e_i * e_j
//   comult[(i*n+j)*n+k]  coefficient of e_j (x) e_k in Delta(e_i)
//   antipode[i*n+j]      coefficient of e_j in S(e_i)
struct HopfData {
  std::string name;
  int n = 0;
  FieldPtr field;
  std::vector<Scalar> mult;
  std::vector<Scalar> unit;
  std::vector<Scalar> comult;
  std::vector<Scalar> counit;
  std::vector<Scalar> antipode;

  const Scalar& m(int i, int j, int k) const {
    return mult[((size_t)i * n + j) * n + k];
  }
  const Scalar& co(int i, int j, int k) const {
    return comult[((size_t)i * n + j) * n + k];
  }
  const Scalar& s(int i, int j) const { return antipode[(size_t)i * n + j]; }

  std::string serialize() const;
  static HopfData parse(const std::string& text);
};

// Sparse views of the structure tensors, built once and shared by the
// validator, the solvers and the contraction engine.
struct HopfOps {
  const HopfData* data = nullptr;
  int n = 0;
  // mrow[i*n+j] lists (k, c) with e_i * e_j = sum c e_k.
  std::vector<std::vector<std::pair<int, Scalar>>> mrow;
  // col[i] lists (a, b, c) with Delta(e_i) = sum c e_a (x) e_b.
  std::vector<std::vector<std::tuple<int, int, Scalar>>> col;
  // srow[i] lists (j, c) with S(e_i) = sum c e_j.
  std::vector<std::vector<std::pair<int, Scalar>>> srow;

  explicit HopfOps(const HopfData& d);

  Vec zero_vec() const;
  Vec unit_vec() const { return data->unit; }
  Vec basis_vec(int i) const;
  Vec mul(const Vec& x, const Vec& y) const;
  Vec antipode_vec(const Vec& x) const;
  Scalar counit_of(const Vec& x) const;
  // Pairing of a covector with a vector.
  Scalar pair(const Vec& cov, const Vec& x) const;
};

// Empty report means all Hopf axioms hold; otherwise each entry names the
// violated identity with a witnessing index tuple.
// Throws ValidationError when tensor sizes are inconsistent with n.
std::vector<std::string> validate_hopf(const HopfData& data);

struct IntegralPair {
  Vec lambda;      // right integral, as a covector in basis coordinates
  Vec cointegral;  // left cointegral Lambda
  bool normalized = false;
};

// Nonzero lambda with (lambda (x) id)Delta(x) = lambda(x)*1 for all x.
// Throws ValidationError unless the solution space is exactly 1-dimensional.
Vec right_integral(const HopfData& data);
// Nonzero Lambda with x*Lambda = eps(x)*Lambda for all x; same 1-dim check.
Vec left_cointegral(const HopfData& data);
// Rescales lambda (keeping Lambda) so that lambda(Lambda) = 1.
// Throws ValidationError when lambda(Lambda) = 0.
IntegralPair normalize_integral_pair(const HopfData& data, Vec lambda,
                                     Vec cointegral);

struct HopfProfile {
  bool unimodular = false;
  bool involutory = false;
  std::optional<Vec> pivot;  // invertible g with S^2(x) = g x g^{-1}
};

HopfProfile profile(const HopfData& data, const IntegralPair& pair);

// Sparse tensor in A^{(x)m}: key = basis multi-index of length m.
using SparseTensor = std::map<std::vector<int>, Scalar>;

// Applies Delta to one leg of a sparse tensor, turning m legs into m+1.
SparseTensor expand_slot(const HopfOps& ops, const SparseTensor& t, int slot);
// Applies the antipode to one leg in place of the identity.
SparseTensor antipode_slot(const HopfOps& ops, const SparseTensor& t,
                           int slot);

// Iterated coproduct of v with m output legs; m = 0 yields the scalar eps(v)
// stored under the empty multi-index. Coassociativity makes the result
// independent of which leg gets expanded. Throws CostCapError when the dense
// size n^m would exceed cap.
SparseTensor sweedler_power(const HopfOps& ops, const Vec& v, long m,
                            long long cap = 100000000LL);

// Endomorphism of A (x) A, stored sparsely: key = (out1*n+out2)*n^2 +
// (in1*n+in2).
struct ChromaticMatrix {
  int n = 0;
  std::unordered_map<unsigned long long, Scalar> entries;
};

// Matrix of the map (e_i (x) e_j) -> sum lambda(S(j_(1)) e_i) j_(2) (x) j_(3).
// Construction verifies that threading any basis element x through the map,
// (id (x) mult)(matrix (x) id)(id (x) Delta) applied to legs carrying x,
// collapses to lambda(x) times the identity map; failure throws
// ValidationError since it means the structure constants and the integral
// pair are inconsistent.
ChromaticMatrix chromatic_morphism_matrix(const HopfData& data,
                                          const IntegralPair& pair);

// Re-checkable identity bundles, used by the validator tests and the
// acceptance gate. Empty result = all identities hold.
std::vector<std::string> check_integral_identities(const HopfData& data,
                                                   const IntegralPair& pair);
std::vector<std::string> check_chromatic_identity(const HopfData& data,
                                                  const IntegralPair& pair,
                                                  const ChromaticMatrix& mat);

// Builders. Names follow the CLI grammar: "group:<G>", "function:<G>",
// "double:<G>".
HopfData group_algebra(const Group& g, const FieldPtr& field);
HopfData function_algebra(const Group& g, const FieldPtr& field);
// dim = |G|^2; throws UnsupportedError when |G| > cap.
HopfData drinfeld_double(const Group& g, const FieldPtr& field, int cap = 8);

}  // namespace qinv
