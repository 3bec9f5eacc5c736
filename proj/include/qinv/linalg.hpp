#pragma once

#include <vector>

#include "qinv/scalars.hpp"

namespace qinv {

using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>;

struct Echelon {
  Mat R;                    // reduced row echelon form, zero rows dropped
  std::vector<int> pivots;  // pivot column of each kept row
};

// Exact reduced row echelon form. Over Q the forward pass is fraction-free
// (Bareiss) to bound intermediate coefficient growth; other fields use plain
// Gauss-Jordan since residues and reduced polynomials do not swell.
Echelon rref(const Mat& M, const FieldPtr& field);

int rank(const Mat& M, const FieldPtr& field);

// Basis of { v : Mv = 0 }. ncols is required so empty matrices still know
// their ambient dimension.
std::vector<Vec> nullspace(const Mat& M, const FieldPtr& field, int ncols);

struct SmithForm {
  std::vector<mpz_class> factors;  // nonzero invariant factors, d1 | d2 | ...
  int rank = 0;
};

SmithForm smith_normal_form(std::vector<std::vector<mpz_class>> M);

}  // namespace qinv
