#include "qinv/linalg.hpp"

#include <algorithm>

namespace qinv {

namespace {

Echelon gauss_jordan(Mat M, const FieldPtr& f) {
  const int rows = static_cast<int>(M.size());
  const int cols = rows ? static_cast<int>(M[0].size()) : 0;
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i) {
      if (!M[i][c].is_zero()) {
        pr = i;
        break;
      }
    }
    if (pr < 0) continue;
    std::swap(M[pr], M[r]);
    Scalar inv = M[r][c].inverse();
    for (int j = c; j < cols; ++j) M[r][j] = M[r][j] * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || M[i][c].is_zero()) continue;
      Scalar factor = M[i][c];
      for (int j = c; j < cols; ++j) M[i][j] = M[i][j] - factor * M[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  M.resize(r, Vec(cols, Scalar::zero(f)));
  return Echelon{std::move(M), std::move(pivots)};
}

mpz_class exact_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r != 0) throw Error(exit_input, "internal: non-exact Bareiss division");
  return q;
}

// Fraction-free forward elimination, then a small rational back-substitution
// on the surviving echelon rows.
Echelon bareiss_q(const Mat& M, const FieldPtr& f) {
  const int rows = static_cast<int>(M.size());
  const int cols = rows ? static_cast<int>(M[0].size()) : 0;
  std::vector<std::vector<mpz_class>> Z(rows, std::vector<mpz_class>(cols));
  for (int i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (int j = 0; j < cols; ++j) {
      const mpq_class& q = M[i][j].rat();
      mpz_class den = q.get_den();
      l = l / gcd(l, den) * den;
    }
    for (int j = 0; j < cols; ++j) {
      const mpq_class& q = M[i][j].rat();
      Z[i][j] = q.get_num() * (l / q.get_den());
    }
  }
  std::vector<int> pivots;
  mpz_class prev = 1;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i) {
      if (Z[i][c] != 0) {
        pr = i;
        break;
      }
    }
    if (pr < 0) continue;
    std::swap(Z[pr], Z[r]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j)
        Z[i][j] = exact_div(Z[r][c] * Z[i][j] - Z[i][c] * Z[r][j], prev);
      Z[i][c] = 0;
    }
    prev = Z[r][c];
    pivots.push_back(c);
    ++r;
  }
  // rational back-substitution on r echelon rows
  std::vector<std::vector<mpq_class>> R(r, std::vector<mpq_class>(cols));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < cols; ++j) R[i][j] = mpq_class(Z[i][j]);
  for (int i = r - 1; i >= 0; --i) {
    const int p = pivots[i];
    mpq_class inv = 1 / R[i][p];
    for (int j = p; j < cols; ++j) R[i][j] *= inv;
    for (int k = 0; k < i; ++k) {
      if (R[k][p] == 0) continue;
      mpq_class factor = R[k][p];
      for (int j = p; j < cols; ++j) R[k][j] -= factor * R[i][j];
    }
  }
  Mat out(r, Vec(cols, Scalar::zero(f)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < cols; ++j) out[i][j] = Scalar::rational(f, R[i][j]);
  return Echelon{std::move(out), std::move(pivots)};
}

}  // namespace

Echelon rref(const Mat& M, const FieldPtr& field) {
  if (field->kind == FieldKind::Rationals && !M.empty()) return bareiss_q(M, field);
  return gauss_jordan(M, field);
}

int rank(const Mat& M, const FieldPtr& field) {
  return static_cast<int>(rref(M, field).pivots.size());
}

std::vector<Vec> nullspace(const Mat& M, const FieldPtr& field, int ncols) {
  Echelon e = rref(M, field);
  std::vector<bool> is_pivot(ncols, false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (int c = 0; c < ncols; ++c) {
    if (is_pivot[c]) continue;
    Vec v(ncols, Scalar::zero(field));
    v[c] = Scalar::one(field);
    for (size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.R[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

SmithForm smith_normal_form(std::vector<std::vector<mpz_class>> M) {
  const int rows = static_cast<int>(M.size());
  const int cols = rows ? static_cast<int>(M[0].size()) : 0;
  SmithForm out;
  int t = 0;
  const int bound = std::min(rows, cols);
  while (t < bound) {
    // locate a nonzero entry of smallest magnitude in the working submatrix
    int bi = -1, bj = -1;
    mpz_class best;
    for (int i = t; i < rows; ++i) {
      for (int j = t; j < cols; ++j) {
        if (M[i][j] == 0) continue;
        mpz_class a = abs(M[i][j]);
        if (bi < 0 || a < best) {
          best = a;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) break;
    std::swap(M[bi], M[t]);
    for (int i = 0; i < rows; ++i) std::swap(M[i][bj], M[i][t]);

    // Clear column t and row t. When the pivot divides the target a plain
    // subtraction suffices; otherwise a 2x2 Bezout transform replaces the
    // pivot by the gcd. Each transform strictly shrinks the pivot, so the
    // alternation terminates after at most log(pivot) refills, and entries
    // stay polynomial in size (the naive remainder-swap loop can square
    // entry bit lengths each round and exhaust memory on scrambled input).
    bool stable = false;
    while (!stable) {
      stable = true;
      for (int i = t + 1; i < rows; ++i) {
        if (M[i][t] == 0) continue;
        if (M[i][t] % M[t][t] == 0) {
          mpz_class q = M[i][t] / M[t][t];
          for (int j = t; j < cols; ++j) M[i][j] -= q * M[t][j];
        } else {
          mpz_class g, u, v;
          mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(),
                     M[t][t].get_mpz_t(), M[i][t].get_mpz_t());
          mpz_class a = M[t][t] / g, b = M[i][t] / g;
          for (int j = t; j < cols; ++j) {
            mpz_class top = u * M[t][j] + v * M[i][j];
            M[i][j] = a * M[i][j] - b * M[t][j];
            M[t][j] = top;
          }
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (M[t][j] == 0) continue;
        if (M[t][j] % M[t][t] == 0) {
          mpz_class q = M[t][j] / M[t][t];
          for (int i = t; i < rows; ++i) M[i][j] -= q * M[i][t];
        } else {
          mpz_class g, u, v;
          mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(),
                     M[t][t].get_mpz_t(), M[t][j].get_mpz_t());
          mpz_class a = M[t][t] / g, b = M[t][j] / g;
          for (int i = t; i < rows; ++i) {
            mpz_class left = u * M[i][t] + v * M[i][j];
            M[i][j] = a * M[i][j] - b * M[i][t];
            M[i][t] = left;
          }
          // the column transform can refill column t below the pivot
          for (int i = t + 1; i < rows; ++i)
            if (M[i][t] != 0) stable = false;
        }
      }
    }
    // divisibility fix-up so invariant factors come out in order
    bool redo = false;
    for (int i = t + 1; i < rows && !redo; ++i) {
      for (int j = t + 1; j < cols && !redo; ++j) {
        if (M[i][j] % M[t][t] != 0) {
          for (int jj = t; jj < cols; ++jj) M[t][jj] += M[i][jj];
          redo = true;
        }
      }
    }
    if (redo) continue;
    if (M[t][t] < 0) M[t][t] = -M[t][t];
    out.factors.push_back(M[t][t]);
    ++t;
  }
  out.rank = static_cast<int>(out.factors.size());
  return out;
}

}  // namespace qinv
