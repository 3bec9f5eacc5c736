#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>
#include <utility>

#include "qinv/hopf.hpp"
#include "qinv/scalars.hpp"

namespace testutil {

// Sweedler's four-dimensional Hopf algebra: basis 1, g, x, gx with g^2 = 1,
// x^2 = 0, xg = -gx, Delta(g) = g(x)g, Delta(x) = x(x)1 + g(x)x. Its antipode
// has order four, which makes it the canonical non-involutory example.
inline qinv::HopfData sweedler_h4(const qinv::FieldPtr& f) {
  using qinv::Scalar;
  qinv::HopfData d;
  d.name = "sweedler4";
  d.n = 4;
  d.field = f;
  auto z = Scalar::zero(f);
  auto one = Scalar::one(f);
  auto neg = -one;
  d.mult.assign(64, z);
  d.comult.assign(64, z);
  d.antipode.assign(16, z);
  d.unit.assign(4, z);
  d.counit.assign(4, z);

  auto M = [&](int i, int j, int k, Scalar c) { d.mult[((size_t)i * 4 + j) * 4 + k] = std::move(c); };
  auto C = [&](int i, int a, int b, Scalar c) { d.comult[((size_t)i * 4 + a) * 4 + b] = std::move(c); };

  // products against 1
  for (int j = 0; j < 4; ++j) {
    M(0, j, j, one);
    if (j) M(j, 0, j, one);
  }
  M(1, 1, 0, one);   // g g = 1
  M(1, 2, 3, one);   // g x = gx
  M(1, 3, 2, one);   // g gx = x
  M(2, 1, 3, neg);   // x g = -gx
  M(3, 1, 2, neg);   // gx g = -x
  // x x = x gx = gx x = gx gx = 0

  d.unit[0] = one;
  d.counit[0] = one;
  d.counit[1] = one;

  C(0, 0, 0, one);                 // Delta(1) = 1 (x) 1
  C(1, 1, 1, one);                 // Delta(g) = g (x) g
  C(2, 2, 0, one);                 // Delta(x) = x (x) 1 + g (x) x
  C(2, 1, 2, one);
  C(3, 3, 1, one);                 // Delta(gx) = gx (x) g + 1 (x) gx
  C(3, 0, 3, one);

  auto S = [&](int i, int j, Scalar c) { d.antipode[(size_t)i * 4 + j] = std::move(c); };
  S(0, 0, one);
  S(1, 1, one);
  S(2, 3, neg);  // S(x) = -gx
  S(3, 2, one);  // S(gx) = x
  return d;
}

// Runs a command line, returning its exit code and combined output.
inline std::pair<int, std::string> run_cli(const std::string& cmd) {
  std::string full = cmd + " 2>&1";
  FILE* p = popen(full.c_str(), "r");
  if (!p) return {-1, "popen failed"};
  std::string out;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
  int status = pclose(p);
  int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

}  // namespace testutil
