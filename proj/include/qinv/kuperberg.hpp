#pragma once

#include <string>
#include <vector>

#include "qinv/heegaard.hpp"
#include "qinv/hopf.hpp"

namespace qinv {

// Bead placement: each alpha curve with m crossings carries the tensor
// obtained from the m-leg iterated coproduct of the cointegral with the
// antipode applied to the slots of negative crossings; an alpha curve missed
// by every beta contributes the scalar eps(Lambda). Each beta curve collects
// the beads it meets into a word whose first-met bead is the rightmost
// factor (later-met beads multiply on the left), and contributes
// lambda(word).
struct BeadNetwork {
  int genus = 0;
  std::vector<std::vector<int>> alpha_slots;  // crossing ids, alpha order
  std::vector<SparseTensor> alpha_tensor;     // slot-twisted Delta^m(Lambda)
  std::vector<std::vector<int>> beta_sequence;
  Scalar scalar_factor;  // eps(Lambda)^{#empty alpha curves}
  static constexpr const char* word_convention = "later-met-left";
};

enum class Strategy { enumerate, seq };

const char* strategy_name(Strategy s);
// Accepts "enumerate" and "seq".
Strategy strategy_from_name(const std::string& name);

struct ContractionOptions {
  Strategy strategy = Strategy::seq;
  long long cap = 100000000LL;  // max basis-index assignments
  bool parallel = true;         // use the OpenMP kernel when available
};

struct ContractionStats {
  long long estimated_cost = 0;
  long long assignments = 0;  // complete basis-index assignments reached
  long long words_evaluated = 0;
  Strategy strategy = Strategy::seq;
  bool parallel = false;
};

// Materializes the bead tensors (used by the enumerate strategy and by
// tests; the seq strategy streams them instead). Throws UnsupportedError
// when the algebra is not involutory or not unimodular, naming the flag.
BeadNetwork place_beads(const HeegaardDiagram& d, const HopfData& a,
                        const IntegralPair& pair, long long cap = 100000000LL);

// Predicted assignment count: n^{#crossings} for enumerate; for seq the
// product over alpha curves of min(n^m, nnz(Lambda)*B^{m-1}) where B is the
// maximum number of terms in Delta(e_i). Saturates instead of overflowing.
long long estimate_cost(const HeegaardDiagram& d, const HopfData& a,
                        Strategy strategy);

// The invariant. Validates the algebra, derives and normalizes the integral
// pair, checks the involutory and unimodular preconditions, gates on the
// cost estimate, then contracts exactly.
Scalar kuperberg_invariant(const HeegaardDiagram& d, const HopfData& a,
                           const ContractionOptions& opts = {},
                           ContractionStats* stats = nullptr);

// Serial reference kernel (same contract, plain depth-first recursion).
// kuperberg_invariant dispatches here when opts.parallel is false or OpenMP
// is unavailable; kept separate so tests and the benchmark can compare.
Scalar kuperberg_invariant_serial(const HeegaardDiagram& d, const HopfData& a,
                                  const ContractionOptions& opts = {},
                                  ContractionStats* stats = nullptr);

}  // namespace qinv
