#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qinv/error.hpp"

namespace qinv {

enum class FieldKind { Rationals, PrimeField, NumberField };

struct FieldDescriptor;
using FieldPtr = std::shared_ptr<const FieldDescriptor>;

// Ground field of a computation. Three kinds are supported: the rationals,
// a prime field F_p, and a number field Q[t]/(m(t)) with m monic irreducible
// with integer coefficients. Irreducibility is established exactly for
// degrees 2..4 (rational-root scan plus, for quartics, an integer
// quadratic-factor scan); for degree 5 and up only linear factors are
// excluded and a warning is recorded on the descriptor.
struct FieldDescriptor {
  FieldKind kind = FieldKind::Rationals;
  unsigned long long p = 0;          // prime, for PrimeField
  std::vector<mpz_class> minpoly;    // monic, degree >= 2, for NumberField
  std::string warning;               // nonempty if irreducibility was not fully verified

  int degree() const { return static_cast<int>(minpoly.size()) - 1; }
  bool same(const FieldDescriptor& o) const;
  std::string text() const;  // canonical descriptor: "Q", "Fp:7", "NF:t^2-t-1"

  static FieldPtr rationals();
  static FieldPtr prime_field(unsigned long long p);
  static FieldPtr number_field(const std::vector<mpz_class>& minpoly);
  static FieldPtr parse(const std::string& text);
};

bool is_prime_u64(unsigned long long n);

// Exact field element in canonical form. Representation follows the field:
// reduced fraction over Q, residue in [0,p) over F_p, polynomial of degree
// < deg(m) over a number field. Values are immutable in spirit: operations
// return fresh scalars and never mutate shared state.
class Scalar {
public:
  using NfCoeffs = std::vector<mpq_class>;

  Scalar();  // zero over Q

  static Scalar zero(const FieldPtr& f);
  static Scalar one(const FieldPtr& f);
  static Scalar integer(const FieldPtr& f, long v);
  static Scalar rational(const FieldPtr& f, const mpq_class& q);  // embeds p/q
  static Scalar parse(const FieldPtr& f, const std::string& text);

  const FieldPtr& field() const { return fld_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar inverse() const;
  Scalar pow(long e) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string text() const;  // re-parses to an equal scalar

  // Rational access, valid only over Q.
  const mpq_class& rat() const;
  unsigned long long residue() const;   // only over F_p
  const NfCoeffs& coeffs() const;       // only over a number field

private:
  FieldPtr fld_;
  std::variant<mpq_class, unsigned long long, NfCoeffs> v_;

  void check_same_field(const Scalar& o) const;
};

}  // namespace qinv
