#include "qinv/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qinv {

namespace {

unsigned long long mulmod_u64(unsigned long long a, unsigned long long b,
                              unsigned long long m) {
  return static_cast<unsigned long long>(static_cast<__uint128_t>(a) * b % m);
}

unsigned long long powmod_u64(unsigned long long a, unsigned long long e,
                              unsigned long long m) {
  unsigned long long r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(unsigned long long n) {
  if (n < 2) return false;
  for (unsigned long long q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                               19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  unsigned long long d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic witness set for 64-bit integers
  for (unsigned long long a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                               19ull, 23ull, 29ull, 31ull, 37ull}) {
    unsigned long long x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// FieldDescriptor

namespace {

// Positive divisors of |n|, paired enumeration by trial division. Returns
// false (incomplete) if the scan exceeds its iteration budget.
bool positive_divisors(const mpz_class& n_in, std::vector<mpz_class>* out) {
  mpz_class n = abs(n_in);
  if (n == 0) return true;  // caller handles zero separately
  long budget = 2000000;
  mpz_class d = 1;
  while (d * d <= n) {
    if (--budget < 0) return false;
    if (n % d == 0) {
      out->push_back(d);
      mpz_class e = n / d;
      if (e != d) out->push_back(e);
    }
    ++d;
  }
  return true;
}

mpz_class eval_poly(const std::vector<mpz_class>& c, const mpz_class& x) {
  mpz_class acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Exact irreducibility scan over Z (monic integer polynomial, Gauss's lemma
// makes integer factor scans conclusive). Degrees 2 and 3 need only the
// rational-root test; degree 4 additionally needs a quadratic-factor scan.
void check_irreducible(const std::vector<mpz_class>& c, std::string* warning) {
  int deg = static_cast<int>(c.size()) - 1;
  if (c[0] == 0)
    throw ValidationError("number-field polynomial is reducible: t divides it");
  std::vector<mpz_class> divs;
  bool complete = positive_divisors(c[0], &divs);
  if (complete) {
    for (const mpz_class& d : divs) {
      for (int sign = 0; sign < 2; ++sign) {
        mpz_class r = sign ? mpz_class(-d) : d;
        if (eval_poly(c, r) == 0)
          throw ValidationError("number-field polynomial is reducible: root t = " +
                                r.get_str());
      }
    }
  }
  if (!complete || deg > 4) {
    *warning =
        "irreducibility not fully verified (only linear factors excluded)";
    return;
  }
  if (deg <= 3) return;
  // deg == 4: search (t^2 + A t + B)(t^2 + C t + D) with integer entries
  for (const mpz_class& b0 : divs) {
    for (int sign = 0; sign < 2; ++sign) {
      mpz_class B = sign ? mpz_class(-b0) : b0;
      mpz_class D = c[0] / B;
      mpz_class s = c[2] - B - D;     // A*C
      mpz_class disc = c[3] * c[3] - 4 * s;
      if (disc < 0 || mpz_perfect_square_p(disc.get_mpz_t()) == 0) continue;
      mpz_class sq;
      mpz_sqrt(sq.get_mpz_t(), disc.get_mpz_t());
      for (int root = 0; root < 2; ++root) {
        mpz_class num = root ? mpz_class(c[3] - sq) : mpz_class(c[3] + sq);
        if (num % 2 != 0) continue;
        mpz_class A = num / 2;
        mpz_class C = c[3] - A;
        if (A * D + C * B == c[1])
          throw ValidationError(
              "number-field polynomial is reducible: factor t^2 + (" +
              A.get_str() + ")t + (" + B.get_str() + ")");
      }
    }
  }
}

struct Lexer {
  const std::string& s;
  size_t i = 0;
  explicit Lexer(const std::string& str) : s(str) {}
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip();
    return i >= s.size();
  }
  bool accept(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool peek_digit() {
    skip();
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
  }
  std::string digits() {
    skip();
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) throw ParseError("expected digits in scalar '" + s + "'");
    std::string out = s.substr(i, j - i);
    i = j;
    return out;
  }
  bool accept_word(const std::string& w) {
    skip();
    if (s.compare(i, w.size(), w) == 0) {
      i += w.size();
      return true;
    }
    return false;
  }
};

mpq_class parse_rational_tok(Lexer& lx) {
  bool neg = false;
  if (lx.accept('-'))
    neg = true;
  else
    lx.accept('+');
  mpz_class num(lx.digits(), 10);
  mpz_class den = 1;
  if (lx.accept('/')) den = mpz_class(lx.digits(), 10);
  if (den == 0) throw ParseError("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  if (neg) q = -q;
  return q;
}

// term := coeff [ '*' tpow ] | [sign] tpow ; tpow := 't' [ '^' digits ]
// Accepts sums like "3/2 + 1/2*t", "t + 2", "-1/5*t^2".
std::vector<mpq_class> parse_nf_coeffs(const std::string& text, int deg) {
  std::vector<mpq_class> c(deg, mpq_class(0));
  Lexer lx(text);
  bool first = true;
  while (!lx.done()) {
    bool neg = false;
    if (lx.accept('-'))
      neg = true;
    else if (!lx.accept('+') && !first)
      throw ParseError("expected '+' or '-' in scalar '" + text + "'");
    first = false;
    mpq_class coeff(1);
    bool have_coeff = false;
    if (lx.peek_digit()) {
      Lexer sub = lx;  // no sign inside a term body
      mpz_class num(sub.digits(), 10);
      mpz_class den = 1;
      if (sub.accept('/')) den = mpz_class(sub.digits(), 10);
      if (den == 0) throw ParseError("zero denominator");
      coeff = mpq_class(num, den);
      coeff.canonicalize();
      lx.i = sub.i;
      have_coeff = true;
      lx.accept('*');
    }
    long power = 0;
    if (lx.accept('t')) {
      power = 1;
      if (lx.accept('^')) power = std::stol(lx.digits());
    } else if (!have_coeff) {
      throw ParseError("expected term in scalar '" + text + "'");
    }
    if (neg) coeff = -coeff;
    if (power >= deg)
      throw ParseError("term degree " + std::to_string(power) +
                       " not below field degree " + std::to_string(deg));
    c[power] += coeff;
  }
  return c;
}

std::string render_rat(const mpq_class& q) { return q.get_str(); }

const FieldPtr& rationals_singleton() {
  static FieldPtr f = std::make_shared<FieldDescriptor>();
  return f;
}

}  // namespace

bool FieldDescriptor::same(const FieldDescriptor& o) const {
  if (kind != o.kind) return false;
  if (kind == FieldKind::PrimeField) return p == o.p;
  if (kind == FieldKind::NumberField) return minpoly == o.minpoly;
  return true;
}

std::string FieldDescriptor::text() const {
  switch (kind) {
    case FieldKind::Rationals:
      return "Q";
    case FieldKind::PrimeField:
      return "Fp:" + std::to_string(p);
    case FieldKind::NumberField: {
      std::string out = "NF:";
      for (int k = degree(); k >= 0; --k) {
        const mpz_class& c = minpoly[k];
        if (c == 0) continue;
        mpz_class a = abs(c);
        bool lead = out.size() == 3;
        if (c < 0)
          out += "-";
        else if (!lead)
          out += "+";
        if (k == 0) {
          out += a.get_str();
        } else {
          if (a != 1) out += a.get_str() + "*";
          out += (k == 1) ? "t" : "t^" + std::to_string(k);
        }
      }
      return out;
    }
  }
  return "?";
}

FieldPtr FieldDescriptor::rationals() { return rationals_singleton(); }

FieldPtr FieldDescriptor::prime_field(unsigned long long p) {
  if (p < 2 || p >= (1ull << 62) || !is_prime_u64(p))
    throw ValidationError("field modulus " + std::to_string(p) + " is not a usable prime");
  auto f = std::make_shared<FieldDescriptor>();
  f->kind = FieldKind::PrimeField;
  f->p = p;
  return f;
}

FieldPtr FieldDescriptor::number_field(const std::vector<mpz_class>& minpoly) {
  if (minpoly.size() < 3)
    throw ValidationError("number-field polynomial must have degree >= 2");
  if (minpoly.back() != 1)
    throw ValidationError("number-field polynomial must be monic");
  auto f = std::make_shared<FieldDescriptor>();
  f->kind = FieldKind::NumberField;
  f->minpoly = minpoly;
  check_irreducible(minpoly, &f->warning);
  return f;
}

FieldPtr FieldDescriptor::parse(const std::string& text) {
  if (text == "Q") return rationals();
  if (text.rfind("Fp:", 0) == 0) {
    const std::string body = text.substr(3);
    if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad prime-field descriptor '" + text + "'");
    return prime_field(std::stoull(body));
  }
  if (text.rfind("NF:", 0) == 0) {
    const std::string body = text.substr(3);
    // integer polynomial in t, e.g. "t^2-t-1" or "t^4-t^2-1"
    Lexer lx(body);
    std::vector<mpz_class> coeffs;
    bool first = true;
    while (!lx.done()) {
      bool neg = false;
      if (lx.accept('-'))
        neg = true;
      else if (!lx.accept('+') && !first)
        throw ParseError("bad number-field descriptor '" + text + "'");
      first = false;
      mpz_class coeff = 1;
      bool have_coeff = false;
      if (lx.peek_digit()) {
        coeff = mpz_class(lx.digits(), 10);
        have_coeff = true;
        lx.accept('*');
      }
      long power = 0;
      if (lx.accept('t')) {
        power = 1;
        if (lx.accept('^')) power = std::stol(lx.digits());
      } else if (!have_coeff) {
        throw ParseError("bad number-field descriptor '" + text + "'");
      }
      if (neg) coeff = -coeff;
      if (power > 64) throw ParseError("number-field degree too large");
      if (static_cast<size_t>(power) >= coeffs.size()) coeffs.resize(power + 1, mpz_class(0));
      coeffs[power] += coeff;
    }
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    return number_field(coeffs);
  }
  throw ParseError("unknown field descriptor '" + text + "'");
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar() : fld_(rationals_singleton()), v_(mpq_class(0)) {}

void Scalar::check_same_field(const Scalar& o) const {
  if (fld_ == o.fld_) return;
  if (fld_ && o.fld_ && fld_->same(*o.fld_)) return;
  throw Error(exit_input, "mixed-field operands: " + fld_->text() + " vs " +
                              o.fld_->text());
}

Scalar Scalar::zero(const FieldPtr& f) { return integer(f, 0); }
Scalar Scalar::one(const FieldPtr& f) { return integer(f, 1); }

Scalar Scalar::integer(const FieldPtr& f, long v) {
  Scalar s;
  s.fld_ = f;
  switch (f->kind) {
    case FieldKind::Rationals:
      s.v_ = mpq_class(v);
      break;
    case FieldKind::PrimeField: {
      long r = v % static_cast<long>(f->p);
      if (r < 0) r += static_cast<long>(f->p);
      s.v_ = static_cast<unsigned long long>(r);
      break;
    }
    case FieldKind::NumberField: {
      NfCoeffs c(f->degree(), mpq_class(0));
      c[0] = mpq_class(v);
      s.v_ = std::move(c);
      break;
    }
  }
  return s;
}

Scalar Scalar::rational(const FieldPtr& f, const mpq_class& q_in) {
  mpq_class q = q_in;
  q.canonicalize();
  Scalar s;
  s.fld_ = f;
  switch (f->kind) {
    case FieldKind::Rationals:
      s.v_ = q;
      break;
    case FieldKind::PrimeField: {
      mpz_class pz(static_cast<unsigned long>(f->p));
      mpz_class num = q.get_num() % pz;
      mpz_class den = q.get_den() % pz;
      if (den == 0)
        throw ValidationError("rational " + q.get_str() +
                              " has denominator divisible by " + std::to_string(f->p));
      if (num < 0) num += pz;
      unsigned long long n64 = mpz_get_ui(num.get_mpz_t());
      unsigned long long d64 = mpz_get_ui(mpz_class(den < 0 ? den + pz : den).get_mpz_t());
      unsigned long long inv = powmod_u64(d64, f->p - 2, f->p);
      s.v_ = mulmod_u64(n64, inv, f->p);
      break;
    }
    case FieldKind::NumberField: {
      NfCoeffs c(f->degree(), mpq_class(0));
      c[0] = q;
      s.v_ = std::move(c);
      break;
    }
  }
  return s;
}

Scalar Scalar::parse(const FieldPtr& f, const std::string& text) {
  Scalar s;
  s.fld_ = f;
  switch (f->kind) {
    case FieldKind::Rationals: {
      Lexer lx(text);
      mpq_class q = parse_rational_tok(lx);
      if (!lx.done()) throw ParseError("trailing characters in scalar '" + text + "'");
      s.v_ = q;
      break;
    }
    case FieldKind::PrimeField: {
      Lexer lx(text);
      bool neg = lx.accept('-');
      if (!neg) lx.accept('+');
      mpz_class r(lx.digits(), 10);
      if (lx.accept_word("mod")) {
        mpz_class pz(lx.digits(), 10);
        if (pz != mpz_class(static_cast<unsigned long>(f->p)))
          throw ParseError("scalar '" + text + "' names modulus " + pz.get_str() +
                           " but field is " + f->text());
      }
      if (!lx.done()) throw ParseError("trailing characters in scalar '" + text + "'");
      mpz_class pz(static_cast<unsigned long>(f->p));
      r %= pz;
      if (neg) r = -r;
      if (r < 0) r += pz;
      s.v_ = mpz_get_ui(r.get_mpz_t());
      break;
    }
    case FieldKind::NumberField:
      s.v_ = parse_nf_coeffs(text, f->degree());
      break;
  }
  return s;
}

bool Scalar::is_zero() const {
  switch (fld_->kind) {
    case FieldKind::Rationals:
      return std::get<mpq_class>(v_) == 0;
    case FieldKind::PrimeField:
      return std::get<unsigned long long>(v_) == 0;
    case FieldKind::NumberField:
      for (const auto& c : std::get<NfCoeffs>(v_))
        if (c != 0) return false;
      return true;
  }
  return false;
}

bool Scalar::is_one() const {
  switch (fld_->kind) {
    case FieldKind::Rationals:
      return std::get<mpq_class>(v_) == 1;
    case FieldKind::PrimeField:
      return std::get<unsigned long long>(v_) == 1;
    case FieldKind::NumberField: {
      const auto& c = std::get<NfCoeffs>(v_);
      if (c[0] != 1) return false;
      for (size_t i = 1; i < c.size(); ++i)
        if (c[i] != 0) return false;
      return true;
    }
  }
  return false;
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  Scalar r;
  r.fld_ = fld_;
  switch (fld_->kind) {
    case FieldKind::Rationals:
      r.v_ = mpq_class(std::get<mpq_class>(v_) + std::get<mpq_class>(o.v_));
      break;
    case FieldKind::PrimeField: {
      unsigned long long s = std::get<unsigned long long>(v_) +
                             std::get<unsigned long long>(o.v_);
      if (s >= fld_->p) s -= fld_->p;
      r.v_ = s;
      break;
    }
    case FieldKind::NumberField: {
      NfCoeffs c = std::get<NfCoeffs>(v_);
      const auto& oc = std::get<NfCoeffs>(o.v_);
      for (size_t i = 0; i < c.size(); ++i) c[i] += oc[i];
      r.v_ = std::move(c);
      break;
    }
  }
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r;
  r.fld_ = fld_;
  switch (fld_->kind) {
    case FieldKind::Rationals:
      r.v_ = mpq_class(-std::get<mpq_class>(v_));
      break;
    case FieldKind::PrimeField: {
      unsigned long long a = std::get<unsigned long long>(v_);
      r.v_ = a == 0 ? 0ull : fld_->p - a;
      break;
    }
    case FieldKind::NumberField: {
      NfCoeffs c = std::get<NfCoeffs>(v_);
      for (auto& x : c) x = -x;
      r.v_ = std::move(c);
      break;
    }
  }
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  Scalar r;
  r.fld_ = fld_;
  switch (fld_->kind) {
    case FieldKind::Rationals:
      r.v_ = mpq_class(std::get<mpq_class>(v_) * std::get<mpq_class>(o.v_));
      break;
    case FieldKind::PrimeField:
      r.v_ = mulmod_u64(std::get<unsigned long long>(v_),
                        std::get<unsigned long long>(o.v_), fld_->p);
      break;
    case FieldKind::NumberField: {
      const auto& a = std::get<NfCoeffs>(v_);
      const auto& b = std::get<NfCoeffs>(o.v_);
      int d = fld_->degree();
      NfCoeffs conv(2 * d - 1, mpq_class(0));
      for (int i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < d; ++j) {
          if (b[j] == 0) continue;
          conv[i + j] += a[i] * b[j];
        }
      }
      // reduce by the monic minimal polynomial: t^d = -sum m_k t^k
      for (int i = 2 * d - 2; i >= d; --i) {
        if (conv[i] == 0) continue;
        for (int k = 0; k < d; ++k) conv[i - d + k] -= conv[i] * fld_->minpoly[k];
        conv[i] = 0;
      }
      conv.resize(d);
      r.v_ = std::move(conv);
      break;
    }
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  *this = *this + o;
  return *this;
}
Scalar& Scalar::operator*=(const Scalar& o) {
  *this = *this * o;
  return *this;
}

namespace {

using Poly = std::vector<mpq_class>;

int poly_deg(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

// division with remainder; divisor nonzero
void poly_divmod(const Poly& a, const Poly& b, Poly* q, Poly* r) {
  int db = poly_deg(b);
  Poly rem = a;
  int da = poly_deg(rem);
  q->assign(std::max(0, da - db + 1), mpq_class(0));
  while (da >= db) {
    mpq_class f = rem[da] / b[db];
    (*q)[da - db] = f;
    for (int i = 0; i <= db; ++i) rem[da - db + i] -= f * b[i];
    da = poly_deg(rem);
  }
  *r = rem;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size(), mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly poly_sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), mpq_class(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

}  // namespace

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(exit_input, "division by zero");
  Scalar r;
  r.fld_ = fld_;
  switch (fld_->kind) {
    case FieldKind::Rationals:
      r.v_ = mpq_class(1 / std::get<mpq_class>(v_));
      break;
    case FieldKind::PrimeField:
      r.v_ = powmod_u64(std::get<unsigned long long>(v_), fld_->p - 2, fld_->p);
      break;
    case FieldKind::NumberField: {
      // extended Euclid in Q[t] against the minimal polynomial
      int d = fld_->degree();
      Poly m(d + 1);
      for (int i = 0; i <= d; ++i) m[i] = mpq_class(fld_->minpoly[i]);
      Poly r0 = m, r1 = std::get<NfCoeffs>(v_);
      Poly s0 = {mpq_class(0)}, s1 = {mpq_class(1)};
      while (poly_deg(r1) >= 0) {
        Poly q, rem;
        poly_divmod(r0, r1, &q, &rem);
        Poly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
      }
      // r0 is a nonzero constant (minimal polynomial is irreducible)
      int dg = poly_deg(r0);
      if (dg != 0)
        throw Error(exit_input,
                    "number-field element shares a factor with the minimal polynomial");
      NfCoeffs inv(d, mpq_class(0));
      for (size_t i = 0; i < s0.size() && i < static_cast<size_t>(d); ++i)
        inv[i] = s0[i] / r0[0];
      r.v_ = std::move(inv);
      break;
    }
  }
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const {
  check_same_field(o);
  return *this * o.inverse();
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar acc = one(fld_);
  Scalar base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& o) const {
  check_same_field(o);
  switch (fld_->kind) {
    case FieldKind::Rationals:
      return std::get<mpq_class>(v_) == std::get<mpq_class>(o.v_);
    case FieldKind::PrimeField:
      return std::get<unsigned long long>(v_) == std::get<unsigned long long>(o.v_);
    case FieldKind::NumberField:
      return std::get<NfCoeffs>(v_) == std::get<NfCoeffs>(o.v_);
  }
  return false;
}

std::string Scalar::text() const {
  switch (fld_->kind) {
    case FieldKind::Rationals:
      return render_rat(std::get<mpq_class>(v_));
    case FieldKind::PrimeField:
      return std::to_string(std::get<unsigned long long>(v_)) + " mod " +
             std::to_string(fld_->p);
    case FieldKind::NumberField: {
      const auto& c = std::get<NfCoeffs>(v_);
      std::string out;
      for (size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        mpq_class a = abs(c[k]);
        if (out.empty())
          out += (c[k] < 0) ? "-" : "";
        else
          out += (c[k] < 0) ? " - " : " + ";
        if (k == 0) {
          out += render_rat(a);
        } else {
          out += render_rat(a) + "*t";
          if (k >= 2) out += "^" + std::to_string(k);
        }
      }
      return out.empty() ? "0" : out;
    }
  }
  return "?";
}

const mpq_class& Scalar::rat() const {
  if (fld_->kind != FieldKind::Rationals)
    throw Error(exit_input, "scalar is not rational");
  return std::get<mpq_class>(v_);
}

unsigned long long Scalar::residue() const {
  if (fld_->kind != FieldKind::PrimeField)
    throw Error(exit_input, "scalar is not a prime-field residue");
  return std::get<unsigned long long>(v_);
}

const Scalar::NfCoeffs& Scalar::coeffs() const {
  if (fld_->kind != FieldKind::NumberField)
    throw Error(exit_input, "scalar is not a number-field element");
  return std::get<NfCoeffs>(v_);
}

}  // namespace qinv
