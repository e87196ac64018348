#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

#include "toric/rational.hpp"

namespace toric {

struct padic_domain_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct padic_precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PadicConfig {
  long long prime = 5;
  int precision = 12;  // N, significant p-adic digits of the unit part
  int slack = 2;       // s, digits sacrificed in equality tests
  int trunc = 16;      // L, default truncation length for infinite products
  int trunc_max = 64;  // L_max
  long long search_bound = 5;  // B, lattice search bound for quotient equality

  void validate() const {
    if (precision < 4) throw std::invalid_argument("PadicConfig: precision must be >= 4");
    if (slack < 0 || slack >= precision) throw std::invalid_argument("PadicConfig: need 0 <= slack < precision");
    if (prime < 2) throw std::invalid_argument("PadicConfig: prime must be >= 2");
    mpz_class p(static_cast<long>(prime));
    if (mpz_probab_prime_p(p.get_mpz_t(), 32) == 0) throw std::invalid_argument("PadicConfig: prime is composite");
    if (trunc < 1 || trunc_max < trunc) throw std::invalid_argument("PadicConfig: need 1 <= trunc <= trunc_max");
  }
};

/**
 * Element of Q_p known to bounded precision.
 *
 * A nonzero value is p^v * u with u in [1, p^N) coprime to p, meaning the
 * element is known modulo p^(v+N).  Exact zero is a distinguished state.
 * A third state records "congruent to 0 modulo p^k" for sums that cancel
 * to the working precision; such values cannot be inverted or evaluated.
 *
 * Values are immutable and every operation is a pure function; output
 * precision is the pessimistic function of the input precisions.
 */
class Padic {
 public:
  enum class State { ExactZero, ZeroToPrec, Regular };

  Padic() : p_(0), st_(State::ExactZero), v_(0), n_(0), u_(0) {}

  static Padic zero(long long p) {
    Padic x;
    x.p_ = p;
    return x;
  }

  static Padic zero_to_prec(long long p, long long abs_prec) {
    Padic x;
    x.p_ = p;
    x.st_ = State::ZeroToPrec;
    x.v_ = abs_prec;
    return x;
  }

  static Padic from_unit(long long p, long long v, const Int& unit, int n) {
    if (n <= 0) return zero_to_prec(p, v);
    Padic x;
    x.p_ = p;
    x.st_ = State::Regular;
    x.v_ = v;
    x.n_ = n;
    Int mod = pow_p(p, n);
    x.u_ = ((unit % mod) + mod) % mod;
    if (x.u_ == 0 || mpz_divisible_ui_p(x.u_.get_mpz_t(), static_cast<unsigned long>(p))) throw std::invalid_argument("Padic: unit part divisible by p");
    return x;
  }

  static Padic from_int(long long value, const PadicConfig& cfg) {
    return from_rational(Int(static_cast<long>(value)), Int(1), cfg);
  }

  static Padic from_rational(long long num, long long den, const PadicConfig& cfg) {
    return from_rational(Int(static_cast<long>(num)), Int(static_cast<long>(den)), cfg);
  }

  // Canonical image of num/den in Q_p at precision cfg.precision.
  static Padic from_rational(Int num, Int den, const PadicConfig& cfg) {
    if (den == 0) throw std::invalid_argument("Padic: zero denominator");
    if (num == 0) return zero(cfg.prime);
    Int p(static_cast<long>(cfg.prime));
    long long v = 0;
    while (num % p == 0) { num /= p; ++v; }
    while (den % p == 0) { den /= p; --v; }
    Int mod = pow_p(cfg.prime, cfg.precision);
    Int dinv;
    if (!invert_mod(den, mod, dinv)) throw std::invalid_argument("Padic: denominator not invertible");
    Int u = ((num % mod) * dinv) % mod;
    u = (u + mod) % mod;
    return from_unit(cfg.prime, v, u, cfg.precision);
  }

  static Padic from_rat(const Rat& r, const PadicConfig& cfg) {
    return from_rational(Int(static_cast<long>(r.num)), Int(static_cast<long>(r.den)), cfg);
  }

  static Padic one(const PadicConfig& cfg) { return from_unit(cfg.prime, 0, Int(1), cfg.precision); }

  long long prime() const { return p_; }
  State state() const { return st_; }
  bool is_exact_zero() const { return st_ == State::ExactZero; }
  bool is_zero_to_prec() const { return st_ != State::Regular; }
  bool is_regular() const { return st_ == State::Regular; }

  long long valuation() const {
    if (st_ != State::Regular) throw padic_domain_error("Padic: valuation of zero");
    return v_;
  }
  const Int& unit() const {
    if (st_ != State::Regular) throw padic_domain_error("Padic: unit of zero");
    return u_;
  }
  int precision_digits() const {
    if (st_ != State::Regular) throw padic_domain_error("Padic: precision of zero");
    return n_;
  }
  // v + N for regular values, k for "0 mod p^k".
  long long abs_precision() const {
    if (st_ == State::ExactZero) throw padic_domain_error("Padic: absolute precision of exact zero");
    if (st_ == State::ZeroToPrec) return v_;
    return v_ + n_;
  }

  Padic truncated(long long abs_prec) const {
    if (st_ == State::ExactZero) return *this;
    if (st_ == State::ZeroToPrec) return zero_to_prec(p_, std::min(v_, abs_prec));
    if (abs_prec <= v_) return zero_to_prec(p_, abs_prec);
    int n = static_cast<int>(std::min<long long>(n_, abs_prec - v_));
    return from_unit(p_, v_, u_ % pow_p(p_, n), n);
  }

  friend Padic operator*(const Padic& a, const Padic& b) {
    check_same_prime(a, b);
    if (a.st_ == State::ExactZero || b.st_ == State::ExactZero) return zero(a.p_);
    if (a.st_ == State::ZeroToPrec || b.st_ == State::ZeroToPrec)
      return zero_to_prec(a.p_, a.low_val() + b.low_val());
    int n = std::min(a.n_, b.n_);
    Int mod = pow_p(a.p_, n);
    return from_unit(a.p_, a.v_ + b.v_, (a.u_ * b.u_) % mod, n);
  }

  Padic inverse() const {
    if (st_ != State::Regular) throw padic_domain_error("Padic: inverse of zero");
    Int mod = pow_p(p_, n_);
    Int ui;
    invert_mod(u_, mod, ui);
    return from_unit(p_, -v_, ui, n_);
  }

  friend Padic operator/(const Padic& a, const Padic& b) { return a * b.inverse(); }

  Padic operator-() const {
    if (st_ != State::Regular) return *this;
    Int mod = pow_p(p_, n_);
    return from_unit(p_, v_, mod - u_, n_);
  }

  friend Padic operator+(const Padic& a, const Padic& b) {
    check_same_prime(a, b);
    if (a.st_ == State::ExactZero) return b;
    if (b.st_ == State::ExactZero) return a;
    long long abs = std::min(a.abs_precision(), b.abs_precision());
    long long vmin = std::min(a.low_val(), b.low_val());
    if (abs <= vmin) return zero_to_prec(a.p_, abs);
    Int mod = pow_p(a.p_, abs - vmin);
    Int r = (a.shifted_rep(vmin, mod) + b.shifted_rep(vmin, mod)) % mod;
    if (r == 0) return zero_to_prec(a.p_, abs);
    long long w = 0;
    Int p(static_cast<long>(a.p_));
    while (r % p == 0) { r /= p; ++w; }
    long long v = vmin + w;
    return from_unit(a.p_, v, r, static_cast<int>(abs - v));
  }

  friend Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }

  Padic pow(long long e) const {
    if (st_ == State::ExactZero) {
      if (e <= 0) throw padic_domain_error("Padic: zero to non-positive power");
      return *this;
    }
    if (st_ == State::ZeroToPrec) {
      if (e <= 0) throw padic_domain_error("Padic: possible zero to non-positive power");
      return zero_to_prec(p_, v_ * e);
    }
    if (e == 0) return from_unit(p_, 0, Int(1), n_);
    Padic base = e > 0 ? *this : inverse();
    long long k = e > 0 ? e : -e;
    Int mod = pow_p(p_, n_);
    Int r(1), b = base.u_;
    for (long long m = k; m; m >>= 1) {
      if (m & 1) r = (r * b) % mod;
      b = (b * b) % mod;
    }
    return from_unit(p_, base.v_ * k, r, n_);
  }

  // Multiply by p^k.
  Padic shift(long long k) const {
    if (st_ == State::ExactZero) return *this;
    Padic x = *this;
    x.v_ += k;
    return x;
  }

  // Equality at the joint precision: valuations agree and units agree
  // modulo p^(min precision).
  friend bool operator==(const Padic& a, const Padic& b) {
    check_same_prime(a, b);
    if (a.st_ == State::ExactZero && b.st_ == State::ExactZero) return true;
    return agree(a, b, std::min(a.min_known_digits(b), (long long)1 << 30));
  }
  friend bool operator!=(const Padic& a, const Padic& b) { return !(a == b); }

  // x and y agree as elements known to `digits` significant digits:
  // x - y vanishes modulo p^(min(v) + digits).
  static bool agree(const Padic& a, const Padic& b, long long digits) {
    check_same_prime(a, b);
    if (a.st_ == State::ExactZero && b.st_ == State::ExactZero) return true;
    if (a.st_ == State::Regular && b.st_ == State::Regular) {
      if (a.v_ != b.v_) return false;
      long long d = std::min({digits, (long long)a.n_, (long long)b.n_});
      Int mod = pow_p(a.p_, d);
      return a.u_ % mod == b.u_ % mod;
    }
    // one side is (possibly) zero: the other must vanish to the joint precision
    const Padic& z = a.st_ == State::Regular ? b : a;
    const Padic& x = a.st_ == State::Regular ? a : b;
    if (x.st_ == State::ExactZero) return true;  // both zero-ish
    if (x.st_ == State::ZeroToPrec) return true;
    long long bound = z.st_ == State::ExactZero ? x.v_ + digits : std::min(z.v_, x.v_ + digits);
    return x.v_ >= bound;
  }

  // "p^v * u + O(p^(v+N))"; exact zero prints "0"; unknown-valuation zero
  // prints "O(p^k)".
  std::string str() const {
    if (st_ == State::ExactZero) return "0";
    std::string ps = std::to_string(p_);
    if (st_ == State::ZeroToPrec) return "O(" + ps + "^" + std::to_string(v_) + ")";
    return ps + "^" + std::to_string(v_) + " * " + u_.get_str() + " + O(" + ps + "^" +
           std::to_string(v_ + n_) + ")";
  }

  static Int pow_p(long long p, long long n) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
    return r;
  }

 private:
  long long low_val() const { return v_; }  // valuation, or abs prec bound for ZeroToPrec

  long long min_known_digits(const Padic& b) const {
    long long na = st_ == State::Regular ? n_ : 0;
    long long nb = b.st_ == State::Regular ? b.n_ : 0;
    if (st_ == State::Regular && b.st_ == State::Regular) return std::min(na, nb);
    return std::max(na, nb);
  }

  Int shifted_rep(long long vmin, const Int& mod) const {
    if (st_ == State::ZeroToPrec) return Int(0);
    Int r = u_ * pow_p(p_, v_ - vmin);
    return r % mod;
  }

  static void check_same_prime(const Padic& a, const Padic& b) {
    if (a.p_ != b.p_ && a.p_ != 0 && b.p_ != 0)
      throw std::invalid_argument("Padic: mixed primes");
  }

  static bool invert_mod(const Int& a, const Int& mod, Int& out) {
    return mpz_invert(out.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) != 0;
  }

  long long p_;
  State st_;
  long long v_;  // valuation (Regular) or absolute precision (ZeroToPrec)
  int n_;
  Int u_;
};

// Accepts "0", "O(p^k)", the canonical form "p^v * u + O(p^m)", or a
// rational literal "a/b" / "a".
inline Padic parse_padic(const std::string& in, const PadicConfig& cfg) {
  std::string s;
  for (char c : in)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("parse_padic: empty literal");
  if (s == "0") return Padic::zero(cfg.prime);
  if (s.rfind("O(", 0) == 0) {
    auto caret = s.find('^');
    auto close = s.find(')');
    if (caret == std::string::npos || close == std::string::npos)
      throw std::invalid_argument("parse_padic: bad O() literal: " + in);
    long long p = std::stoll(s.substr(2, caret - 2));
    if (p != cfg.prime) throw std::invalid_argument("parse_padic: prime mismatch in " + in);
    return Padic::zero_to_prec(p, std::stoll(s.substr(caret + 1, close - caret - 1)));
  }
  auto plus = s.find("+O(");
  if (plus != std::string::npos) {
    std::string head = s.substr(0, plus);
    auto caret = head.find('^');
    auto star = head.find('*');
    if (caret == std::string::npos || star == std::string::npos)
      throw std::invalid_argument("parse_padic: bad canonical literal: " + in);
    long long p = std::stoll(head.substr(0, caret));
    if (p != cfg.prime) throw std::invalid_argument("parse_padic: prime mismatch in " + in);
    long long v = std::stoll(head.substr(caret + 1, star - caret - 1));
    Int u(head.substr(star + 1));
    auto caret2 = s.find('^', plus);
    auto close = s.find(')', plus);
    long long m = std::stoll(s.substr(caret2 + 1, close - caret2 - 1));
    if (m <= v) throw std::invalid_argument("parse_padic: empty precision in " + in);
    return Padic::from_unit(p, v, u, static_cast<int>(m - v));
  }
  auto slash = s.find('/');
  if (slash == std::string::npos) return Padic::from_rational(Int(s), Int(1), cfg);
  return Padic::from_rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)), cfg);
}

// The unique (p-1)-st root of unity congruent to x mod p, via the
// Frobenius fixed-point iteration t -> t^p.
inline Padic teichmuller(const Padic& x) {
  if (!x.is_regular() || x.valuation() != 0)
    throw padic_domain_error("teichmuller: input must be a unit");
  long long p = x.prime();
  int n = x.precision_digits();
  Int mod = Padic::pow_p(p, n);
  Int t = x.unit() % mod;
  for (int k = 0; k < n + 1; ++k) {
    Int nt;
    mpz_powm_ui(nt.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p), mod.get_mpz_t());
    if (nt == t) break;
    t = nt;
  }
  return Padic::from_unit(p, 0, t, n);
}

// Iwasawa branch of the p-adic logarithm: log p = 0, log kills the
// Teichmuller part, and on 1 + pZ_p it is the usual series.  The result
// is known modulo p^N where N is the precision of the input's unit part.
inline Padic iwasawa_log(const Padic& x) {
  if (!x.is_regular()) throw padic_domain_error("iwasawa_log: zero input");
  long long p = x.prime();
  int n = x.precision_digits();
  Padic omega = teichmuller(Padic::from_unit(p, 0, x.unit(), n));
  Padic one_unit = Padic::from_unit(p, 0, x.unit(), n) * omega.inverse();
  // y = <u> - 1 has valuation >= 1
  Padic y = one_unit - Padic::from_unit(p, 0, Int(1), n);
  if (y.is_zero_to_prec()) return Padic::zero_to_prec(p, n);
  long long w = y.valuation();
  // guard digits cover the p-part of the denominators n
  int nmax = static_cast<int>(n / w + 2);
  int guard = 1;
  while (Padic::pow_p(p, guard) <= nmax) ++guard;
  Int mod_hi = Padic::pow_p(p, n + guard);
  Int mod_lo = Padic::pow_p(p, n);
  Int ypow = (y.unit() * Padic::pow_p(p, w)) % mod_hi;  // y as an integer mod p^(n+guard)
  Int ybase = ypow;
  Int acc(0);
  for (long long k = 1;; ++k) {
    long long vp = 0;
    long long kk = k;
    while (kk % p == 0) { kk /= p; ++vp; }
    long long term_val = k * w - vp;
    if (term_val >= n) break;
    // term = +- y^k / k; y^k is divisible by p^(k w) >= p^vp
    Int t = ypow / Padic::pow_p(p, vp);
    Int kinv, ku(std::to_string(kk));
    mpz_invert(kinv.get_mpz_t(), ku.get_mpz_t(), mod_lo.get_mpz_t());
    Int term = (t % mod_lo) * kinv % mod_lo;
    if (k % 2 == 0) term = mod_lo - (term % mod_lo);
    acc = (acc + term) % mod_lo;
    ypow = (ypow * ybase) % mod_hi;
  }
  acc %= mod_lo;
  if (acc == 0) return Padic::zero_to_prec(p, n);
  long long v = 0;
  Int pp(static_cast<long>(p));
  while (acc % pp == 0) { acc /= pp; ++v; }
  return Padic::from_unit(p, v, acc, static_cast<int>(n - v));
}

// Square root by Hensel lifting (p odd).  Throws if the input is not a
// square in Q_p.
inline Padic padic_sqrt(const Padic& x) {
  if (!x.is_regular()) throw padic_domain_error("padic_sqrt: zero input");
  long long p = x.prime();
  if (p == 2) throw padic_domain_error("padic_sqrt: p = 2 unsupported");
  if (x.valuation() % 2 != 0) throw padic_domain_error("padic_sqrt: odd valuation");
  int n = x.precision_digits();
  Int mod = Padic::pow_p(p, n);
  Int u = x.unit();
  // Euler criterion mod p
  Int pz(static_cast<long>(p));
  Int r0;
  mpz_powm_ui(r0.get_mpz_t(), Int(u % pz).get_mpz_t(), static_cast<unsigned long>((p - 1) / 2), pz.get_mpz_t());
  if (r0 != 1) throw padic_domain_error("padic_sqrt: not a square");
  // find sqrt mod p by brute force (p is small in practice)
  Int t(0);
  Int up = u % pz;
  for (long long c = 1; c < p; ++c)
    if ((c * c) % p == up.get_si()) { t = static_cast<long>(c); break; }
  if (t == 0) throw padic_domain_error("padic_sqrt: not a square");
  // Newton iteration t <- (t + u/t)/2
  Int two_inv;
  mpz_invert(two_inv.get_mpz_t(), Int(2).get_mpz_t(), mod.get_mpz_t());
  for (int k = 0; k < n + 2; ++k) {
    Int tinv;
    mpz_invert(tinv.get_mpz_t(), t.get_mpz_t(), mod.get_mpz_t());
    Int nt = ((t + u * tinv % mod) % mod) * two_inv % mod;
    if (nt == t) break;
    t = nt;
  }
  if ((t * t - u) % mod != 0) throw padic_domain_error("padic_sqrt: lift failed");
  return Padic::from_unit(p, x.valuation() / 2, t, n);
}

}  // namespace toric
