#pragma once

#include <numeric>
#include <stdexcept>
#include <string>

namespace toric {

// Exact rational on 64-bit integers, always normalized (den > 0, gcd 1).
// Used for annulus boundaries and rational coordinates in quotient spaces;
// the magnitudes involved stay tiny.
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}
  Rat(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
  }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num * b.num, a.den * b.den); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) throw std::domain_error("Rat: division by zero");
    return Rat(a.num * b.den, a.den * b.num);
  }
  Rat operator-() const { return Rat(-num, den); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.num * b.den <= b.num * a.den; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// Parses "a" or "a/b".
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(std::stoll(s));
  return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

}  // namespace toric
