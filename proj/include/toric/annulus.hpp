#pragma once

#include <string>
#include <vector>

#include "toric/graph.hpp"
#include "toric/padic.hpp"
#include "toric/rational.hpp"

namespace toric {

struct not_invertible_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct not_in_k2_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A point of the projective line over K.
struct PPoint {
  bool infinite = false;
  Padic z;

  static PPoint inf() { return {true, Padic()}; }
  static PPoint at(const Padic& x) { return {false, x}; }
};

/**
 * Rational function split over K: constant * prod (z - root_i)^{m_i} with
 * pairwise distinct K-rational roots.  The order at infinity is minus the
 * total degree; it is implicit.
 */
struct SplitRationalFunction {
  Padic constant;
  std::vector<std::pair<Padic, long long>> divisor;

  long long degree() const {
    long long d = 0;
    for (const auto& [r, m] : divisor) d += m;
    return d;
  }

  void validate() const {
    if (!constant.is_regular()) throw std::invalid_argument("split function: constant must be nonzero");
    for (const auto& [r, m] : divisor) {
      if (m == 0) throw std::invalid_argument("split function: zero multiplicity");
      if (r.is_regular() || r.is_exact_zero()) continue;
      throw std::invalid_argument("split function: root must be a definite value");
    }
    for (size_t i = 0; i < divisor.size(); ++i)
      for (size_t j = i + 1; j < divisor.size(); ++j)
        if (divisor[i].first == divisor[j].first)
          throw std::invalid_argument("split function: roots coincide to precision");
  }

  static SplitRationalFunction make(const Padic& c,
                                    std::vector<std::pair<Padic, long long>> div) {
    SplitRationalFunction f{c, std::move(div)};
    f.validate();
    return f;
  }

  static SplitRationalFunction constant_fn(const Padic& c) { return make(c, {}); }

  // f(z) = z - a
  static SplitRationalFunction linear(const PadicConfig& cfg, const Padic& a) {
    return make(Padic::one(cfg), {{a, 1}});
  }

  SplitRationalFunction operator*(const SplitRationalFunction& other) const {
    SplitRationalFunction out{constant * other.constant, divisor};
    for (const auto& [r, m] : other.divisor) {
      bool merged = false;
      for (auto& [r0, m0] : out.divisor)
        if (r0 == r) {
          m0 += m;
          merged = true;
          break;
        }
      if (!merged) out.divisor.push_back({r, m});
    }
    std::erase_if(out.divisor, [](const auto& rm) { return rm.second == 0; });
    return out;
  }

  SplitRationalFunction inverse() const {
    SplitRationalFunction out{constant.inverse(), divisor};
    for (auto& [r, m] : out.divisor) m = -m;
    return out;
  }

  SplitRationalFunction scaled(const Padic& c) const {
    return {constant * c, divisor};
  }

  // Value at a finite point that is not a zero or pole.
  Padic evaluate(const Padic& x) const {
    Padic acc = constant;
    for (const auto& [r, m] : divisor) {
      Padic d = x - r;
      if (!d.is_regular()) throw padic_precision_error("split function: evaluation vanishes to precision");
      acc = acc * d.pow(m);
    }
    return acc;
  }
};

inline long long ord_at(const SplitRationalFunction& f, const PPoint& x) {
  if (x.infinite) return -f.degree();
  for (const auto& [r, m] : f.divisor)
    if (r == x.z) return m;
  return 0;
}

// Tame symbol t_x(f, g) = (-1)^{mn} (f^n / g^m)(x) with m = ord_x f,
// n = ord_x g; the vanishing factors cancel and are excluded from the
// evaluation.
inline Padic tame_symbol(const SplitRationalFunction& f, const SplitRationalFunction& g,
                         const PPoint& x) {
  long long m = ord_at(f, x);
  long long n = ord_at(g, x);
  Padic num, den;
  if (x.infinite) {
    num = f.constant.pow(n);
    den = g.constant.pow(m);
  } else {
    auto unit_eval = [&](const SplitRationalFunction& h, long long e) {
      Padic acc = h.constant.pow(e);
      for (const auto& [r, mm] : h.divisor) {
        if (r == x.z) continue;
        Padic d = x.z - r;
        if (!d.is_regular())
          throw padic_precision_error("tame_symbol: evaluation vanishes to precision");
        acc = acc * d.pow(e * mm);
      }
      return acc;
    };
    num = unit_eval(f, n);
    den = unit_eval(g, m);
  }
  Padic val = num / den;
  if ((m * n) % 2 != 0) val = -val;
  return val;
}

/**
 * Oriented annulus {a < v(z - center) < b}.  With the default orientation
 * the "inside" is the high-valuation disc including the boundary v = b
 * and the center itself; reversing the orientation swaps the two sides
 * and moves infinity to the inside.
 */
struct Annulus {
  Rat a, b;
  int orientation = 1;
  Padic center;  // exact zero by default

  enum class Side { Inside, Outside, OnAnnulus };

  void validate() const {
    if (!(a < b)) throw std::invalid_argument("annulus: need a < b");
    if (orientation != 1 && orientation != -1) throw std::invalid_argument("annulus: orientation is +-1");
  }

  Annulus reversed() const {
    Annulus e = *this;
    e.orientation = -e.orientation;
    return e;
  }

  Side classify(const PPoint& x) const {
    Side plus;  // side for orientation +1
    if (x.infinite) {
      plus = Side::Outside;
    } else {
      Padic d = x.z - center;
      if (d.is_exact_zero()) {
        plus = Side::Inside;
      } else if (d.is_zero_to_prec()) {
        if (Rat(d.abs_precision()) >= b) plus = Side::Inside;
        else
          throw padic_precision_error("annulus: point too close to the center to classify");
      } else {
        Rat v(d.valuation());
        if (v >= b) plus = Side::Inside;
        else if (v <= a) plus = Side::Outside;
        else plus = Side::OnAnnulus;
      }
    }
    if (orientation == -1 && plus != Side::OnAnnulus)
      plus = plus == Side::Inside ? Side::Outside : Side::Inside;
    return plus;
  }
};

namespace detail {
// distinct points of the combined divisor of f and g (plus infinity),
// identified at working precision
inline std::vector<PPoint> support_points(const SplitRationalFunction& f,
                                          const SplitRationalFunction& g) {
  std::vector<PPoint> pts;
  auto add = [&](const Padic& r) {
    for (const auto& p : pts)
      if (!p.infinite && p.z == r) return;
    pts.push_back(PPoint::at(r));
  };
  for (const auto& [r, m] : f.divisor) add(r);
  for (const auto& [r, m] : g.divisor) add(r);
  pts.push_back(PPoint::inf());
  return pts;
}

inline void check_invertible(const SplitRationalFunction& h, const Annulus& e, const char* who) {
  for (const auto& [r, m] : h.divisor)
    if (e.classify(PPoint::at(r)) == Annulus::Side::OnAnnulus)
      throw not_invertible_error(std::string(who) + ": divisor point lies on the open annulus");
}
}  // namespace detail

// Degree of f along the annulus: the sum of multiplicities over the
// inside disc (infinity counted when oriented inside).
inline long long annulus_degree(const SplitRationalFunction& f, const Annulus& e) {
  e.validate();
  detail::check_invertible(f, e, "annulus_degree");
  long long deg = 0;
  for (const auto& [r, m] : f.divisor)
    if (e.classify(PPoint::at(r)) == Annulus::Side::Inside) deg += m;
  if (e.classify(PPoint::inf()) == Annulus::Side::Inside) deg += -f.degree();
  return deg;
}

// Annulus symbol: the product of tame symbols over the points of the
// inside disc.
inline Padic annulus_symbol(const PadicConfig& cfg, const SplitRationalFunction& f,
                            const SplitRationalFunction& g, const Annulus& e) {
  e.validate();
  detail::check_invertible(f, e, "annulus_symbol");
  detail::check_invertible(g, e, "annulus_symbol");
  Padic acc = Padic::one(cfg);
  for (const auto& x : detail::support_points(f, g))
    if (e.classify(x) == Annulus::Side::Inside) acc = acc * tame_symbol(f, g, x);
  return acc;
}

// prod over points outside every removed disc of t_x(f,g), times the
// annulus symbols along the boundary.  The result must be 1; returning it
// lets callers assert at their own tolerance.
inline Padic residue_theorem_check(const PadicConfig& cfg, const SplitRationalFunction& f,
                                   const SplitRationalFunction& g,
                                   const std::vector<Annulus>& boundary) {
  // pairwise disjointness of the removed discs
  for (size_t i = 0; i < boundary.size(); ++i) {
    for (size_t j = i + 1; j < boundary.size(); ++j) {
      const Annulus &ei = boundary[i], &ej = boundary[j];
      if (ei.orientation == -1 && ej.orientation == -1)
        throw std::invalid_argument("residue check: two discs contain infinity");
      if (ei.orientation == 1 && ej.orientation == 1) {
        Padic d = ei.center - ej.center;
        Rat v = d.is_regular() ? Rat(d.valuation()) : Rat(1 << 20);
        if (!(v < ei.b && v < ej.b))
          throw std::invalid_argument("residue check: removed discs overlap");
      } else {
        const Annulus& ball = ei.orientation == 1 ? ei : ej;    // inside = ball
        const Annulus& coball = ei.orientation == 1 ? ej : ei;  // inside = complement
        Padic d = ball.center - coball.center;
        Rat v = d.is_regular() ? Rat(d.valuation()) : Rat(1 << 20);
        if (!(v > coball.a && ball.b > coball.a))
          throw std::invalid_argument("residue check: removed discs overlap");
      }
    }
  }
  Padic acc = Padic::one(cfg);
  for (const auto& e : boundary) acc = acc * annulus_symbol(cfg, f, g, e);
  for (const auto& x : detail::support_points(f, g)) {
    bool outside_all = true;
    for (const auto& e : boundary)
      if (e.classify(x) == Annulus::Side::Inside) {
        outside_all = false;
        break;
      }
    if (outside_all) acc = acc * tame_symbol(f, g, x);
  }
  return acc;
}

// A formal combination of symbols {f_i, g_i} with integer exponents.
struct SymbolTerm {
  SplitRationalFunction f, g;
  long long exponent = 1;
};
using SymbolElement = std::vector<SymbolTerm>;

// Per-edge data: a chart annulus and the restrictions of every symbol
// term to it.
struct EdgeSymbolData {
  Annulus chart;
  std::vector<std::pair<SplitRationalFunction, SplitRationalFunction>> pairs;
};

// e -> prod_i t_e(f_i, g_i)^{n_i}, one annulus symbol per edge chart.
inline Cochain1<Padic> symbol_cochain(const PadicConfig& cfg, const Graph& g,
                                      const std::vector<EdgeSymbolData>& edges,
                                      const std::vector<long long>& exponents) {
  if (static_cast<int>(edges.size()) != g.num_edges())
    throw std::invalid_argument("symbol_cochain: one chart per edge required");
  Cochain1<Padic> out;
  out.reserve(edges.size());
  for (const auto& ed : edges) {
    if (ed.pairs.size() != exponents.size())
      throw std::invalid_argument("symbol_cochain: restriction count mismatch");
    Padic acc = Padic::one(cfg);
    for (size_t i = 0; i < ed.pairs.size(); ++i) {
      if (exponents[i] == 0) continue;
      acc = acc * annulus_symbol(cfg, ed.pairs[i].first, ed.pairs[i].second, ed.chart).pow(exponents[i]);
    }
    out.push_back(acc);
  }
  return out;
}

}  // namespace toric
