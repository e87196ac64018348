#pragma once

#include <vector>

#include "toric/intmat.hpp"
#include "toric/padic.hpp"
#include "toric/rational.hpp"

namespace toric {

struct not_reducible_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TriState { Equal, Unequal, Undecided };

inline std::string str(TriState t) {
  switch (t) {
    case TriState::Equal: return "equal";
    case TriState::Unequal: return "unequal";
    default: return "undecided";
  }
}

/**
 * A p-adic torus presented as the cokernel of a period map: the target is
 * (K^x)^g, the source lattice Z^g0 acts through the period vectors, and
 * the valuations of the periods must be Z-independent (full column rank)
 * so that reduction into a fundamental domain is possible.
 */
struct ToricJacobian {
  PadicConfig cfg;
  int g = 0;
  int g0 = 0;
  std::vector<std::vector<Padic>> periods;  // g0 vectors of length g
  IntMat val_periods;                       // g x g0
  ColEchelon ech;                           // column echelon of val_periods
};

inline ToricJacobian toric_jacobian(const PadicConfig& cfg, int g,
                                    const std::vector<std::vector<Padic>>& periods) {
  ToricJacobian j;
  j.cfg = cfg;
  j.g = g;
  j.g0 = static_cast<int>(periods.size());
  j.periods = periods;
  j.val_periods = IntMat(g, j.g0);
  for (int c = 0; c < j.g0; ++c) {
    if (static_cast<int>(periods[c].size()) != g)
      throw std::invalid_argument("toric_jacobian: period vector of wrong length");
    for (int r = 0; r < g; ++r) {
      if (!periods[c][r].is_regular())
        throw std::invalid_argument("toric_jacobian: period coordinates must be nonzero");
      j.val_periods.at(r, c) = static_cast<long>(periods[c][r].valuation());
    }
  }
  j.ech = col_echelon(j.val_periods);
  if (static_cast<int>(j.ech.pivot_rows.size()) != j.g0)
    throw not_reducible_error("toric_jacobian: period valuations are not Z-independent");
  return j;
}

struct JacElement {
  std::vector<Padic> x;
  std::vector<Int> witness;  // lattice vector subtracted, in period coordinates
};

namespace detail {
inline std::vector<Int> vals_of(const std::vector<Padic>& x) {
  std::vector<Int> v;
  v.reserve(x.size());
  for (const auto& c : x) {
    if (!c.is_regular()) throw std::invalid_argument("jacobian: coordinates must be nonzero elements");
    v.push_back(Int(static_cast<long>(c.valuation())));
  }
  return v;
}

inline std::vector<Padic> shift_by_periods(const ToricJacobian& j, std::vector<Padic> x,
                                           const std::vector<Int>& t, int sign) {
  for (int c = 0; c < j.g0; ++c) {
    long long e = sign * t[c].get_si();
    if (e == 0) continue;
    for (int r = 0; r < j.g; ++r) x[r] = x[r] * j.periods[c][r].pow(e);
  }
  return x;
}
}  // namespace detail

// Canonical representative: subtract the unique lattice vector placing
// val(x) in the half-open Hermite-normal-form box of val_periods Z^g0.
inline JacElement jacobian_reduce(const ToricJacobian& j, const std::vector<Padic>& x) {
  if (static_cast<int>(x.size()) != j.g) throw std::invalid_argument("jacobian_reduce: wrong length");
  std::vector<Int> v = detail::vals_of(x);
  std::vector<Int> t_ech(j.g0, Int(0));
  for (int i = 0; i < j.g0; ++i) {
    int pr = j.ech.pivot_rows[i];
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), v[pr].get_mpz_t(), j.ech.h.at(pr, i).get_mpz_t());
    t_ech[i] = q;
    for (int r = 0; r < j.g; ++r) v[r] -= q * j.ech.h.at(r, i);
  }
  JacElement out;
  out.witness = j.ech.u.apply(t_ech);
  out.x = detail::shift_by_periods(j, x, out.witness, -1);
  return out;
}

// Decides x = y in the quotient: the valuation equation forces a unique
// candidate lattice vector; beyond the search bound the answer is
// "undecided", otherwise unit parts are compared to precision - slack.
inline TriState jacobian_equal(const ToricJacobian& j, const std::vector<Padic>& x,
                               const std::vector<Padic>& y, long long bound) {
  std::vector<Padic> z(j.g, Padic());
  for (int r = 0; r < j.g; ++r) z[r] = x[r] / y[r];
  auto t = solve(j.val_periods, detail::vals_of(z));
  if (!t) return TriState::Unequal;
  for (const auto& c : *t)
    if (abs(c) > Int(static_cast<long>(bound))) return TriState::Undecided;
  auto w = detail::shift_by_periods(j, z, *t, -1);
  for (const auto& c : w)
    if (!Padic::agree(c, Padic::one(j.cfg), j.cfg.precision - j.cfg.slack)) return TriState::Unequal;
  return TriState::Equal;
}

// Valuation class in coker(val_periods) tensor Q: kill the pivot rows
// rationally.  Commutes with jacobian_reduce.
inline std::vector<Rat> jacobian_valuation(const ToricJacobian& j, const std::vector<Padic>& x) {
  std::vector<Int> vi = detail::vals_of(x);
  std::vector<Rat> v;
  v.reserve(j.g);
  for (const auto& c : vi) v.push_back(Rat(c.get_si()));
  for (int i = 0; i < j.g0; ++i) {
    int pr = j.ech.pivot_rows[i];
    Rat q = v[pr] / Rat(j.ech.h.at(pr, i).get_si());
    for (int r = 0; r < j.g; ++r) v[r] = v[r] - q * Rat(j.ech.h.at(r, i).get_si());
  }
  return v;
}

}  // namespace toric
