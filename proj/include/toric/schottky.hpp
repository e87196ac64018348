#pragma once

#include <string>
#include <vector>

#include "toric/annulus.hpp"
#include "toric/graph.hpp"
#include "toric/intmat.hpp"
#include "toric/jacobian.hpp"
#include "toric/padic.hpp"

namespace toric {

struct non_convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct orbit_collision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct inconsistent_lift_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Point of P^1(K) in homogeneous coordinates.
struct ProjPoint {
  Padic x, y;

  static ProjPoint affine(const PadicConfig& cfg, const Padic& z) { return {z, Padic::one(cfg)}; }
  bool infinite() const { return !y.is_regular(); }
  Padic value() const {
    if (infinite()) throw std::domain_error("ProjPoint: affine value of infinity");
    return x / y;
  }
};

/**
 * Fractional linear map as a 2x2 matrix over K up to scalar.  The
 * normalized representative rescales so the first entry of minimal
 * valuation becomes exactly one.
 */
struct MobiusTransform {
  Padic a, b, c, d;

  static MobiusTransform from_rationals(const PadicConfig& cfg, const Rat& a, const Rat& b,
                                        const Rat& c, const Rat& d) {
    MobiusTransform m{Padic::from_rat(a, cfg), Padic::from_rat(b, cfg), Padic::from_rat(c, cfg),
                      Padic::from_rat(d, cfg)};
    m.check_invertible();
    return m;
  }

  void check_invertible() const {
    Padic det = a * d - b * c;
    if (!det.is_regular()) throw std::invalid_argument("mobius: determinant vanishes to precision");
  }

  MobiusTransform compose(const MobiusTransform& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }

  // projective inverse (adjugate)
  MobiusTransform inverse() const { return {d, -b, -c, a}; }

  ProjPoint apply(const ProjPoint& p) const {
    ProjPoint q{a * p.x + b * p.y, c * p.x + d * p.y};
    // rescale by the smaller-valuation regular coordinate
    const Padic* pivot = nullptr;
    if (q.x.is_regular()) pivot = &q.x;
    if (q.y.is_regular() && (!pivot || q.y.valuation() < pivot->valuation())) pivot = &q.y;
    if (!pivot) throw orbit_collision_error("mobius: image point undefined at working precision");
    Padic inv = pivot->inverse();
    return {q.x * inv, q.y * inv};
  }

  MobiusTransform normalized() const {
    const Padic* pivot = nullptr;
    for (const Padic* e : {&a, &b, &c, &d})
      if (e->is_regular() && (!pivot || e->valuation() < pivot->valuation())) pivot = e;
    if (!pivot) throw std::invalid_argument("mobius: zero matrix");
    Padic inv = pivot->inverse();
    return {a * inv, b * inv, c * inv, d * inv};
  }

  bool proj_equal(const MobiusTransform& o, long long digits) const {
    MobiusTransform m = normalized(), n = o.normalized();
    return Padic::agree(m.a, n.a, digits) && Padic::agree(m.b, n.b, digits) &&
           Padic::agree(m.c, n.c, digits) && Padic::agree(m.d, n.d, digits);
  }
};

struct FixedPoints {
  ProjPoint attracting, repelling;
  Padic attracting_eigenvalue, repelling_eigenvalue;
};

// Fixed points of a hyperbolic transform with K-rational eigenvalues.
// The attracting fixed point carries the eigenvalue of smaller valuation.
inline FixedPoints fixed_points(const PadicConfig& cfg, const MobiusTransform& m) {
  Padic tr = m.a + m.d;
  Padic det = m.a * m.d - m.b * m.c;
  Padic disc = tr * tr - Padic::from_rational(4, 1, cfg) * det;
  if (!disc.is_regular()) throw std::invalid_argument("fixed_points: degenerate discriminant");
  Padic root = padic_sqrt(disc);  // throws if the axis is not split
  Padic two_inv = Padic::from_rational(1, 2, cfg);
  Padic l1 = (tr + root) * two_inv;
  Padic l2 = (tr - root) * two_inv;
  if (!l1.is_regular() || !l2.is_regular() || l1.valuation() == l2.valuation())
    throw std::invalid_argument("fixed_points: transform is not hyperbolic");
  auto eigvec = [&](const Padic& l) -> ProjPoint {
    // (m - l) v = 0; pick the more robust of the two kernel expressions
    Padic la = l - m.a;
    if (m.b.is_regular() || la.is_regular()) return {m.b, la};
    return {l - m.d, m.c};
  };
  FixedPoints fp;
  const Padic& la = l1.valuation() < l2.valuation() ? l1 : l2;
  const Padic& lr = l1.valuation() < l2.valuation() ? l2 : l1;
  fp.attracting = eigvec(la);
  fp.repelling = eigvec(lr);
  fp.attracting_eigenvalue = la;
  fp.repelling_eigenvalue = lr;
  return fp;
}

/**
 * Free group of hyperbolic transforms given by its generators, with
 * length-lexicographic word enumeration.  Construction verifies that
 * every generator is hyperbolic with split axis and probes freeness by
 * projective comparison of short words.
 */
class SchottkyGroup {
 public:
  SchottkyGroup(const PadicConfig& cfg, std::vector<MobiusTransform> gens, int free_probe_len = 4)
      : cfg_(cfg), gens_(std::move(gens)) {
    for (const auto& g : gens_) {
      g.check_invertible();
      fixed_.push_back(fixed_points(cfg_, g));
    }
    if (free_probe_len > 0) probe_freeness(free_probe_len);
  }

  const PadicConfig& config() const { return cfg_; }
  int rank() const { return static_cast<int>(gens_.size()); }
  const MobiusTransform& generator(int i) const { return gens_[i]; }
  const FixedPoints& fixed(int i) const { return fixed_[i]; }

  // letters: +i for generator i (1-based), -i for its inverse
  using Word = std::vector<int>;

  MobiusTransform word_matrix(const Word& w) const {
    MobiusTransform m = identity();
    for (int letter : w) m = m.compose(letter_matrix(letter));
    return m;
  }

  // all reduced words of length <= len, grouped by length, in
  // length-lexicographic order with letter order g1 < g1^-1 < g2 < ...
  std::vector<std::vector<std::pair<Word, MobiusTransform>>> enumerate(int len) const {
    std::vector<std::vector<std::pair<Word, MobiusTransform>>> tiers;
    tiers.push_back({{Word{}, identity()}});
    for (int l = 1; l <= len; ++l) {
      std::vector<std::pair<Word, MobiusTransform>> tier;
      for (const auto& [w, m] : tiers[l - 1]) {
        for (int pos = 0; pos < 2 * rank(); ++pos) {
          int letter = pos % 2 == 0 ? pos / 2 + 1 : -(pos / 2 + 1);
          if (!w.empty() && w.back() == -letter) continue;
          Word nw = w;
          nw.push_back(letter);
          tier.push_back({nw, m.compose(letter_matrix(letter))});
        }
      }
      tiers.push_back(std::move(tier));
    }
    return tiers;
  }

  static int exponent_sum(const Word& w, int gen_index) {
    int s = 0;
    for (int letter : w) {
      if (letter == gen_index + 1) ++s;
      if (letter == -(gen_index + 1)) --s;
    }
    return s;
  }

 private:
  MobiusTransform identity() const {
    Padic one = Padic::one(cfg_);
    return {one, Padic::zero(cfg_.prime), Padic::zero(cfg_.prime), one};
  }
  MobiusTransform letter_matrix(int letter) const {
    return letter > 0 ? gens_[letter - 1] : gens_[-letter - 1].inverse();
  }
  void probe_freeness(int len) const {
    auto tiers = enumerate(len);
    std::vector<std::pair<Word, MobiusTransform>> all;
    for (const auto& t : tiers) all.insert(all.end(), t.begin(), t.end());
    for (size_t i = 0; i < all.size(); ++i)
      for (size_t j = i + 1; j < all.size(); ++j)
        if (all[i].second.proj_equal(all[j].second, cfg_.precision - cfg_.slack))
          throw std::invalid_argument("schottky: relation detected among short words");
  }

  PadicConfig cfg_;
  std::vector<MobiusTransform> gens_;
  std::vector<FixedPoints> fixed_;
};

struct ThetaValue {
  Padic value;
  // valuation of (u_L / u_{L-1} - 1); a large sentinel when the last
  // tier changed nothing at working precision
  long long increment_val;
};

namespace detail {
inline Padic line_at(const ProjPoint& w, const ProjPoint& a) {
  // w and a finite: w.x - a w.y (up to the w-normalization); a infinite: w.y
  if (a.infinite()) return w.y;
  return w.x - a.value() * w.y;
}
}  // namespace detail

// Truncated theta product prod_{|delta| <= L} (delta z - gamma x)/(delta z - x),
// accumulated in enumeration order.
inline ThetaValue theta_eval(const SchottkyGroup& G, const SchottkyGroup::Word& gamma,
                             const Padic& x, const Padic& z, int len) {
  const PadicConfig& cfg = G.config();
  ProjPoint px = ProjPoint::affine(cfg, x);
  ProjPoint pgx = G.word_matrix(gamma).apply(px);
  ProjPoint pz = ProjPoint::affine(cfg, z);
  Padic acc = Padic::one(cfg);
  Padic prev = acc;
  long long inc = 1 << 20;
  auto tiers = G.enumerate(len);
  for (int l = 0; l <= len; ++l) {
    for (const auto& [w, m] : tiers[l]) {
      ProjPoint dz = m.apply(pz);
      Padic num = detail::line_at(dz, pgx);
      Padic den = detail::line_at(dz, px);
      if (!num.is_regular() || !den.is_regular())
        throw orbit_collision_error("theta_eval: evaluation point collides with an orbit point");
      acc = acc * (num / den);
    }
    if (l == len && len > 0) {
      Padic ratio = acc / prev - Padic::one(cfg);
      inc = ratio.is_regular() ? ratio.valuation()
            : ratio.is_exact_zero() ? (1LL << 20)
                                    : ratio.abs_precision();
    }
    prev = acc;
  }
  return {acc, inc};
}

// deterministic generic evaluation points avoiding generator fixed points
inline Padic pick_eval_point(const SchottkyGroup& G, int which) {
  const PadicConfig& cfg = G.config();
  static const long long candidates[] = {2, 3, 7, 12, 18, 23, 29, 38};
  int found = 0;
  for (long long c : candidates) {
    Padic z = Padic::from_rational(c, 1, cfg);
    bool clash = false;
    for (int i = 0; i < G.rank(); ++i) {
      for (const ProjPoint* fp : {&G.fixed(i).attracting, &G.fixed(i).repelling}) {
        if (fp->infinite()) continue;
        Padic d = z - fp->value();
        if (!d.is_regular() || d.valuation() > 1) clash = true;
      }
    }
    if (clash) continue;
    if (found == which) return z;
    ++found;
  }
  throw std::invalid_argument("pick_eval_point: no usable candidate");
}

inline Padic pick_theta_base(const SchottkyGroup& G, const Padic& avoid) {
  const PadicConfig& cfg = G.config();
  static const long long candidates[] = {43, 57, 68, 83, 102};
  for (long long c : candidates) {
    Padic x = Padic::from_rational(c, 1, cfg);
    Padic d = x - avoid;
    if (!d.is_regular()) continue;
    bool clash = false;
    for (int i = 0; i < G.rank(); ++i)
      for (const ProjPoint* fp : {&G.fixed(i).attracting, &G.fixed(i).repelling}) {
        if (fp->infinite()) continue;
        Padic dd = x - fp->value();
        if (!dd.is_regular() || dd.valuation() > 1) clash = true;
      }
    if (!clash) return x;
  }
  throw std::invalid_argument("pick_theta_base: no usable candidate");
}

struct PeriodValue {
  Padic value;
  int used_len = 0;
};

// mu(gamma_i, gamma_j) = u_{gamma_j}(gamma_i z) / u_{gamma_j}(z),
// truncated at length len; verified independent of z by a second
// evaluation point.
inline PeriodValue period(const SchottkyGroup& G, int i, int j, int len) {
  const PadicConfig& cfg = G.config();
  SchottkyGroup::Word gi{i + 1}, gj{j + 1};
  MobiusTransform mi = G.generator(i);
  auto eval_at = [&](const Padic& z) {
    ProjPoint gz = mi.apply(ProjPoint::affine(cfg, z));
    if (gz.infinite()) throw orbit_collision_error("period: translated base point at infinity");
    Padic x = pick_theta_base(G, z);
    Padic unum = theta_eval(G, gj, x, gz.value(), len).value;
    Padic uden = theta_eval(G, gj, x, z, len).value;
    return unum / uden;
  };
  Padic z1 = pick_eval_point(G, 0);
  Padic z2 = pick_eval_point(G, 1);
  Padic v1 = eval_at(z1);
  Padic v2 = eval_at(z2);
  if (!Padic::agree(v1, v2, cfg.precision - cfg.slack))
    throw non_convergence_error("period: value depends on the evaluation point at this truncation");
  return {v1, len};
}

// stabilized period: increase the truncation until two consecutive
// values agree to precision - slack
inline PeriodValue period_stabilized(const SchottkyGroup& G, int i, int j) {
  const PadicConfig& cfg = G.config();
  Padic prev;
  bool have_prev = false;
  for (int len = 2; len <= cfg.trunc_max; ++len) {
    PeriodValue cur;
    try {
      cur = period(G, i, j, len);
    } catch (const non_convergence_error&) {
      continue;
    }
    if (have_prev && Padic::agree(prev, cur.value, cfg.precision - cfg.slack)) {
      cur.used_len = len;
      return cur;
    }
    prev = cur.value;
    have_prev = true;
  }
  throw non_convergence_error("period: no stabilization within the truncation cap");
}


/**
 * Full period matrix Q_{ij} = mu(gamma_i, gamma_j) at stabilized
 * truncation, with the symmetry defect checked to precision - slack.
 */
struct PeriodMatrix {
  std::vector<std::vector<Padic>> q;
  int used_len = 0;
  bool symmetric = true;
};

inline PeriodMatrix period_matrix(const SchottkyGroup& G) {
  const PadicConfig& cfg = G.config();
  int r = G.rank();
  PeriodMatrix pm;
  pm.q.assign(r, std::vector<Padic>(r, Padic()));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      PeriodValue v = period_stabilized(G, i, j);
      pm.q[i][j] = v.value;
      pm.used_len = std::max(pm.used_len, v.used_len);
    }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (!Padic::agree(pm.q[i][j], pm.q[j][i], cfg.precision - cfg.slack)) pm.symmetric = false;
  return pm;
}

// ---------------------------------------------------------------------------
// Quotient-graph side: user-supplied lift data identifies each generator
// with a closed edge path.

struct GeneratorLift {
  // signed edges: (edge index, +1/-1), consecutive, closed
  std::vector<std::pair<int, int>> path;
};

inline Cochain1<Int> path_cochain(const Graph& g, const GeneratorLift& lift) {
  Cochain1<Int> c(g.num_edges(), Int(0));
  if (lift.path.empty()) return c;
  auto tail_of = [&](const std::pair<int, int>& s) {
    return s.second > 0 ? g.edges[s.first].tail : g.edges[s.first].head;
  };
  auto head_of = [&](const std::pair<int, int>& s) {
    return s.second > 0 ? g.edges[s.first].head : g.edges[s.first].tail;
  };
  for (size_t t = 0; t < lift.path.size(); ++t) {
    const auto& step = lift.path[t];
    const auto& next = lift.path[(t + 1) % lift.path.size()];
    if (head_of(step) != tail_of(next))
      throw inconsistent_lift_error("generator lift path is not a closed edge path");
    c[step.first] += step.second;
  }
  return c;
}

// Image of a word in first graph homology: the signed sum of generator
// path cochains, weighted by exponent sums.
inline Cochain1<Int> hurewicz(const SchottkyGroup& G, const SchottkyGroup::Word& w, const Graph& g,
                              const std::vector<GeneratorLift>& lifts) {
  if (static_cast<int>(lifts.size()) != G.rank())
    throw inconsistent_lift_error("hurewicz: one lift path per generator required");
  Cochain1<Int> acc(g.num_edges(), Int(0));
  for (int i = 0; i < G.rank(); ++i) {
    Cochain1<Int> c = path_cochain(g, lifts[i]);
    if (!is_harmonic(ZAdd{}, g, c))
      throw inconsistent_lift_error("hurewicz: lift path is not a cycle");
    int e = SchottkyGroup::exponent_sum(w, i);
    for (int t = 0; t < g.num_edges(); ++t) acc[t] += e * c[t];
  }
  return acc;
}

// The truncated theta function of a word as a split rational function:
// zeros along the orbit of gamma x, poles along the orbit of x.
inline SplitRationalFunction truncated_theta_function(const SchottkyGroup& G,
                                                      const SchottkyGroup::Word& gamma, int len) {
  const PadicConfig& cfg = G.config();
  Padic x = pick_theta_base(G, Padic::from_rational(1, 1, cfg));
  ProjPoint px = ProjPoint::affine(cfg, x);
  ProjPoint pgx = G.word_matrix(gamma).apply(px);
  std::vector<std::pair<Padic, long long>> div;
  auto add = [&](const ProjPoint& p, long long m) {
    if (p.infinite()) throw orbit_collision_error("truncated theta: orbit point at infinity");
    Padic v = p.value();
    for (auto& [r, mm] : div)
      if (r == v) {
        mm += m;
        return;
      }
    div.push_back({v, m});
  };
  auto tiers = G.enumerate(len);
  for (const auto& tier : tiers)
    for (const auto& [w, m] : tier) {
      add(m.apply(pgx), 1);
      add(m.apply(px), -1);
    }
  std::erase_if(div, [](const auto& rm) { return rm.second == 0; });
  return SplitRationalFunction::make(Padic::one(cfg), div);
}

// Residues of the truncated theta function along the chart annuli; the
// result must agree with the Hurewicz image, which is how truncation or
// chart errors surface.
inline Cochain1<Int> residue_cochain(const SchottkyGroup& G, const SchottkyGroup::Word& gamma,
                                     const Graph& g, const std::vector<Annulus>& charts,
                                     const std::vector<GeneratorLift>& lifts, int len) {
  if (static_cast<int>(charts.size()) != g.num_edges())
    throw std::invalid_argument("residue_cochain: one chart per edge required");
  SplitRationalFunction u = truncated_theta_function(G, gamma, len);
  Cochain1<Int> res;
  res.reserve(charts.size());
  for (const auto& e : charts) res.push_back(Int(static_cast<long>(annulus_degree(u, e))));
  if (!is_harmonic(ZAdd{}, g, res))
    throw non_convergence_error("residue_cochain: residues are not harmonic at this truncation");
  Cochain1<Int> hur = hurewicz(G, gamma, g, lifts);
  if (res != hur)
    throw non_convergence_error("residue_cochain: residues disagree with the Hurewicz image");
  return res;
}

/**
 * Period data reexpressed as the augmented monodromy on the quotient
 * graph: a period vector in spanning-tree coordinates per harmonic basis
 * element, pinned by the pairing values <N(alpha_i), alpha_j> = Q_{ij}.
 * The pairing matrix of the supplied Hurewicz basis against the tree
 * basis must be unimodular.
 */
struct AugmentedMonodromy {
  std::vector<std::vector<Padic>> periods;  // one vector per basis element
  IntMat pairing;                           // hurewicz basis x tree basis
  ToricJacobian jacobian;
};

inline AugmentedMonodromy augmented_monodromy_from_periods(const PadicConfig& cfg,
                                                           const PeriodMatrix& pm, const Graph& g,
                                                           const std::vector<Cochain1<Int>>& basis) {
  if (!pm.symmetric)
    throw std::invalid_argument("augmented monodromy: period matrix asymmetric beyond tolerance");
  int r = static_cast<int>(basis.size());
  SpanningTree tree = spanning_tree(g);
  int nt = static_cast<int>(tree.nontree_edges.size());
  if (nt != r || static_cast<int>(pm.q.size()) != r)
    throw std::invalid_argument("augmented monodromy: rank mismatch");
  IntMat a(r, nt);
  for (int i = 0; i < r; ++i) {
    if (!is_harmonic(ZAdd{}, g, basis[i]))
      throw std::invalid_argument("augmented monodromy: basis cochain not harmonic");
    for (int b = 0; b < nt; ++b) a.at(i, b) = basis[i][tree.nontree_edges[b]];
  }
  IntMat ainv = inverse_unimodular(a);  // throws if the pairing is not unimodular
  AugmentedMonodromy out{{}, a, {}};
  for (int i = 0; i < r; ++i) {
    std::vector<Padic> x(nt, Padic::one(cfg));
    for (int b = 0; b < nt; ++b)
      for (int j = 0; j < r; ++j) x[b] = x[b] * pm.q[i][j].pow(ainv.at(j, b).get_si());
    out.periods.push_back(std::move(x));
  }
  out.jacobian = toric_jacobian(cfg, nt, out.periods);
  return out;
}

}  // namespace toric
