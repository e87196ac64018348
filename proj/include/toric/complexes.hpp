#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "toric/graph.hpp"
#include "toric/intmat.hpp"
#include "toric/report.hpp"

namespace toric {

struct inconsistent_data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/**
 * Chow groups of the strata of a strictly semistable special fiber,
 * supplied as ranks and matrices.  Y^(m) is the disjoint union of the
 * m-fold intersections of components; for each deletion of one index
 * there is an inclusion rho_r with a pullback and a pushforward matrix.
 * Intersection matrices pair complementary codimensions on each level.
 *
 * User data is trusted but shape-checked; missing groups are zero.
 */
struct StratumChow {
  int dim = 0;     // dimension of the generic fiber
  int levels = 0;  // largest m with Y^(m) nonempty

  std::map<std::pair<int, int>, int> ranks;                // (m, c) -> rank of CH^c(Y^(m))
  std::map<std::tuple<int, int, int>, IntMat> pullback;    // (m, c, r): CH^c(m) -> CH^c(m+1)
  std::map<std::tuple<int, int, int>, IntMat> pushforward; // (m, c, r): CH^c(m+1) -> CH^{c+1}(m)
  std::map<std::pair<int, int>, IntMat> intersection;      // (m, c): CH^c(m) x CH^{dim-m+1-c}(m) -> Z

  int rank_of(int m, int c) const {
    if (m < 1 || m > levels || c < 0 || c > dim - m + 1) return 0;
    auto it = ranks.find({m, c});
    return it == ranks.end() ? 0 : it->second;
  }

  // theta_{c,m} = sum_r (-1)^{r-1} rho_r^*, from level m to level m+1
  IntMat theta(int c, int m) const {
    IntMat out(rank_of(m + 1, c), rank_of(m, c));
    for (int r = 1; r <= m + 1; ++r) {
      auto it = pullback.find({m, c, r});
      if (it == pullback.end()) continue;
      check_shape(it->second, out.rows(), out.cols(), "pullback", m, c, r);
      out = (r % 2 == 1) ? out + it->second : out - it->second;
    }
    return out;
  }

  // delta_{c,m} = sum_r (-1)^r rho_{r*}, from level m+1 to level m
  IntMat delta(int c, int m) const {
    IntMat out(rank_of(m, c + 1), rank_of(m + 1, c));
    for (int r = 1; r <= m + 1; ++r) {
      auto it = pushforward.find({m, c, r});
      if (it == pushforward.end()) continue;
      check_shape(it->second, out.rows(), out.cols(), "pushforward", m, c, r);
      out = (r % 2 == 0) ? out + it->second : out - it->second;
    }
    return out;
  }

  IntMat intersection_form(int m, int c) const {
    int rows = rank_of(m, c), cols = rank_of(m, dim - m + 1 - c);
    auto it = intersection.find({m, c});
    if (it == intersection.end()) return IntMat(rows, cols);
    check_shape(it->second, rows, cols, "intersection", m, c, 0);
    return it->second;
  }

 private:
  static void check_shape(const IntMat& m, int rows, int cols, const char* kind, int lv, int c, int r) {
    if (m.rows() != rows || m.cols() != cols)
      throw inconsistent_data_error(std::string(kind) + " matrix at level " + std::to_string(lv) +
                                    ", codim " + std::to_string(c) + ", r " + std::to_string(r) +
                                    " has wrong shape");
  }
};

// A bounded complex of free Z-modules.
struct ChainComplex {
  int degmin = 0;
  std::vector<int> dims;
  std::vector<IntMat> d;  // d[t]: degree degmin+t -> degmin+t+1; size dims.size()-1

  int dim_at(int deg) const {
    int t = deg - degmin;
    return (t < 0 || t >= static_cast<int>(dims.size())) ? 0 : dims[t];
  }
  IntMat d_at(int deg) const {  // outgoing differential
    int t = deg - degmin;
    if (t < 0 || t + 1 >= static_cast<int>(dims.size())) return IntMat(dim_at(deg + 1), dim_at(deg));
    return d[t];
  }

  void verify_dd(const std::string& what) const {
    for (size_t t = 0; t + 1 < d.size(); ++t)
      if (!(d[t + 1] * d[t]).is_zero())
        throw inconsistent_data_error(what + ": d o d != 0 leaving degree " +
                                      std::to_string(degmin + static_cast<int>(t)));
  }
};

/**
 * Cohomology of a chain complex at one degree, presented by integer
 * matrices: a lattice basis of the kernel, the incoming image written in
 * kernel coordinates, and the Smith decomposition of that relation
 * matrix.  Free-part coordinates of kernel vectors are exact.
 */
struct CohomPresentation {
  int ambient_dim = 0;
  long rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1
  IntMat kernel;             // ambient x k
  IntMat relations;          // k x m, image of incoming d in kernel coordinates
  IntMat ux;                 // row transform of snf(relations)
  int npivots = 0;
  IntMat basis_lifts;        // ambient x rank

  // coordinates of a kernel vector on the free basis
  std::vector<Int> free_coords(const std::vector<Int>& w) const {
    auto y = solve(kernel, w);
    if (!y)
      throw inconsistent_data_error("free_coords: vector is not in the kernel lattice");
    auto z = ux.apply(*y);
    std::vector<Int> out;
    for (int t = npivots; t < kernel.cols(); ++t) out.push_back(z[t]);
    return out;
  }
};

inline IntMat inverse_unimodular(const IntMat& u) {
  IntMat inv(u.cols(), u.rows());
  for (int j = 0; j < u.rows(); ++j) {
    std::vector<Int> e(u.rows(), Int(0));
    e[j] = 1;
    auto x = solve(u, e);
    if (!x) throw std::invalid_argument("inverse_unimodular: matrix not invertible over Z");
    for (int i = 0; i < u.cols(); ++i) inv.at(i, j) = (*x)[i];
  }
  return inv;
}

inline CohomPresentation cohomology_at(const ChainComplex& cx, int deg) {
  CohomPresentation pres;
  pres.ambient_dim = cx.dim_at(deg);
  if (pres.ambient_dim == 0) {
    pres.kernel = IntMat(0, 0);
    pres.relations = IntMat(0, 0);
    pres.ux = IntMat(0, 0);
    pres.basis_lifts = IntMat(0, 0);
    return pres;
  }
  pres.kernel = kernel_basis(cx.d_at(deg));
  int k = pres.kernel.cols();
  IntMat din = cx.d_at(deg - 1).rows() == pres.ambient_dim
                   ? cx.d_at(deg - 1)
                   : IntMat(pres.ambient_dim, 0);
  pres.relations = IntMat(k, din.cols());
  for (int j = 0; j < din.cols(); ++j) {
    auto y = solve(pres.kernel, din.col(j));
    if (!y) throw inconsistent_data_error("cohomology_at: image is not contained in the kernel");
    for (int i = 0; i < k; ++i) pres.relations.at(i, j) = (*y)[i];
  }
  SnfResult s = snf(pres.relations);
  pres.ux = s.u;
  pres.npivots = s.npivots;
  for (const auto& f : s.diag())
    if (f > 1) pres.torsion.push_back(f);
  pres.rank = k - s.npivots;
  IntMat uinv = inverse_unimodular(s.u);
  pres.basis_lifts = IntMat(pres.ambient_dim, static_cast<int>(pres.rank));
  for (long j = 0; j < pres.rank; ++j) {
    // lift of the j-th free coordinate vector
    std::vector<Int> y(k, Int(0));
    for (int i = 0; i < k; ++i) y[i] = uinv.at(i, s.npivots + static_cast<int>(j));
    auto w = pres.kernel.apply(y);
    for (int i = 0; i < pres.ambient_dim; ++i) pres.basis_lifts.at(i, static_cast<int>(j)) = w[i];
  }
  return pres;
}

// ---------------------------------------------------------------------------
// The weight complexes C_j^*.  The degree-i term is the direct sum over
// k >= max(0, i) of CH^{i+j-k}(Y^(2k-i+1)); the differential is the
// alternating pullback into level 2k-i+2 plus the alternating pushforward
// into level 2k-i.

struct TBlock {
  int k, codim, level, rank, offset;
};
struct TTerm {
  std::vector<TBlock> blocks;
  int dim = 0;
};

struct TComplex {
  int j = 0;
  ChainComplex cx;
  std::vector<TTerm> terms;  // parallel to cx.dims

  const TTerm* term(int deg) const {
    int t = deg - cx.degmin;
    if (t < 0 || t >= static_cast<int>(terms.size())) return nullptr;
    return &terms[t];
  }
};

namespace detail {
inline TTerm make_term(const StratumChow& data, int j, int i) {
  TTerm term;
  for (int k = std::max(0, i);; ++k) {
    int level = 2 * k - i + 1;
    if (level > data.levels) break;
    if (level < 1) continue;
    int codim = i + j - k;
    int r = data.rank_of(level, codim);
    if (r > 0) {
      term.blocks.push_back({k, codim, level, r, term.dim});
      term.dim += r;
    }
  }
  return term;
}

inline const TBlock* find_block(const TTerm& term, int k) {
  for (const auto& b : term.blocks)
    if (b.k == k) return &b;
  return nullptr;
}

inline void paste(IntMat& dst, const IntMat& src, int row0, int col0) {
  for (int r = 0; r < src.rows(); ++r)
    for (int c = 0; c < src.cols(); ++c) dst.at(row0 + r, col0 + c) = dst.at(row0 + r, col0 + c) + src.at(r, c);
}
}  // namespace detail

inline TComplex build_complex(const StratumChow& data, int j) {
  TComplex tc;
  tc.j = j;
  int lo = -(data.levels + std::abs(j) + data.dim + 2);
  int hi = data.levels + std::abs(j) + data.dim + 2;
  std::vector<TTerm> all;
  bool seen = false;
  int first = 0, last = 0;
  for (int i = lo; i <= hi; ++i) {
    TTerm t = detail::make_term(data, j, i);
    all.push_back(t);
    if (t.dim > 0) {
      if (!seen) first = i;
      seen = true;
      last = i;
    }
  }
  if (!seen) {  // zero complex
    tc.cx.degmin = 0;
    tc.cx.dims = {};
    return tc;
  }
  tc.cx.degmin = first;
  for (int i = first; i <= last; ++i) tc.terms.push_back(all[i - lo]);
  for (const auto& t : tc.terms) tc.cx.dims.push_back(t.dim);
  for (int i = first; i < last; ++i) {
    const TTerm& src = tc.terms[i - first];
    const TTerm& dst = tc.terms[i - first + 1];
    IntMat d(dst.dim, src.dim);
    for (const auto& b : src.blocks) {
      // pullback part raises k by one
      if (const TBlock* tb = detail::find_block(dst, b.k + 1); tb && tb->level == b.level + 1 && tb->codim == b.codim)
        detail::paste(d, data.theta(b.codim, b.level), tb->offset, b.offset);
      // pushforward part keeps k, drops one level
      if (const TBlock* tb = detail::find_block(dst, b.k); tb && tb->level == b.level - 1 && tb->codim == b.codim + 1)
        detail::paste(d, data.delta(b.codim, b.level - 1), tb->offset, b.offset);
    }
    tc.cx.d.push_back(d);
  }
  tc.cx.verify_dd("weight complex j=" + std::to_string(j));
  return tc;
}

struct TGroupPresentation {
  int i = 0, j = 0;
  long rank = 0;
  std::vector<Int> torsion;
  TTerm term;
  CohomPresentation pres;
};

inline TGroupPresentation t_group(const StratumChow& data, int i, int j) {
  TComplex tc = build_complex(data, j);
  TGroupPresentation g;
  g.i = i;
  g.j = j;
  if (const TTerm* t = tc.term(i)) g.term = *t;
  g.pres = cohomology_at(tc.cx, i);
  g.rank = g.pres.rank;
  g.torsion = g.pres.torsion;
  return g;
}

// Chain-level monodromy C_j^i -> C_{j-1}^{i+2}: the identity on blocks
// present on both sides (k goes up by one, level and codim unchanged).
inline IntMat monodromy_chain_map(const StratumChow& data, int i, int j) {
  TTerm src = detail::make_term(data, j, i);
  TTerm dst = detail::make_term(data, j - 1, i + 2);
  IntMat nu(dst.dim, src.dim);
  for (const auto& b : src.blocks)
    if (const TBlock* tb = detail::find_block(dst, b.k + 1);
        tb && tb->level == b.level && tb->codim == b.codim) {
      if (tb->rank != b.rank) throw inconsistent_data_error("monodromy: mismatched block ranks");
      for (int t = 0; t < b.rank; ++t) nu.at(tb->offset + t, b.offset + t) = 1;
    }
  return nu;
}

// The matrix of N: T_j^i -> T_{j-1}^{i+2} on the free-part bases.
inline IntMat monodromy_matrix(const StratumChow& data, int i, int j) {
  TComplex src = build_complex(data, j);
  TComplex dst = build_complex(data, j - 1);
  // chain-map check: nu o d = d o nu out of degree i (and into it)
  for (int deg : {i - 1, i}) {
    IntMat nu_hi = monodromy_chain_map(data, deg + 1, j);
    IntMat nu_lo = monodromy_chain_map(data, deg, j);
    IntMat lhs = nu_hi * src.cx.d_at(deg);
    IntMat rhs = dst.cx.d_at(deg + 2) * nu_lo;
    if (!(lhs - rhs).is_zero())
      throw inconsistent_data_error("monodromy: not a chain map at degree " + std::to_string(deg));
  }
  CohomPresentation sp = cohomology_at(src.cx, i);
  CohomPresentation dp = cohomology_at(dst.cx, i + 2);
  IntMat nu = monodromy_chain_map(data, i, j);
  IntMat out(static_cast<int>(dp.rank), static_cast<int>(sp.rank));
  for (long a = 0; a < sp.rank; ++a) {
    std::vector<Int> lift(sp.ambient_dim);
    for (int t = 0; t < sp.ambient_dim; ++t) lift[t] = sp.basis_lifts.at(t, static_cast<int>(a));
    auto coords = dp.free_coords(nu.apply(lift));
    for (long b = 0; b < dp.rank; ++b) out.at(static_cast<int>(b), static_cast<int>(a)) = coords[b];
  }
  return out;
}

// N^i : T_{j+i}^{-i} tensor Q -> T_j^i tensor Q should be bijective for
// i >= 0.  The report carries rank deficits instead of throwing.
inline CheckReport verify_n_isogeny(const StratumChow& data, int i, int j) {
  CheckReport rep;
  if (i < 0) {
    rep.add("n-isogeny", false, "negative power requested");
    return rep;
  }
  long src_rank = t_group(data, -i, j + i).rank;
  long dst_rank = t_group(data, i, j).rank;
  IntMat total = IntMat::identity(static_cast<int>(src_rank));
  for (int s = 0; s < i; ++s) {
    IntMat step = monodromy_matrix(data, -i + 2 * s, j + i - s);
    total = step * total;
  }
  std::string shape = std::to_string(src_rank) + " -> " + std::to_string(dst_rank);
  if (src_rank != dst_rank) {
    rep.add("n-isogeny", false, "rank mismatch " + shape);
    return rep;
  }
  int r = rank(total);
  if (r != src_rank)
    rep.add("n-isogeny", false,
            "rank deficit: rank " + std::to_string(r) + " of " + std::to_string(src_rank));
  else
    rep.add("n-isogeny", true, "bijective on " + shape);
  return rep;
}

namespace detail {
// pairing of chain vectors x in C_j^i, y in C_{d-j}^{-i}: sum over blocks
// of (-1)^k x_k . I . y_{k-i}
inline Int chain_pair(const StratumChow& data, int i, const TTerm& xt, const std::vector<Int>& x,
                      const TTerm& yt, const std::vector<Int>& y) {
  Int acc(0);
  for (const auto& bx : xt.blocks) {
    const TBlock* by = find_block(yt, bx.k - i);
    if (!by) continue;
    if (by->level != bx.level) continue;
    IntMat form = data.intersection_form(bx.level, bx.codim);
    if (form.rows() != bx.rank || form.cols() != by->rank)
      throw inconsistent_data_error("pairing: missing or misshapen intersection form at level " +
                                    std::to_string(bx.level));
    Int s(0);
    for (int a = 0; a < bx.rank; ++a)
      for (int b = 0; b < by->rank; ++b) s += x[bx.offset + a] * form.at(a, b) * y[by->offset + b];
    acc += (bx.k % 2 == 0) ? s : -s;
  }
  return acc;
}

inline std::vector<Int> lift_col(const CohomPresentation& p, long idx) {
  std::vector<Int> v(p.ambient_dim);
  for (int t = 0; t < p.ambient_dim; ++t) v[t] = p.basis_lifts.at(t, static_cast<int>(idx));
  return v;
}
}  // namespace detail

// Pairing matrix T_j^i x T_{d-j}^{-i} -> Z on free-part bases.  Verifies
// that the pairing kills image-against-kernel on both sides and that
// (N x, y) = -(x, N y) whenever the adjacent groups are present.
inline IntMat t_pairing(const StratumChow& data, int i, int j) {
  int d = data.dim;
  TComplex ca = build_complex(data, j);
  TComplex cb = build_complex(data, d - j);
  CohomPresentation pa = cohomology_at(ca.cx, i);
  CohomPresentation pb = cohomology_at(cb.cx, -i);
  TTerm ta = ca.term(i) ? *ca.term(i) : TTerm{};
  TTerm tb = cb.term(-i) ? *cb.term(-i) : TTerm{};
  IntMat out(static_cast<int>(pa.rank), static_cast<int>(pb.rank));
  for (long a = 0; a < pa.rank; ++a)
    for (long b = 0; b < pb.rank; ++b)
      out.at(static_cast<int>(a), static_cast<int>(b)) =
          detail::chain_pair(data, i, ta, detail::lift_col(pa, a), tb, detail::lift_col(pb, b));

  // descent: the pairing of any incoming boundary with any kernel vector is 0
  IntMat din_a = ca.cx.d_at(i - 1);
  if (din_a.rows() == ta.dim) {
    for (int c = 0; c < din_a.cols(); ++c)
      for (int kcol = 0; kcol < pb.kernel.cols(); ++kcol)
        if (detail::chain_pair(data, i, ta, din_a.col(c), tb, pb.kernel.col(kcol)) != 0)
          throw inconsistent_data_error("pairing does not descend to cohomology (left side)");
  }
  IntMat din_b = cb.cx.d_at(-i - 1);
  if (din_b.rows() == tb.dim) {
    for (int c = 0; c < din_b.cols(); ++c)
      for (int kcol = 0; kcol < pa.kernel.cols(); ++kcol)
        if (detail::chain_pair(data, i, ta, pa.kernel.col(kcol), tb, din_b.col(c)) != 0)
          throw inconsistent_data_error("pairing does not descend to cohomology (right side)");
  }

  // (N x, y') = -(x, N y') against T_{d-j+1}^{-i-2}
  long adj_rank = t_group(data, -i - 2, d - j + 1).rank;
  if (adj_rank > 0 && pa.rank > 0) {
    IntMat na = monodromy_matrix(data, i, j);              // T_j^i -> T_{j-1}^{i+2}
    IntMat nb = monodromy_matrix(data, -i - 2, d - j + 1); // adj -> T_{d-j}^{-i}
    TComplex ca2 = build_complex(data, j - 1);
    TComplex cb2 = build_complex(data, d - j + 1);
    CohomPresentation pa2 = cohomology_at(ca2.cx, i + 2);
    CohomPresentation pb2 = cohomology_at(cb2.cx, -i - 2);
    TTerm ta2 = ca2.term(i + 2) ? *ca2.term(i + 2) : TTerm{};
    TTerm tb2 = cb2.term(-i - 2) ? *cb2.term(-i - 2) : TTerm{};
    IntMat pprime(static_cast<int>(pa2.rank), static_cast<int>(pb2.rank));
    for (long a = 0; a < pa2.rank; ++a)
      for (long b = 0; b < pb2.rank; ++b)
        pprime.at(static_cast<int>(a), static_cast<int>(b)) = detail::chain_pair(
            data, i + 2, ta2, detail::lift_col(pa2, a), tb2, detail::lift_col(pb2, b));
    IntMat lhs = na.transpose() * pprime;  // (N x_a, y'_b)
    IntMat rhs = out * nb;                 // (x_a, N y'_b)
    if (!(lhs + rhs).is_zero())
      throw inconsistent_data_error("pairing does not satisfy (Nx,y) = -(x,Ny)");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Curves: the stratum data generated from a dual graph.  Components are
// lines indexed by vertices, double points are indexed by edges, and all
// Chow groups are Z via degree.  Deletion position 1 is the tail of the
// edge, position 2 the head.

inline StratumChow chow_from_graph(const Graph& g) {
  StratumChow data;
  data.dim = 1;
  data.levels = 2;
  int nv = g.num_vertices(), ne = g.num_edges();
  data.ranks[{1, 0}] = nv;
  data.ranks[{1, 1}] = nv;
  data.ranks[{2, 0}] = ne;
  IntMat pull1(ne, nv), pull2(ne, nv);  // rho_r^*: CH^0(Y^(1)) -> CH^0(Y^(2))
  IntMat push1(nv, ne), push2(nv, ne);  // rho_{r*}: CH^0(Y^(2)) -> CH^1(Y^(1))
  for (int e = 0; e < ne; ++e) {
    pull1.at(e, g.edges[e].head) = 1;
    pull2.at(e, g.edges[e].tail) = 1;
    push1.at(g.edges[e].head, e) = 1;
    push2.at(g.edges[e].tail, e) = 1;
  }
  data.pullback[{1, 0, 1}] = pull1;
  data.pullback[{1, 0, 2}] = pull2;
  data.pushforward[{1, 0, 1}] = push1;
  data.pushforward[{1, 0, 2}] = push2;
  data.intersection[{1, 0}] = IntMat::identity(nv);  // CH^0 x CH^1, degree
  data.intersection[{1, 1}] = IntMat::identity(nv);
  data.intersection[{2, 0}] = IntMat::identity(ne);  // points
  return data;
}

/**
 * The curve package: T_1^{-1}, T_0^1, the monodromy between them and
 * their pairing, together with the change-of-basis matrices onto the
 * graph-side harmonic basis and spanning-tree H^1 coordinates.
 * harmonic_change expresses the T_1^{-1} basis lifts in the harmonic
 * basis; h1_change expresses the T_0^1 basis classes in tree coordinates.
 */
struct CurveTData {
  StratumChow chow;
  TGroupPresentation t_harmonic;  // T_1^{-1}
  TGroupPresentation t_h1;        // T_0^1
  IntMat n_matrix;
  IntMat pairing;
  IntMat harmonic_change;  // g x g: column a = harmonic-basis coordinates of lift a
  IntMat h1_change;        // g x g: column b = tree coordinates of class b
};

inline CurveTData curve_t_from_graph(const Graph& g) {
  if (g.num_components() != 1) throw std::invalid_argument("curve_t_from_graph: graph must be connected");
  CurveTData out;
  out.chow = chow_from_graph(g);
  out.t_harmonic = t_group(out.chow, -1, 1);
  out.t_h1 = t_group(out.chow, 1, 0);
  out.n_matrix = monodromy_matrix(out.chow, -1, 1);
  out.pairing = t_pairing(out.chow, -1, 1);

  auto hb = harmonic_basis(g);
  int rg = static_cast<int>(hb.size());
  if (out.t_harmonic.rank != rg || out.t_h1.rank != h1_rank(g))
    throw inconsistent_data_error("curve_t_from_graph: ranks disagree with graph cohomology");
  IntMat hmat(g.num_edges(), rg);
  for (int j = 0; j < rg; ++j)
    for (int e = 0; e < g.num_edges(); ++e) hmat.at(e, j) = hb[j][e];
  out.harmonic_change = IntMat(rg, rg);
  for (long a = 0; a < out.t_harmonic.rank; ++a) {
    auto x = solve(hmat, detail::lift_col(out.t_harmonic.pres, a));
    if (!x) throw inconsistent_data_error("curve_t_from_graph: T_1^{-1} lift outside harmonic lattice");
    for (int t = 0; t < rg; ++t) out.harmonic_change.at(t, static_cast<int>(a)) = (*x)[t];
  }
  ZAdd z;
  out.h1_change = IntMat(h1_rank(g), static_cast<int>(out.t_h1.rank));
  for (long b = 0; b < out.t_h1.rank; ++b) {
    auto cls = h1_class(z, g, detail::lift_col(out.t_h1.pres, b));
    for (size_t t = 0; t < cls.coords.size(); ++t)
      out.h1_change.at(static_cast<int>(t), static_cast<int>(b)) = cls.coords[t];
  }
  return out;
}

// Graph-side counterparts of the curve package, on the harmonic basis and
// the spanning-tree coordinates.
inline IntMat graph_monodromy_matrix(const Graph& g) {
  ZAdd z;
  auto hb = harmonic_basis(g);
  IntMat m(h1_rank(g), static_cast<int>(hb.size()));
  for (size_t j = 0; j < hb.size(); ++j) {
    auto cls = harmonic_to_h1(z, g, hb[j]);
    for (size_t t = 0; t < cls.coords.size(); ++t)
      m.at(static_cast<int>(t), static_cast<int>(j)) = cls.coords[t];
  }
  return m;
}

inline IntMat graph_cycle_pairing(const Graph& g) {
  auto hb = harmonic_basis(g);
  int n = static_cast<int>(hb.size());
  IntMat gram(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) gram.at(a, b) = cochain_pairing(hb[a], hb[b]);
  return gram;
}

// Pairing of the harmonic basis against the tree-coordinate basis of H^1.
inline IntMat graph_harmonic_h1_matrix(const Graph& g) {
  auto hb = harmonic_basis(g);
  SpanningTree tree = spanning_tree(g);
  IntMat m(static_cast<int>(hb.size()), static_cast<int>(tree.nontree_edges.size()));
  for (size_t a = 0; a < hb.size(); ++a)
    for (size_t b = 0; b < tree.nontree_edges.size(); ++b)
      m.at(static_cast<int>(a), static_cast<int>(b)) = hb[a][tree.nontree_edges[b]];
  return m;
}

// Checks that the stratum pipeline on a curve reproduces the graph-side
// groups, monodromy and pairing exactly, through the explicit
// change-of-basis matrices of curve_t_from_graph.
inline CheckReport verify_curve_graph_match(const Graph& g, const std::string& label) {
  CheckReport rep;
  CurveTData cd = curve_t_from_graph(g);
  auto hb = harmonic_basis(g);
  bool ranks_ok = cd.t_harmonic.rank == static_cast<long>(hb.size()) &&
                  cd.t_h1.rank == h1_rank(g) && cd.t_harmonic.torsion.empty() &&
                  cd.t_h1.torsion.empty();
  rep.add("curve-match " + label + " groups", ranks_ok,
          "rank " + std::to_string(cd.t_harmonic.rank));
  auto det_pm1 = [](const IntMat& m) {
    if (m.rows() != m.cols()) return false;
    auto d = snf(m).diag();
    for (const auto& x : d)
      if (x != 1) return false;
    return static_cast<int>(d.size()) == m.rows();
  };
  rep.add("curve-match " + label + " bases", det_pm1(cd.harmonic_change) && det_pm1(cd.h1_change),
          "change of basis unimodular");
  IntMat lhs = graph_monodromy_matrix(g) * cd.harmonic_change;
  IntMat rhs = cd.h1_change * cd.n_matrix;
  rep.add("curve-match " + label + " monodromy", lhs == rhs, "");
  // pairing: P_T = S^T P_graph U with P_graph on (harmonic, tree) bases
  IntMat pg = graph_harmonic_h1_matrix(g);
  IntMat want = cd.harmonic_change.transpose() * pg * cd.h1_change;
  rep.add("curve-match " + label + " pairing", want == cd.pairing, "");
  return rep;
}

// ---------------------------------------------------------------------------
// Cone cohomology.  The twist-r cone complex has degree-m term
// C_r^m (+) C_{r-1}^{m+1} with differential (a, b) -> (da, Na - db); its
// degree k+1-2r cohomology over Q computes the combinatorial Deligne
// group in degree k+1 and twist r.

struct ConeCohomology {
  int k = 0, r = 0;
  long dim = 0;       // Q-dimension
  IntMat basis;       // representative cone vectors, ambient x dim
  int amb_a = 0;      // leading C_r^m summand size within the ambient
};

inline ConeCohomology consani_deligne(const StratumChow& data, int k, int r) {
  TComplex a = build_complex(data, r);
  TComplex b = build_complex(data, r - 1);
  // degree window covering both complexes
  int lo = std::min(a.cx.degmin, b.cx.degmin) - 2;
  int hi = std::max(a.cx.degmin + static_cast<int>(a.cx.dims.size()),
                    b.cx.degmin + static_cast<int>(b.cx.dims.size())) + 2;
  ChainComplex cone;
  cone.degmin = lo;
  for (int m = lo; m <= hi; ++m) cone.dims.push_back(a.cx.dim_at(m) + b.cx.dim_at(m + 1));
  for (int m = lo; m < hi; ++m) {
    int rows = cone.dims[m + 1 - lo], cols = cone.dims[m - lo];
    IntMat d(rows, cols);
    IntMat da = a.cx.d_at(m);
    detail::paste(d, da, 0, 0);
    IntMat nu = monodromy_chain_map(data, m, r);  // C_r^m -> C_{r-1}^{m+2}
    detail::paste(d, nu, a.cx.dim_at(m + 1), 0);
    IntMat db = b.cx.d_at(m + 1);
    IntMat negdb(db.rows(), db.cols());
    for (int rr = 0; rr < db.rows(); ++rr)
      for (int cc = 0; cc < db.cols(); ++cc) negdb.at(rr, cc) = -db.at(rr, cc);
    detail::paste(d, negdb, a.cx.dim_at(m + 1), a.cx.dim_at(m));
    cone.d.push_back(d);
  }
  cone.verify_dd("cone complex r=" + std::to_string(r));
  CohomPresentation pres = cohomology_at(cone, k + 1 - 2 * r);
  ConeCohomology out;
  out.k = k;
  out.r = r;
  out.dim = pres.rank;
  out.basis = pres.basis_lifts;
  out.amb_a = a.cx.dim_at(k + 1 - 2 * r);
  return out;
}

// Rank bookkeeping of the long exact sequence around degree k+1:
// dim H = dim coker(N: T_r^{k-2r} -> T_{r-1}^{k+2-2r}) +
//         dim ker(N: T_r^{k+1-2r} -> T_{r-1}^{k+3-2r}), over Q.
inline CheckReport consani_les_check(const StratumChow& data, int k, int r) {
  CheckReport rep;
  std::string name = "consani-les k=" + std::to_string(k) + " r=" + std::to_string(r);
  long h = consani_deligne(data, k, r).dim;
  IntMat n0 = monodromy_matrix(data, k - 2 * r, r);
  IntMat n1 = monodromy_matrix(data, k + 1 - 2 * r, r);
  long coker = n0.rows() - rank(n0);
  long ker = n1.cols() - rank(n1);
  bool ok = (h == coker + ker);
  rep.add(name, ok,
          "dim " + std::to_string(h) + " = coker " + std::to_string(coker) + " + ker " + std::to_string(ker));
  return rep;
}

}  // namespace toric
