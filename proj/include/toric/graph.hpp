#pragma once

#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "toric/intmat.hpp"
#include "toric/padic.hpp"
#include "toric/rational.hpp"

namespace toric {

/**
 * Finite multigraph with oriented edges.
 *
 * Each stored edge is the chosen representative of an {e, -e} pair,
 * oriented tail -> head.  Loops and parallel edges are allowed.  An
 * oriented edge is (index, sign); -e swaps head and tail.
 */
struct Graph {
  struct Edge {
    int tail, head;
    std::string id;
  };
  std::vector<std::string> vertex_ids;
  std::vector<Edge> edges;

  int num_vertices() const { return static_cast<int>(vertex_ids.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  int vertex_index(const std::string& id) const {
    for (int i = 0; i < num_vertices(); ++i)
      if (vertex_ids[i] == id) return i;
    throw std::invalid_argument("graph: unknown vertex " + id);
  }
  int edge_index(const std::string& id) const {
    for (int i = 0; i < num_edges(); ++i)
      if (edges[i].id == id) return i;
    throw std::invalid_argument("graph: unknown edge " + id);
  }

  static Graph cycle(int n) {
    Graph g;
    for (int i = 0; i < n; ++i) g.vertex_ids.push_back("v" + std::to_string(i + 1));
    for (int i = 0; i < n; ++i)
      g.edges.push_back({i, (i + 1) % n, "e" + std::to_string(i + 1)});
    return g;
  }

  static Graph theta() {
    Graph g;
    g.vertex_ids = {"v1", "v2"};
    g.edges = {{0, 1, "e1"}, {0, 1, "e2"}, {0, 1, "e3"}};
    return g;
  }

  static Graph complete(int n) {
    Graph g;
    for (int i = 0; i < n; ++i) g.vertex_ids.push_back("v" + std::to_string(i + 1));
    int k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) g.edges.push_back({i, j, "e" + std::to_string(++k)});
    return g;
  }

  // d*: C^1 -> C^0 as a matrix on the chosen orientation; row v, column e
  // is +1 if v is the tail, -1 if the head, 0 for loops.
  IntMat dual_matrix() const {
    IntMat m(num_vertices(), num_edges());
    for (int e = 0; e < num_edges(); ++e) {
      if (edges[e].tail == edges[e].head) continue;
      m.at(edges[e].tail, e) += 1;
      m.at(edges[e].head, e) -= 1;
    }
    return m;
  }

  // d: C^0 -> C^1; df(e) = f(tail) - f(head).
  IntMat coboundary_matrix() const { return dual_matrix().transpose(); }

  int num_components() const {
    std::vector<int> comp(num_vertices(), -1);
    int nc = 0;
    for (int s = 0; s < num_vertices(); ++s) {
      if (comp[s] >= 0) continue;
      comp[s] = nc;
      std::queue<int> q;
      q.push(s);
      while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (const auto& e : edges) {
          int w = -1;
          if (e.tail == v) w = e.head;
          else if (e.head == v) w = e.tail;
          if (w >= 0 && comp[w] < 0) {
            comp[w] = nc;
            q.push(w);
          }
        }
      }
      ++nc;
    }
    return nc;
  }
};

// BFS spanning forest rooted at the least vertex index of each component.
// Deterministic: vertices dequeued in order, edges scanned in storage order.
struct SpanningTree {
  std::vector<bool> in_tree;       // per edge
  std::vector<int> parent_edge;    // per vertex, -1 at roots
  std::vector<int> bfs_order;      // vertices in discovery order
  std::vector<int> nontree_edges;  // edge indices, ascending
};

inline SpanningTree spanning_tree(const Graph& g) {
  SpanningTree t;
  t.in_tree.assign(g.num_edges(), false);
  t.parent_edge.assign(g.num_vertices(), -1);
  std::vector<bool> seen(g.num_vertices(), false);
  for (int s = 0; s < g.num_vertices(); ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    t.bfs_order.push_back(s);
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e = 0; e < g.num_edges(); ++e) {
        int w = -1;
        if (g.edges[e].tail == v) w = g.edges[e].head;
        else if (g.edges[e].head == v) w = g.edges[e].tail;
        if (w < 0 || seen[w]) continue;
        seen[w] = true;
        t.in_tree[e] = true;
        t.parent_edge[w] = e;
        t.bfs_order.push_back(w);
        q.push(w);
      }
    }
  }
  for (int e = 0; e < g.num_edges(); ++e)
    if (!t.in_tree[e]) t.nontree_edges.push_back(e);
  return t;
}

// ---------------------------------------------------------------------------
// Coefficient groups.  A trait object supplies the abelian group structure;
// instances may carry state (the p-adic ones need the working precision for
// the identity element).  `pw` is the Z-action.

struct ZAdd {
  using T = Int;
  T id() const { return Int(0); }
  T op(const T& a, const T& b) const { return a + b; }
  T inv(const T& a) const { return -a; }
  T pw(const T& a, const Int& n) const { return a * n; }
  bool eq(const T& a, const T& b) const { return a == b; }
};

struct QAdd {
  using T = Rat;
  T id() const { return Rat(0); }
  T op(const T& a, const T& b) const { return a + b; }
  T inv(const T& a) const { return -a; }
  T pw(const T& a, const Int& n) const { return a * Rat(n.get_si()); }
  bool eq(const T& a, const T& b) const { return a == b; }
};

// K^x with equality tested to (precision - slack) digits.
struct PadicMul {
  PadicConfig cfg;
  using T = Padic;
  T id() const { return Padic::one(cfg); }
  T op(const T& a, const T& b) const { return a * b; }
  T inv(const T& a) const { return a.inverse(); }
  T pw(const T& a, const Int& n) const { return a.pow(n.get_si()); }
  bool eq(const T& a, const T& b) const { return Padic::agree(a, b, cfg.precision - cfg.slack); }
};

// K additive.
struct PadicAdd {
  PadicConfig cfg;
  using T = Padic;
  T id() const { return Padic::zero(cfg.prime); }
  T op(const T& a, const T& b) const { return a + b; }
  T inv(const T& a) const { return -a; }
  T pw(const T& a, const Int& n) const {
    T r = id();
    T base = n < 0 ? inv(a) : a;
    for (Int k = abs(n); k > 0; --k) r = op(r, base);
    return r;
  }
  bool eq(const T& a, const T& b) const { return Padic::agree(a, b, cfg.precision - cfg.slack); }
};

// A 0-cochain is a value per vertex; a 1-cochain a value per chosen
// oriented edge, with f(-e) = f(e)^{-1} implicit.
template <class T>
using Cochain0 = std::vector<T>;
template <class T>
using Cochain1 = std::vector<T>;

template <class Gr>
Cochain1<typename Gr::T> coboundary(const Gr& gr, const Graph& g, const Cochain0<typename Gr::T>& f) {
  Cochain1<typename Gr::T> out;
  out.reserve(g.num_edges());
  for (const auto& e : g.edges) out.push_back(gr.op(f[e.tail], gr.inv(f[e.head])));
  return out;
}

template <class Gr>
Cochain0<typename Gr::T> dual_coboundary(const Gr& gr, const Graph& g, const Cochain1<typename Gr::T>& c) {
  Cochain0<typename Gr::T> out(g.num_vertices(), gr.id());
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edges[e];
    if (ed.tail == ed.head) continue;  // f(e) + f(-e) = 0
    out[ed.tail] = gr.op(out[ed.tail], c[e]);
    out[ed.head] = gr.op(out[ed.head], gr.inv(c[e]));
  }
  return out;
}

template <class Gr>
bool is_harmonic(const Gr& gr, const Graph& g, const Cochain1<typename Gr::T>& c) {
  auto d = dual_coboundary(gr, g, c);
  for (const auto& x : d)
    if (!gr.eq(x, gr.id())) return false;
  return true;
}

/**
 * Spanning-tree normal form of an H^1 class: the representative vanishing
 * on a fixed BFS tree, stored by its values on the non-tree edges.  Two
 * classes are equal iff their normal forms agree.
 */
template <class T>
struct CohomologyClass {
  std::vector<int> nontree_edges;
  std::vector<T> coords;  // parallel to nontree_edges
};

template <class Gr>
CohomologyClass<typename Gr::T> h1_class(const Gr& gr, const Graph& g, const Cochain1<typename Gr::T>& c) {
  using T = typename Gr::T;
  SpanningTree t = spanning_tree(g);
  // potential f with (c - df) = 0 on tree edges, built outward from roots
  Cochain0<T> f(g.num_vertices(), gr.id());
  for (int v : t.bfs_order) {
    int e = t.parent_edge[v];
    if (e < 0) continue;
    const auto& ed = g.edges[e];
    // df(e) = f(tail) - f(head) must equal c(e)
    if (ed.head == v) f[v] = gr.op(gr.inv(c[e]), f[ed.tail]);
    else f[v] = gr.op(c[e], f[ed.head]);
  }
  auto df = coboundary(gr, g, f);
  CohomologyClass<T> cls;
  cls.nontree_edges = t.nontree_edges;
  for (int e : t.nontree_edges) cls.coords.push_back(gr.op(c[e], gr.inv(df[e])));
  return cls;
}

template <class Gr>
bool class_eq(const Gr& gr, const CohomologyClass<typename Gr::T>& a, const CohomologyClass<typename Gr::T>& b) {
  if (a.nontree_edges != b.nontree_edges) return false;
  for (size_t i = 0; i < a.coords.size(); ++i)
    if (!gr.eq(a.coords[i], b.coords[i])) return false;
  return true;
}

// The class of a harmonic cochain (over Q this map is an isomorphism).
template <class Gr>
CohomologyClass<typename Gr::T> harmonic_to_h1(const Gr& gr, const Graph& g, const Cochain1<typename Gr::T>& h) {
  if (!is_harmonic(gr, g, h)) throw std::invalid_argument("harmonic_to_h1: cochain is not harmonic");
  return h1_class(gr, g, h);
}

// Z-basis of the harmonic cochains ker d*, by integer kernel of the dual
// matrix.  Basis vectors are sign-normalized so the first nonzero entry is
// positive.
inline std::vector<Cochain1<Int>> harmonic_basis(const Graph& g) {
  IntMat ker = kernel_basis(g.dual_matrix());
  std::vector<Cochain1<Int>> basis;
  for (int j = 0; j < ker.cols(); ++j) {
    Cochain1<Int> h = ker.col(j);
    for (const auto& x : h) {
      if (x == 0) continue;
      if (x < 0)
        for (auto& y : h) y = -y;
      break;
    }
    basis.push_back(h);
  }
  return basis;
}

// Sum over unoriented edges of c(e) d(e); orientation independent.
template <class Gr>
typename Gr::T cochain_pairing(const Gr& gr, const Cochain1<Int>& c, const Cochain1<typename Gr::T>& d) {
  if (c.size() != d.size()) throw std::invalid_argument("cochain_pairing: size mismatch");
  typename Gr::T acc = gr.id();
  for (size_t e = 0; e < c.size(); ++e) acc = gr.op(acc, gr.pw(d[e], c[e]));
  return acc;
}

inline Int cochain_pairing(const Cochain1<Int>& c, const Cochain1<Int>& d) {
  return cochain_pairing(ZAdd{}, c, d);
}

// Pairing of a harmonic cochain with an H^1 class; well defined because
// harmonic cochains annihilate coboundaries.
template <class Gr>
typename Gr::T harmonic_h1_pairing(const Gr& gr, const Graph& g, const Cochain1<Int>& h,
                                   const CohomologyClass<typename Gr::T>& cls) {
  if (!is_harmonic(ZAdd{}, g, h)) throw std::invalid_argument("harmonic_h1_pairing: first argument not harmonic");
  typename Gr::T acc = gr.id();
  for (size_t i = 0; i < cls.nontree_edges.size(); ++i)
    acc = gr.op(acc, gr.pw(cls.coords[i], h[cls.nontree_edges[i]]));
  return acc;
}

// rank of H^1(graph, Z): |E| - |V| + #components (graph H^1 is free).
inline int h1_rank(const Graph& g) {
  return g.num_edges() - g.num_vertices() + g.num_components();
}

}  // namespace toric
