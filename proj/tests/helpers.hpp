#pragma once

#include <random>

#include "toric/graph.hpp"
#include "toric/padic.hpp"

// Shared test utilities.  All randomized corpora are generated from this
// fixed seed so failures reproduce exactly.
namespace testutil {

constexpr unsigned kSeed = 20260810u;

inline std::mt19937& rng() {
  static std::mt19937 gen(kSeed);
  return gen;
}

inline toric::Padic random_unit(const toric::PadicConfig& cfg, std::mt19937& gen) {
  std::uniform_int_distribution<long long> d(1, 1 << 30);
  while (true) {
    long long u = d(gen);
    if (u % cfg.prime != 0) return toric::Padic::from_unit(cfg.prime, 0, toric::Int(std::to_string(u)), cfg.precision);
  }
}

inline toric::Padic random_nonzero(const toric::PadicConfig& cfg, std::mt19937& gen, int vmax = 3) {
  std::uniform_int_distribution<long long> dv(-vmax, vmax);
  return random_unit(cfg, gen).shift(dv(gen));
}

// Connected multigraph with at most `max_edges` edges: a random spanning
// tree plus random extra edges (loops and parallels allowed).
inline toric::Graph random_connected_multigraph(std::mt19937& gen, int max_edges = 8) {
  std::uniform_int_distribution<int> dnv(2, 5);
  int nv = dnv(gen);
  toric::Graph g;
  for (int i = 0; i < nv; ++i) g.vertex_ids.push_back("v" + std::to_string(i + 1));
  int k = 0;
  for (int v = 1; v < nv; ++v) {
    std::uniform_int_distribution<int> dp(0, v - 1);
    g.edges.push_back({dp(gen), v, "e" + std::to_string(++k)});
  }
  std::uniform_int_distribution<int> dextra(0, max_edges - (nv - 1));
  int extra = dextra(gen);
  std::uniform_int_distribution<int> dv(0, nv - 1);
  for (int i = 0; i < extra; ++i) {
    int a = dv(gen), b = dv(gen);
    g.edges.push_back({a, b, "e" + std::to_string(++k)});
  }
  return g;
}

}  // namespace testutil
