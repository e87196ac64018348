#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "toric/graph.hpp"

using namespace toric;

namespace {
Cochain1<Int> zvec(std::initializer_list<long> xs) {
  Cochain1<Int> v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}
}  // namespace

TEST_CASE("coboundary") {
  ZAdd z;
  Graph path;
  path.vertex_ids = {"v1", "v2"};
  path.edges = {{0, 1, "e1"}};
  CHECK(coboundary(z, path, {Int(1), Int(0)}) == zvec({1}));
  CHECK(coboundary(z, path, {Int(3), Int(3)}) == zvec({0}));

  Graph tri = Graph::cycle(3);  // edges v1->v2, v2->v3, v3->v1
  CHECK(coboundary(z, tri, {Int(0), Int(1), Int(2)}) == zvec({-1, -1, 2}));
}

TEST_CASE("dual coboundary") {
  ZAdd z;
  Graph c4 = Graph::cycle(4);
  auto d = dual_coboundary(z, c4, zvec({1, 1, 1, 1}));
  for (const auto& x : d) CHECK(x == 0);

  Graph path;
  path.vertex_ids = {"v1", "v2"};
  path.edges = {{0, 1, "e1"}};
  auto d2 = dual_coboundary(z, path, zvec({1}));
  CHECK(d2[0] == 1);
  CHECK(d2[1] == -1);

  auto d3 = dual_coboundary(z, Graph::theta(), zvec({1, 2, -3}));
  CHECK(d3[0] == 0);
  CHECK(d3[1] == 0);
}

TEST_CASE("harmonic basis") {
  auto b3 = harmonic_basis(Graph::cycle(3));
  REQUIRE(b3.size() == 1);
  CHECK(b3[0] == zvec({1, 1, 1}));

  Graph tree;
  tree.vertex_ids = {"v1", "v2", "v3"};
  tree.edges = {{0, 1, "e1"}, {0, 2, "e2"}};
  CHECK(harmonic_basis(tree).empty());

  auto bt = harmonic_basis(Graph::theta());
  REQUIRE(bt.size() == 2);
  // basis spans the lattice generated by (1,-1,0) and (0,1,-1)
  IntMat lat(3, 4);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 3; ++i) lat.at(i, j) = bt[j][i];
  lat.at(0, 2) = 1; lat.at(1, 2) = -1;
  lat.at(1, 3) = 1; lat.at(2, 3) = -1;
  auto d = snf(lat).diag();
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 1);
  CHECK(d[1] == 1);
}

TEST_CASE("h1 class normal form") {
  ZAdd z;
  Graph c3 = Graph::cycle(3);
  // any coboundary is the zero class
  auto df = coboundary(z, c3, {Int(4), Int(-1), Int(2)});
  for (const auto& x : h1_class(z, c3, df).coords) CHECK(x == 0);
  // single-edge cochain on a cycle generates
  for (int n : {2, 3, 5}) {
    Graph cn = Graph::cycle(n);
    Cochain1<Int> c(n, Int(0));
    c[n - 1] = 1;
    auto cls = h1_class(z, cn, c);
    REQUIRE(cls.coords.size() == 1);
    CHECK(abs(cls.coords[0]) == 1);
  }
  // constant 1 on C_3 is 3 x generator
  auto cls3 = h1_class(z, c3, zvec({1, 1, 1}));
  REQUIRE(cls3.coords.size() == 1);
  CHECK(abs(cls3.coords[0]) == 3);
}

TEST_CASE("harmonic to h1") {
  ZAdd z;
  for (int n : {1, 2, 4}) {
    Graph cn = Graph::cycle(n);
    auto cls = harmonic_to_h1(z, cn, Cochain1<Int>(n, Int(1)));
    REQUIRE(cls.coords.size() == 1);
    CHECK(abs(cls.coords[0]) == n);
  }
  auto zero_cls = harmonic_to_h1(z, Graph::theta(), zvec({0, 0, 0}));
  for (const auto& x : zero_cls.coords) CHECK(x == 0);
  // non-harmonic input is rejected
  CHECK_THROWS_AS(harmonic_to_h1(z, Graph::theta(), zvec({1, 0, 0})), std::invalid_argument);
  // theta graph: tree clearing sends (1,-1,0) to coordinates (-2,-1)
  auto cls = harmonic_to_h1(z, Graph::theta(), zvec({1, -1, 0}));
  CHECK(cls.coords == std::vector<Int>{Int(-2), Int(-1)});
}

TEST_CASE("cochain pairing") {
  CHECK(cochain_pairing(zvec({1, 1, 1}), zvec({1, 1, 1})) == 3);
  CHECK(cochain_pairing(zvec({5, -2, 7}), zvec({0, 0, 0})) == 0);
  // harmonic against coboundary vanishes
  ZAdd z;
  auto& gen = testutil::rng();
  std::uniform_int_distribution<long> d(-5, 5);
  for (int iter = 0; iter < 20; ++iter) {
    Graph g = testutil::random_connected_multigraph(gen);
    Cochain0<Int> f;
    for (int v = 0; v < g.num_vertices(); ++v) f.push_back(Int(d(gen)));
    auto df = coboundary(z, g, f);
    for (const auto& h : harmonic_basis(g)) CHECK(cochain_pairing(h, df) == 0);
  }
}

TEST_CASE("harmonic h1 pairing") {
  ZAdd z;
  Graph c3 = Graph::cycle(3);
  Cochain1<Int> c(3, Int(0));
  c[2] = 1;
  CHECK(abs(harmonic_h1_pairing(z, c3, zvec({1, 1, 1}), h1_class(z, c3, c))) == 1);
  CHECK(harmonic_h1_pairing(z, c3, zvec({0, 0, 0}), h1_class(z, c3, c)) == 0);
  CHECK(harmonic_h1_pairing(z, Graph::theta(), zvec({1, -1, 0}), h1_class(z, Graph::theta(), zvec({1, 0, 0}))) == 1);
  // independence of representative: shift by a coboundary
  auto& gen = testutil::rng();
  std::uniform_int_distribution<long> d(-4, 4);
  for (int iter = 0; iter < 20; ++iter) {
    Graph g = testutil::random_connected_multigraph(gen);
    auto hb = harmonic_basis(g);
    if (hb.empty()) continue;
    Cochain1<Int> cc;
    for (int e = 0; e < g.num_edges(); ++e) cc.push_back(Int(d(gen)));
    Cochain0<Int> f;
    for (int v = 0; v < g.num_vertices(); ++v) f.push_back(Int(d(gen)));
    auto df = coboundary(z, g, f);
    Cochain1<Int> shifted = cc;
    for (int e = 0; e < g.num_edges(); ++e) shifted[e] += df[e];
    for (const auto& h : hb)
      CHECK(harmonic_h1_pairing(z, g, h, h1_class(z, g, cc)) ==
            harmonic_h1_pairing(z, g, h, h1_class(z, g, shifted)));
  }
}

TEST_CASE("rank formula on random multigraphs") {
  auto& gen = testutil::rng();
  ZAdd z;
  for (int iter = 0; iter < 25; ++iter) {
    Graph g = testutil::random_connected_multigraph(gen);
    int expected = g.num_edges() - g.num_vertices() + g.num_components();
    CHECK(h1_rank(g) == expected);
    auto hb = harmonic_basis(g);
    // harmonic -> H^1 over Q is bijective: the matrix of tree coordinates
    // of the harmonic basis has full rank equal to h1 rank
    IntMat m(expected, static_cast<int>(hb.size()));
    for (size_t j = 0; j < hb.size(); ++j) {
      auto cls = harmonic_to_h1(z, g, hb[j]);
      for (int i = 0; i < expected; ++i) m.at(i, static_cast<int>(j)) = cls.coords[i];
    }
    CHECK(static_cast<int>(hb.size()) == expected);
    CHECK(rank(m) == expected);
  }
}

TEST_CASE("results stable under relabeling") {
  auto& gen = testutil::rng();
  for (int iter = 0; iter < 10; ++iter) {
    Graph g = testutil::random_connected_multigraph(gen);
    // reverse edge storage order and flip each orientation
    Graph h = g;
    std::reverse(h.edges.begin(), h.edges.end());
    for (auto& e : h.edges) std::swap(e.tail, e.head);
    CHECK(h1_rank(g) == h1_rank(h));
    CHECK(harmonic_basis(g).size() == harmonic_basis(h).size());
  }
}

TEST_CASE("multiplicative coefficients") {
  PadicConfig cfg{5, 8, 2, 16, 64, 5};
  PadicMul gm{cfg};
  Graph c3 = Graph::cycle(3);
  // multiplicative coboundary of f is killed by h1_class exactly
  Cochain0<Padic> f = {Padic::from_rational(2, 1, cfg), Padic::from_rational(3, 7, cfg),
                       Padic::from_rational(10, 1, cfg)};
  auto df = coboundary(gm, c3, f);
  auto cls = h1_class(gm, c3, df);
  for (const auto& x : cls.coords) CHECK(Padic::agree(x, Padic::one(cfg), cfg.precision));
  // mixed pairing: integer cochain against K^x cochain
  Cochain1<Int> c = zvec({1, 2, 0});
  Cochain1<Padic> d = {Padic::from_rational(5, 1, cfg), Padic::from_rational(2, 1, cfg),
                       Padic::from_rational(9, 1, cfg)};
  Padic val = cochain_pairing(gm, c, d);
  CHECK(val == Padic::from_rational(20, 1, cfg));
}
