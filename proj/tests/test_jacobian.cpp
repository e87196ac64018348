#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "toric/jacobian.hpp"

using namespace toric;

static PadicConfig cfg{5, 10, 2, 16, 64, 5};

namespace {
ToricJacobian tate(const Padic& q) { return toric_jacobian(cfg, 1, {{q}}); }
}  // namespace

TEST_CASE("tate reduction") {
  Padic q = Padic::from_rational(25, 1, cfg);
  ToricJacobian j = tate(q);
  // x = p^5 u reduces to valuation 1 with witness 2
  Padic x = Padic::from_rational(3, 1, cfg).shift(5);
  JacElement r = jacobian_reduce(j, {x});
  CHECK(r.x[0].valuation() == 1);
  CHECK(r.witness[0] == 2);
  CHECK(Padic::agree(r.x[0], x * q.pow(-2), cfg.precision));
  // a period reduces to valuation 0
  JacElement rq = jacobian_reduce(j, {q});
  CHECK(rq.x[0].valuation() == 0);
  CHECK(rq.witness[0] == 1);
  // 1 is already reduced
  JacElement r1 = jacobian_reduce(j, {Padic::one(cfg)});
  CHECK(r1.witness[0] == 0);
  CHECK(r1.x[0] == Padic::one(cfg));
  // idempotent
  JacElement rr = jacobian_reduce(j, r.x);
  CHECK(rr.witness[0] == 0);
  CHECK(Padic::agree(rr.x[0], r.x[0], cfg.precision));
}

TEST_CASE("tate equality") {
  Padic q = Padic::from_rational(25, 1, cfg);
  ToricJacobian j = tate(q);
  auto& gen = testutil::rng();
  for (int i = 0; i < 10; ++i) {
    Padic x = testutil::random_nonzero(cfg, gen);
    CHECK(jacobian_equal(j, {x * q}, {x}, 1) == TriState::Equal);
    CHECK(jacobian_equal(j, {x.shift(1)}, {x}, 5) == TriState::Unequal);
  }
  // unit that is not a power of the period unit, bound 0
  Padic u = Padic::from_rational(2, 1, cfg);
  CHECK(jacobian_equal(j, {u}, {Padic::one(cfg)}, 0) == TriState::Unequal);
  // valuations match a lattice point outside the bound
  CHECK(jacobian_equal(j, {q.pow(10)}, {Padic::one(cfg)}, 5) == TriState::Undecided);
}

TEST_CASE("trivial source gives no reduction") {
  ToricJacobian j = toric_jacobian(cfg, 2, {});
  Padic x = Padic::from_rational(7, 1, cfg).shift(1);
  JacElement r = jacobian_reduce(j, {x, Padic::one(cfg)});
  CHECK(r.witness.empty());
  CHECK(Padic::agree(r.x[0], x, cfg.precision));
  auto v = jacobian_valuation(j, {x, Padic::one(cfg)});
  CHECK(v[0] == Rat(1));
  CHECK(v[1] == Rat(0));
}

TEST_CASE("valuation classes") {
  Padic q = Padic::from_rational(25, 1, cfg);
  ToricJacobian j = tate(q);
  auto& gen = testutil::rng();
  // coker(val q) tensor Q = 0: every class is zero
  for (int i = 0; i < 5; ++i) {
    auto v = jacobian_valuation(j, {testutil::random_nonzero(cfg, gen)});
    CHECK(v[0] == Rat(0));
  }
  // rank-2 lattice: valuation invariant under period shifts
  Padic u = Padic::from_rational(2, 1, cfg);
  std::vector<std::vector<Padic>> periods = {{q, u}, {u, q * q}};
  ToricJacobian j2 = toric_jacobian(cfg, 2, periods);
  for (int i = 0; i < 10; ++i) {
    std::vector<Padic> x = {testutil::random_nonzero(cfg, gen), testutil::random_nonzero(cfg, gen)};
    auto v0 = jacobian_valuation(j2, x);
    std::vector<Padic> shifted = {x[0] * periods[0][0].pow(3) * periods[1][0].pow(-2),
                                  x[1] * periods[0][1].pow(3) * periods[1][1].pow(-2)};
    auto v1 = jacobian_valuation(j2, shifted);
    CHECK(v0 == v1);
    // reduce commutes with valuation
    auto red = jacobian_reduce(j2, x);
    CHECK(jacobian_valuation(j2, red.x) == v0);
  }
}

TEST_CASE("degenerate period lattice is rejected") {
  Padic q = Padic::from_rational(25, 1, cfg);
  CHECK_THROWS_AS(toric_jacobian(cfg, 1, {{q}, {q}}), not_reducible_error);
}
