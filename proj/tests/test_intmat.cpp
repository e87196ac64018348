#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "toric/intmat.hpp"

using namespace toric;

namespace {

IntMat from_rows(const std::vector<std::vector<long>>& rows) {
  IntMat m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
  return m;
}

// Bareiss fraction-free determinant, independent of the SNF path.
Int det(IntMat m) {
  REQUIRE(m.rows() == m.cols());
  int n = m.rows();
  Int prev(1), sign(1);
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) { swap = i; break; }
      if (swap < 0) return Int(0);
      for (int c = 0; c < n; ++c) std::swap(m.at(k, c), m.at(swap, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

IntMat random_mat(std::mt19937& gen, int rows, int cols, int lim) {
  std::uniform_int_distribution<int> d(-lim, lim);
  IntMat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.at(r, c) = d(gen);
  return m;
}

}  // namespace

TEST_CASE("snf decomposition properties") {
  std::mt19937 gen(987);
  for (int iter = 0; iter < 40; ++iter) {
    std::uniform_int_distribution<int> dim(1, 6);
    IntMat a = random_mat(gen, dim(gen), dim(gen), 9);
    SnfResult r = snf(a);
    CHECK(r.u * a * r.v == r.s);
    CHECK(abs(det(r.u)) == 1);
    CHECK(abs(det(r.v)) == 1);
    auto d = r.diag();
    for (size_t i = 0; i + 1 < d.size(); ++i) {
      CHECK(d[i] > 0);
      CHECK(d[i + 1] % d[i] == 0);
    }
    for (int i = 0; i < r.s.rows(); ++i)
      for (int j = 0; j < r.s.cols(); ++j)
        if (i != j) CHECK(r.s.at(i, j) == 0);
  }
}

TEST_CASE("snf of a known matrix") {
  // 2x2 [[2,4],[6,8]]: invariant factors 2, 4 (det -16, gcd 2)
  IntMat a = from_rows({{2, 4}, {6, 8}});
  auto d = snf(a).diag();
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 2);
  CHECK(d[1] == 4);
}

TEST_CASE("kernel basis generates the solution lattice") {
  std::mt19937 gen(55);
  for (int iter = 0; iter < 30; ++iter) {
    IntMat a = random_mat(gen, 3, 5, 6);
    IntMat k = kernel_basis(a);
    CHECK(k.cols() >= 2);  // rank <= 3
    CHECK((a * k).is_zero());
    // random kernel lattice element is an integer combination of the basis
    std::uniform_int_distribution<int> d(-4, 4);
    std::vector<Int> combo(k.cols());
    for (auto& x : combo) x = d(gen);
    auto w = k.apply(combo);
    auto back = solve(k, w);
    REQUIRE(back.has_value());
    CHECK(k.apply(*back) == w);
  }
}

TEST_CASE("integer solve") {
  IntMat a = from_rows({{2, 0}, {0, 3}});
  auto x = solve(a, {Int(4), Int(9)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 3);
  CHECK_FALSE(solve(a, {Int(1), Int(1)}).has_value());
}

TEST_CASE("column echelon form") {
  std::mt19937 gen(77);
  for (int iter = 0; iter < 30; ++iter) {
    IntMat a = random_mat(gen, 4, 3, 7);
    ColEchelon ce = col_echelon(a);
    CHECK(a * ce.u == ce.h);
    CHECK(abs(det(ce.u)) == 1);
    // pivots positive, rows above each pivot zero in that column
    for (size_t j = 0; j < ce.pivot_rows.size(); ++j) {
      int pr = ce.pivot_rows[j];
      CHECK(ce.h.at(pr, static_cast<int>(j)) > 0);
      for (int r = 0; r < pr; ++r) CHECK(ce.h.at(r, static_cast<int>(j)) == 0);
      if (j > 0) CHECK(ce.pivot_rows[j] > ce.pivot_rows[j - 1]);
    }
    // columns beyond the pivots are zero
    for (int j = static_cast<int>(ce.pivot_rows.size()); j < ce.h.cols(); ++j)
      for (int r = 0; r < ce.h.rows(); ++r) CHECK(ce.h.at(r, j) == 0);
  }
}
