#include "toric/lattice.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace toric;
using toric::testing::iv;
using toric::testing::q;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// Product of elementary integer row operations; always unimodular.
IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long> k(-3, 3);
  for (int step = 0; step < 8; ++step) {
    std::size_t a = idx(rng), b = idx(rng);
    if (a == b) continue;
    long f = k(rng);
    for (std::size_t j = 0; j < n; ++j) u(a, j) += f * u(b, j);
  }
  return u;
}

bool is_smith_diagonal(const IntMatrix& s) {
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j && s(i, j) != 0) return false;
  std::size_t k = std::min(s.rows(), s.cols());
  for (std::size_t i = 0; i < k; ++i) {
    if (s(i, i) < 0) return false;
    if (i + 1 < k && s(i + 1, i + 1) != 0 &&
        (s(i, i) == 0 || !mpz_divisible_p(s(i + 1, i + 1).get_mpz_t(), s(i, i).get_mpz_t())))
      return false;
    if (i + 1 < k && s(i, i) == 0 && s(i + 1, i + 1) != 0) return false;
  }
  return true;
}

}  // namespace

TEST(Rat, CanonicalForm) {
  Rat r(Int(6), Int(-4));
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rat(Int(0), Int(-7)), Rat(0));
  EXPECT_THROW(Rat(Int(1), Int(0)), Error);
}

TEST(Rat, Floor) {
  EXPECT_EQ(floor_rat(q(3, 2)), 1);
  EXPECT_EQ(floor_rat(q(-3, 2)), -2);
  EXPECT_EQ(floor_rat(q(7)), 7);
  EXPECT_EQ(q(-3, 2).ceil(), -1);
  EXPECT_EQ(q(-3, 2).frac(), q(1, 2));
}

TEST(Rat, NestedFloorIdentity) {
  std::mt19937_64 rng(20240101);
  std::uniform_int_distribution<long> md(1, 50);
  for (int i = 0; i < 10000; ++i) {
    Rat x = toric::testing::random_rat(rng, 1000, 97);
    Int m = md(rng);
    Int inner = floor_rat(Rat(m) * x);
    ASSERT_EQ(floor_rat(Rat(inner) / Rat(m)), floor_rat(x)) << x << " m=" << m;
  }
}

TEST(Smith, Examples) {
  IntMatrix id = IntMatrix::identity(2);
  EXPECT_EQ(smith_normal_form(id).S, id);
  auto d = smith_normal_form(IntMatrix{{1, 0}, {1, 2}});
  EXPECT_EQ(d.S, (IntMatrix{{1, 0}, {0, 2}}));
  IntMatrix z(2, 3);
  EXPECT_EQ(smith_normal_form(z).S, z);
  EXPECT_EQ(smith_normal_form(z).rank(), 0u);
}

TEST(Smith, RoundTripRandom) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> sz(1, 6);
  for (int t = 0; t < 500; ++t) {
    IntMatrix a = random_matrix(rng, sz(rng), sz(rng), 9);
    auto d = smith_normal_form(a);
    ASSERT_EQ(d.U * d.S * d.V, a);
    ASSERT_TRUE(is_smith_diagonal(d.S)) << d.S;
    ASSERT_EQ(abs(determinant(d.U)), 1);
    ASSERT_EQ(abs(determinant(d.V)), 1);
    ASSERT_EQ(d.U * d.U_inv, IntMatrix::identity(a.rows()));
    ASSERT_EQ(d.V * d.V_inv, IntMatrix::identity(a.cols()));
    ASSERT_EQ(d.rank(), matrix_rank(a));
  }
}

TEST(Lattice, Primitive) {
  EXPECT_TRUE(is_primitive(iv({1, 2})));
  EXPECT_FALSE(is_primitive(iv({2, 4})));
  EXPECT_FALSE(is_primitive(iv({0, 0})));
  EXPECT_EQ(primitive_part(iv({-4, 6})), iv({-2, 3}));
}

TEST(Lattice, Membership) {
  IntMatrix a{{1}, {-1}};
  auto x = lattice_membership(a, iv({2, -2}));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, iv({2}));
  EXPECT_FALSE(lattice_membership(a, iv({1, 0})));
  IntMatrix b{{1, 0}, {1, 2}};
  auto y = lattice_membership(b, iv({1, 3}));
  ASSERT_TRUE(y);
  EXPECT_EQ(*y, iv({1, 1}));
  EXPECT_FALSE(lattice_membership(b, iv({1, 2})));
}

TEST(Lattice, MembershipRandom) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> sz(1, 5);
  std::uniform_int_distribution<long> e(-4, 4);
  for (int t = 0; t < 200; ++t) {
    IntMatrix a = random_matrix(rng, sz(rng), sz(rng), 6);
    IntVector x(a.cols());
    for (auto& v : x) v = e(rng);
    IntVector b = a * x;
    auto sol = lattice_membership(a, b);
    ASSERT_TRUE(sol);
    ASSERT_EQ(a * *sol, b);
  }
}

TEST(Lattice, Kernel) {
  IntMatrix a{{1, 1, 1}};
  IntMatrix k = integer_kernel(a);
  EXPECT_EQ(k.cols(), 2u);
  EXPECT_EQ(a * k, IntMatrix(1, 2));
  EXPECT_EQ(integer_kernel(IntMatrix::identity(3)).cols(), 0u);
}

TEST(Cokernel, ProjectivePlane) {
  // Rows: rays of P^2; relations are the columns.
  IntMatrix rel{{1, 0}, {0, 1}, {-1, -1}};
  auto p = cokernel(rel);
  EXPECT_EQ(p.free_rank, 1u);
  EXPECT_TRUE(p.torsion_factors.empty());
  for (int i = 0; i < 3; ++i) {
    IntVector e(3);
    e[static_cast<std::size_t>(i)] = 1;
    EXPECT_EQ(p.project(e), iv({1}));
  }
  EXPECT_EQ(p.projection * rel, IntMatrix(1, 2));
}

TEST(Cokernel, Torsion) {
  auto p = cokernel(IntMatrix{{1, 0}, {1, 2}});
  EXPECT_EQ(p.free_rank, 0u);
  EXPECT_EQ(p.torsion_factors, iv({2}));
  EXPECT_EQ(p.project(iv({1, 0})), iv({1}));
  EXPECT_EQ(p.project(iv({1, 1})), iv({0}));
}

TEST(Cokernel, NoRelations) {
  auto p = cokernel(IntMatrix(3, 0));
  EXPECT_EQ(p.free_rank, 3u);
  EXPECT_EQ(p.project(iv({1, -2, 5})), iv({1, -2, 5}));
}

TEST(Cokernel, InvariantUnderUnimodularChange) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> sz(1, 5);
  for (int t = 0; t < 200; ++t) {
    IntMatrix a = random_matrix(rng, sz(rng), sz(rng), 5);
    auto p = cokernel(a);
    IntMatrix b = random_unimodular(rng, a.rows()) * a * random_unimodular(rng, a.cols());
    auto p2 = cokernel(b);
    ASSERT_EQ(p.free_rank, p2.free_rank);
    ASSERT_EQ(p.torsion_factors, p2.torsion_factors);
    IntMatrix zero(p2.projection.rows(), b.cols());
    for (std::size_t i = 0; i < p2.free_rank; ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) ASSERT_EQ((p2.projection * b)(i, j), 0);
    (void)zero;
    for (std::size_t j = 0; j < b.cols(); ++j) {
      IntVector y = p2.project(b.column(j));
      for (const auto& v : y) ASSERT_EQ(v, 0);
    }
  }
}

TEST(CompleteToBasis, Examples) {
  EXPECT_EQ(complete_to_basis({iv({1, 0})}, 2), IntMatrix::identity(2));
  IntMatrix b = complete_to_basis({iv({1, 2})}, 2);
  EXPECT_EQ(b.column(0), iv({1, 2}));
  EXPECT_EQ(abs(determinant(b)), 1);
  EXPECT_THROW(complete_to_basis({iv({2, 0})}, 2), NotCompletable);
}

TEST(CompleteToBasis, RandomPrimitiveSets) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> sz(1, 5);
  int done = 0;
  for (int t = 0; t < 400; ++t) {
    std::size_t n = sz(rng);
    std::uniform_int_distribution<std::size_t> kd(1, n);
    std::size_t k = kd(rng);
    IntMatrix u = random_unimodular(rng, n) * random_unimodular(rng, n);
    std::vector<IntVector> vs;
    for (std::size_t j = 0; j < k; ++j) vs.push_back(u.column(j));
    IntMatrix b = complete_to_basis(vs, n);
    ASSERT_EQ(abs(determinant(b)), 1);
    for (std::size_t j = 0; j < k; ++j) ASSERT_EQ(b.column(j), vs[j]);
    ASSERT_EQ(b * unimodular_inverse(b), IntMatrix::identity(n));
    ++done;
  }
  EXPECT_EQ(done, 400);
}

TEST(Lattice, RationalSolve) {
  std::vector<RatVector> rows{{q(1), q(1)}, {q(1), q(-1)}};
  auto x = rational_solve(rows, {q(1), q(0)}, 2);
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], q(1, 2));
  EXPECT_EQ((*x)[1], q(1, 2));
  EXPECT_FALSE(rational_solve({{q(1), q(1)}, {q(2), q(2)}}, {q(1), q(3)}, 2));
}

TEST(Lattice, Determinant) {
  EXPECT_EQ(determinant(IntMatrix{{1, 0}, {1, 2}}), 2);
  EXPECT_EQ(determinant(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(determinant(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}), 0);
}
