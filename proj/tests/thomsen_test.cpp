#include "toric/thomsen.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace toric;
using namespace toric::testing;

namespace {

DivClass cls(long x) { return DivClass{iv({x}), {}}; }
const DivClass kT{{}, iv({1})};
const DivClass kZero{{}, iv({0})};

std::map<DivClass, Int> table(std::initializer_list<std::pair<DivClass, long>> xs) {
  std::map<DivClass, Int> out;
  for (const auto& [c, k] : xs) out[c] = k;
  return out;
}

Fan projective_space(std::size_t n) {
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    rays.push_back(e);
  }
  rays.push_back(IntVector(n, Int(-1)));
  std::vector<std::vector<RayId>> cones;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    std::vector<RayId> c;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) c.push_back(static_cast<RayId>(i));
    cones.push_back(c);
  }
  return make_fan(n, rays, cones);
}

}  // namespace

TEST(DivisorFloor, Examples) {
  EXPECT_TRUE(divisor_floor(fan_p2(), {q(0), q(0)}, QDivisor()).is_zero());
  EXPECT_EQ(divisor_floor(fan_p2(), {q(1, 2), q(1, 2)}, QDivisor()), (TDivisor{{2, -1}}));
  QDivisor half(std::map<RayId, Rat>{{0, q(1, 2)}});
  EXPECT_EQ(divisor_floor(fan_p1(), {q(1, 4)}, half), (TDivisor{{1, -1}}));
  EXPECT_THROW(divisor_floor(fan_p1(), {q(0), q(0)}, half), Error);
}

TEST(Frobenius, CubeExamples) {
  EXPECT_EQ(frobenius_cube(fan_p1(), Int(2), {}).multiplicities, table({{cls(-1), 1}, {cls(0), 1}}));
  EXPECT_EQ(frobenius_cube(fan_p2(), Int(1), TDivisor{{0, 2}}).multiplicities, table({{cls(2), 1}}));
  EXPECT_EQ(frobenius_cube(fan_torsion(), Int(2), {}).multiplicities, table({{kZero, 2}, {kT, 2}}));
  EXPECT_THROW(frobenius_cube(make_fan(2, {iv({1, 0}), iv({1, 2})}, {{0, 1}}), Int(2), {}), NotSmooth);
}

TEST(Frobenius, LatticeExamples) {
  EXPECT_EQ(frobenius_lattice(fan_p1(), Int(2), {}).multiplicities, table({{cls(-1), 1}, {cls(0), 1}}));
  EXPECT_EQ(frobenius_lattice(fan_p2(), Int(2), {}).multiplicities, table({{cls(-1), 3}, {cls(0), 1}}));
  EXPECT_EQ(frobenius_lattice(fan_torsion(), Int(2), {}).multiplicities, table({{kZero, 2}, {kT, 2}}));
  Fan line = make_fan(2, {iv({1, 0}), iv({-1, 0})}, {{0}, {1}});
  EXPECT_THROW(frobenius_lattice(line, Int(2), {}), RaysDoNotSpan);
  QDivisor third(std::map<RayId, Rat>{{0, q(1, 3)}});
  EXPECT_THROW(frobenius_lattice(fan_p1(), Int(2), third), Error);
}

TEST(Frobenius, RankIdentityAndOracleEquivalence) {
  for (const auto& [name, f] : standard_fans()) {
    for (long m = 1; m <= 4; ++m) {
      Int mm(m);
      Int expected = 1;
      for (std::size_t i = 0; i < f.rank(); ++i) expected *= mm;
      // c_i in {0, 1/m}, alternating over rays.
      for (int pattern = 0; pattern < 2; ++pattern) {
        QDivisor d;
        for (RayId id : f.active_rays())
          if ((id + pattern) % 2 == 1) d.set(id, Rat(Int(1), mm));
        auto lat = frobenius_lattice(f, mm, d);
        auto cube = frobenius_cube(f, mm, d.scaled_to_integral(mm));
        EXPECT_EQ(lat.total(), expected) << name << " m=" << m;
        EXPECT_EQ(cube.total(), expected) << name << " m=" << m;
        EXPECT_EQ(lat.multiplicities, cube.multiplicities) << name << " m=" << m;
      }
    }
  }
}

TEST(Thomsen, Examples) {
  auto p2 = thomsen_collection(fan_p2(), {});
  EXPECT_EQ(p2.classes, (std::set<DivClass>{cls(0), cls(-1), cls(-2)}));
  EXPECT_EQ(p2.evidence.second, 2 * p2.evidence.first);
  QDivisor half(std::map<RayId, Rat>{{0, q(1, 2)}});
  EXPECT_EQ(thomsen_collection(fan_p1(), half).classes, (std::set<DivClass>{cls(0), cls(-1)}));
}

TEST(Thomsen, ProjectiveSpacesAgainstBruteForce) {
  for (std::size_t n = 1; n <= 3; ++n) {
    Fan f = projective_space(n);
    std::set<DivClass> expected;
    for (long k = 0; k <= static_cast<long>(n); ++k) expected.insert(cls(-k));
    // Brute force: on P^n the class of a divisor is its coefficient sum.
    std::set<DivClass> brute;
    for_each_grid_point(n, Int(12), [&](const RatVector& u) {
      Int s = 0;
      for (RayId id = 0; id <= static_cast<RayId>(n); ++id) s += floor_rat(dot(f.ray(id), u));
      brute.insert(DivClass{{s}, {}});
    });
    EXPECT_EQ(brute, expected);
    EXPECT_EQ(thomsen_collection(f, {}).classes, expected) << "n=" << n;
  }
}

TEST(Thomsen, ShiftProperty) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> k(-3, 3);
  for (const auto& [name, f] : standard_fans()) {
    ClassGroup g(f);
    QDivisor d;
    auto ids = f.active_rays();
    if (!ids.empty()) d.set(ids.back(), q(1, 2));
    auto base = thomsen_collection(f, d);
    for (int t = 0; t < 20; ++t) {
      TDivisor e;
      for (RayId id : ids) e.set(id, Int(k(rng)));
      auto shifted = thomsen_collection(f, d + QDivisor(e));
      std::set<DivClass> expect;
      for (const auto& c : base.classes) expect.insert(g.add(c, g.class_of(e)));
      ASSERT_EQ(shifted.classes, expect) << name;
    }
  }
}

TEST(Thomsen, TranslationInvariance) {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<long> z(-4, 4);
  for (const auto& [name, f] : standard_fans()) {
    QDivisor d;
    for (RayId id : f.active_rays()) d.set(id, q(id % 3, 3));
    for (int t = 0; t < 100; ++t) {
      RatVector u;
      IntVector zz;
      RatVector uz;
      for (std::size_t i = 0; i < f.rank(); ++i) {
        u.push_back(random_rat(rng, 20, 7));
        zz.emplace_back(z(rng));
        uz.push_back(u.back() + Rat(zz.back()));
      }
      ASSERT_TRUE(linearly_equivalent(f, divisor_floor(f, u, d), divisor_floor(f, uz, d))) << name;
    }
  }
}

TEST(Thomsen, MembershipCharacterization) {
  std::mt19937_64 rng(41);
  for (const auto& [name, f] : standard_fans()) {
    ClassGroup g(f);
    QDivisor d;
    for (RayId id : f.active_rays())
      if (id % 2 == 0) d.set(id, q(1, 3));
    auto t = thomsen_collection(f, d);
    // Every collected class is realized on the grid that produced it.
    auto realized = floor_classes(f, g, d, t.m_used);
    EXPECT_EQ(realized, t.classes) << name;
    for (int k = 0; k < 1000; ++k) {
      RatVector u;
      for (std::size_t i = 0; i < f.rank(); ++i) u.push_back(random_rat(rng, 50, 23));
      ASSERT_TRUE(t.contains(g.class_of(divisor_floor(f, u, d)))) << name;
    }
  }
}

TEST(Thomsen, FineCellsAreReached) {
  // The class -2 only appears on grids finer than the minors alone suggest.
  QDivisor d(std::map<RayId, Rat>{{0, q(1, 3)}, {2, q(1, 3)}});
  EXPECT_EQ(thomsen_collection(fan_p2(), d).classes, (std::set<DivClass>{cls(0), cls(-1), cls(-2)}));
  ClassGroup g(fan_p2());
  EXPECT_EQ(floor_classes(fan_p2(), g, d, Int(6)).size(), 2u);
}

TEST(Thomsen, FastScanMatchesExact) {
  for (const auto& [name, f] : standard_fans()) {
    ClassGroup g(f);
    QDivisor d;
    for (RayId id : f.active_rays()) d.set(id, q(id % 2, 2));
    std::set<DivClass> slow;
    for_each_grid_point(f.rank(), Int(4), [&](const RatVector& u) { slow.insert(g.class_of(divisor_floor(f, u, d))); });
    EXPECT_EQ(floor_classes(f, g, d, Int(4)), slow) << name;
  }
}

TEST(Thomsen, BudgetAndCap) {
  ThomsenOptions opt;
  opt.max_m = Int(1);
  EXPECT_THROW(thomsen_collection(fan_p2(), {}, opt), NoStabilization);
  ThomsenOptions none;
  none.rounds = 0;
  EXPECT_THROW(thomsen_collection(fan_p2(), {}, none), NoStabilization);
  EXPECT_EQ(stabilization_base(make_fan(2, {iv({1, 0}), iv({1, 2})}, {{0, 1}}), {}), 6);
  EXPECT_EQ(stabilization_base(fan_p2(), QDivisor(std::map<RayId, Rat>{{0, q(1, 3)}})), 6);
  Fan line = make_fan(2, {iv({1, 0}), iv({-1, 0})}, {{0}, {1}});
  EXPECT_EQ(stabilization_base(line, {}), 2);
}
