#pragma once

#include "toric/fan.hpp"

#include <random>

namespace toric::testing {

inline IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline RatVector rv(std::initializer_list<std::pair<long, long>> xs) {
  RatVector v;
  for (auto [n, d] : xs) v.emplace_back(Int(n), Int(d));
  return v;
}

inline Rat q(long n, long d = 1) { return Rat(Int(n), Int(d)); }

inline Fan make_fan(std::size_t rank, std::vector<IntVector> rays,
                    std::vector<std::vector<RayId>> cones) {
  std::vector<Cone> cs;
  for (auto& c : cones) cs.emplace_back(std::move(c));
  return Fan(rank, std::move(rays), std::move(cs));
}

inline Fan fan_p1() { return make_fan(1, {iv({1}), iv({-1})}, {{0}, {1}}); }
inline Fan fan_p2() {
  return make_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}});
}
inline Fan fan_p1xp1() {
  return make_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, 0}), iv({0, -1})},
                  {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}
inline Fan fan_a2() { return make_fan(2, {iv({1, 0}), iv({0, 1})}, {{0, 1}}); }
inline Fan fan_p3() {
  return make_fan(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1}), iv({-1, -1, -1})},
                  {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}
/// Rays (1,0), (1,2) with no 2-cone: class group Z/2.
inline Fan fan_torsion() { return make_fan(2, {iv({1, 0}), iv({1, 2})}, {{0}, {1}}); }
inline Fan fan_f1() {
  return make_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1}), iv({1, 1})},
                  {{0, 3}, {1, 3}, {1, 2}, {0, 2}});
}

inline std::vector<std::pair<std::string, Fan>> standard_fans() {
  return {{"P1", fan_p1()},     {"P2", fan_p2()}, {"P1xP1", fan_p1xp1()},
          {"A2", fan_a2()},     {"P3", fan_p3()}, {"torsion", fan_torsion()}};
}

inline Rat random_rat(std::mt19937_64& rng, long max_num, long max_den) {
  std::uniform_int_distribution<long> num(-max_num, max_num), den(1, max_den);
  return Rat(Int(num(rng)), Int(den(rng)));
}

}  // namespace toric::testing
