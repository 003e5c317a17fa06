#pragma once

#include "toric/gensys.hpp"

#include "fixtures.hpp"

#include <random>

namespace toric::testing {

inline SystemItem item(std::initializer_list<long> normal, std::initializer_list<std::string> primes) {
  return SystemItem{iv(normal), std::set<std::string>(primes)};
}

inline FormalDivisor fd(std::initializer_list<std::string> names) {
  FormalDivisor out;
  for (const auto& n : names) out[n] += 1;
  return out;
}

/// Walls at 3pi/4, pi/2, pi/4 with both signs, W+ = {y > 0}.
inline GeneratingSystem clockwise_example() {
  return GeneratingSystem{2, iv({0, 1}),
                          {item({-1, -1}, {"A"}), item({1, 1}, {"B"}), item({-1, 0}, {"C"}), item({1, 0}, {"D"}),
                           item({-1, 1}, {"E"}), item({1, -1}, {"F"})}};
}

/// Two x-walls and two y-walls rotating about the coordinate axes, W+ = {z > 0}.
inline GeneratingSystem rotating_example() {
  return GeneratingSystem{3, iv({0, 0, 1}),
                          {item({1, 0, 1}, {"A"}), item({-1, 0, 1}, {"B"}), item({0, 1, 1}, {"C"}),
                           item({0, -1, 1}, {"D"})}};
}

/// Six coordinate-type half spaces, W+ = {z > 0}.
inline GeneratingSystem octant_example() {
  return GeneratingSystem{3, iv({0, 0, 1}),
                          {item({-1, 0, 0}, {"A"}), item({1, 0, 0}, {"B"}), item({0, -1, 0}, {"C"}),
                           item({0, 1, 0}, {"D"}), item({1, 1, -1}, {"E"}), item({-1, -1, 1}, {"F"})}};
}

/// Random valid system: random primitive normals with entries in [-bound, bound].
inline GeneratingSystem random_system(std::mt19937_64& rng, std::size_t dim, std::size_t max_items, long bound) {
  std::uniform_int_distribution<long> e(-bound, bound);
  std::uniform_int_distribution<std::size_t> count(0, max_items);
  GeneratingSystem gs;
  gs.dim = dim;
  do {
    gs.wplus.assign(dim, Int(0));
    for (auto& x : gs.wplus) x = e(rng);
  } while (!is_primitive(gs.wplus));
  std::size_t s = count(rng);
  int name = 0;
  for (int attempts = 0; gs.items.size() < s && attempts < 1000; ++attempts) {
    IntVector n(dim);
    for (auto& x : n) x = e(rng);
    if (!is_primitive(n)) continue;
    GeneratingSystem trial = gs;
    std::set<std::string> primes{"P" + std::to_string(name)};
    if (rng() % 3 == 0) primes.insert("Q" + std::to_string(name));
    trial.items.push_back(SystemItem{n, primes});
    if (!validate_system(trial).empty()) continue;
    gs = std::move(trial);
    ++name;
  }
  return gs;
}

inline RatVector random_point_in_wplus(std::mt19937_64& rng, const GeneratingSystem& gs) {
  while (true) {
    RatVector w;
    for (std::size_t i = 0; i < gs.dim; ++i) w.push_back(random_rat(rng, 30, 7));
    if (dot(gs.wplus, w).sign() > 0) return w;
  }
}

}  // namespace toric::testing
