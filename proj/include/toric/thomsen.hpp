#pragma once

// Floor divisors D_u, Frobenius pushforward decompositions and Thomsen collections.

#include "toric/divisor.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>

namespace toric {

class RaysDoNotSpan : public Error {
 public:
  using Error::Error;
};
class NoStabilization : public Error {
 public:
  using Error::Error;
};
class NotSmooth : public Error {
 public:
  using Error::Error;
};

/// D_u = sum over active rays of floor((v_i, u) + c_i) D_i.
TDivisor divisor_floor(const Fan& f, const RatVector& u, const QDivisor& d);

struct FrobeniusDecomposition {
  Int m;
  TDivisor source;
  std::map<DivClass, Int> multiplicities;

  Int total() const;
  friend bool operator==(const FrobeniusDecomposition&, const FrobeniusDecomposition&) = default;
};

/// Cube count: each l in {0..m-1}^r with [L - sum l_i D_i] divisible by m adds one
/// to every m-th root of that class.
FrobeniusDecomposition frobenius_cube(const Fan& f, const Int& m, const TDivisor& l);

/// Lattice count over u in (1/m)Z^n cap [0,1)^n of the classes [D_u]; requires m*D integral
/// and rays spanning the ambient space.
FrobeniusDecomposition frobenius_lattice(const Fan& f, const Int& m, const QDivisor& d);

/// Calls `visit` for every u in (1/m)Z^n cap [0,1)^n, in lexicographic order of m*u.
void for_each_grid_point(std::size_t n, const Int& m, const std::function<void(const RatVector&)>& visit);

std::set<DivClass> floor_classes(const Fan& f, const ClassGroup& g, const QDivisor& d, const Int& m);

struct ThomsenCollection {
  std::set<DivClass> classes;
  Int m_used;
  std::pair<Int, Int> evidence;

  bool contains(const DivClass& c) const { return classes.count(c) > 0; }
};

/// Lcm of the coefficient denominators, the nonzero maximal minors of the active ray
/// matrix (in coordinates splitting off its kernel) and 1..rank+1. Every cell of the
/// floor arrangement has a point on the grid of this mesh.
Int stabilization_base(const Fan& f, const QDivisor& d);

struct ThomsenOptions {
  int rounds = 6;
  std::optional<Int> max_m;
};

/// Classes of D_u on grids m0 * 2^k, stopping once two consecutive grids agree.
ThomsenCollection thomsen_collection(const Fan& f, const QDivisor& d, const ThomsenOptions& opt = {});

}  // namespace toric
