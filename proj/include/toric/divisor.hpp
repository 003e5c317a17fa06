#pragma once

// Torus-invariant divisors, Q-divisors and the divisor class group.

#include "toric/fan.hpp"

#include <map>
#include <string>
#include <vector>

namespace toric {

/// Integral torus-invariant divisor; zero coefficients are never stored.
class TDivisor {
 public:
  TDivisor() = default;
  TDivisor(std::initializer_list<std::pair<const RayId, long>> init);
  explicit TDivisor(const std::map<RayId, Int>& coeffs);

  Int coeff(RayId id) const;
  void set(RayId id, const Int& value);
  void add(RayId id, const Int& value);
  const std::map<RayId, Int>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  TDivisor operator-() const;
  TDivisor& operator+=(const TDivisor& o);
  TDivisor& operator-=(const TDivisor& o);
  friend TDivisor operator+(TDivisor a, const TDivisor& b) { return a += b; }
  friend TDivisor operator-(TDivisor a, const TDivisor& b) { return a -= b; }
  friend TDivisor operator*(const Int& k, const TDivisor& d);
  friend bool operator==(const TDivisor&, const TDivisor&) = default;

 private:
  std::map<RayId, Int> coeffs_;
};

std::string to_string(const TDivisor& d);
std::ostream& operator<<(std::ostream& os, const TDivisor& d);

class QDivisor {
 public:
  QDivisor() = default;
  explicit QDivisor(const std::map<RayId, Rat>& coeffs);
  explicit QDivisor(const TDivisor& d);

  Rat coeff(RayId id) const;
  void set(RayId id, const Rat& value);
  const std::map<RayId, Rat>& coeffs() const { return coeffs_; }

  /// Lcm of the coefficient denominators.
  Int denominator() const;
  bool is_integral() const { return denominator() == 1; }
  /// k * D, which must be integral.
  TDivisor scaled_to_integral(const Int& k) const;

  QDivisor& operator+=(const QDivisor& o);
  friend QDivisor operator+(QDivisor a, const QDivisor& b) { return a += b; }
  friend bool operator==(const QDivisor&, const QDivisor&) = default;

 private:
  std::map<RayId, Rat> coeffs_;
};

std::string to_string(const QDivisor& d);

/// Element of the class group: free coordinates plus torsion residues in [0, d).
struct DivClass {
  IntVector free;
  IntVector torsion;

  friend bool operator==(const DivClass&, const DivClass&) = default;
  friend std::strong_ordering operator<=>(const DivClass& a, const DivClass& b);
};

std::string to_string(const DivClass& c);

/// Cokernel of M -> Z^{rays}, u -> ((v_i, u))_i, over the active rays of a fan.
class ClassGroup {
 public:
  ClassGroup() = default;
  explicit ClassGroup(const Fan& f);

  const AbelianGroupPresentation& presentation() const { return pres_; }
  std::size_t free_rank() const { return pres_.free_rank; }
  const IntVector& torsion_factors() const { return pres_.torsion_factors; }
  const std::vector<RayId>& ray_ids() const { return ray_ids_; }
  /// Relation matrix: rows indexed by active rays, columns by lattice coordinates.
  const IntMatrix& relations() const { return relations_; }

  /// Coefficient vector over the active rays; throws UnknownRay for other support.
  IntVector coefficient_vector(const TDivisor& d) const;
  DivClass class_of(const TDivisor& d) const;

  DivClass zero() const;
  DivClass add(const DivClass& a, const DivClass& b) const;
  DivClass negate(const DivClass& a) const;
  DivClass scale(const Int& k, const DivClass& a) const;
  /// Number of elements y with m*y = 0.
  Int torsion_count(const Int& m) const;

 private:
  DivClass reduce(IntVector free, IntVector torsion) const;

  std::vector<RayId> ray_ids_;
  IntMatrix relations_;
  AbelianGroupPresentation pres_;
};

ClassGroup class_group(const Fan& f);

/// D ~ E, decided by integral solvability of the ray pairing system.
bool linearly_equivalent(const Fan& f, const TDivisor& d, const TDivisor& e);

/// All y with m*y = c, sorted; empty when c is not divisible by m.
std::vector<DivClass> divide_class(const ClassGroup& g, const DivClass& c, const Int& m);

}  // namespace toric
