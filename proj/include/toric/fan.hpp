#pragma once

// Simplicial fans: validation, faces and stars, smoothness/completeness,
// orbit-closure quotient fans, stellar subdivision and open subfans.

#include "toric/lattice.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace toric {

using RayId = int;

/// A cone of a simplicial fan, identified by the sorted ids of its rays.
struct Cone {
  std::vector<RayId> rays;

  Cone() = default;
  explicit Cone(std::vector<RayId> ids);

  std::size_t dim() const { return rays.size(); }
  bool contains(const Cone& face) const;
  bool has_ray(RayId id) const;

  friend auto operator<=>(const Cone&, const Cone&) = default;
  friend bool operator==(const Cone&, const Cone&) = default;
};

std::string to_string(const Cone& c);

class UnknownCone : public Error {
 public:
  using Error::Error;
};
class UnknownRay : public Error {
 public:
  using Error::Error;
};
class NonSmoothCenter : public Error {
 public:
  using Error::Error;
};
class CenterTooSmall : public Error {
 public:
  using Error::Error;
};

/// A fan in N = Z^rank. Ray ids are positions in `rays()` and stay stable across
/// open restriction; a listed ray need not lie in any cone (it then carries no divisor).
class Fan {
 public:
  Fan() = default;
  /// Cones are sorted and deduplicated; listed cones that are faces of other listed
  /// cones are dropped. No geometric validation happens here (see validate_fan).
  Fan(std::size_t rank, std::vector<IntVector> rays, std::vector<Cone> max_cones);

  std::size_t rank() const { return rank_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const IntVector& ray(RayId id) const;
  std::size_t num_rays() const { return rays_.size(); }
  const std::vector<Cone>& max_cones() const { return max_cones_; }

  /// Face closure of the maximal cones, sorted.
  std::vector<Cone> cones() const;
  bool has_cone(const Cone& c) const;
  /// Rays that lie in at least one cone, ascending.
  std::vector<RayId> active_rays() const;
  bool is_active(RayId id) const;
  bool empty() const { return max_cones_.empty(); }

  /// Generators of a cone as matrix columns.
  IntMatrix generator_matrix(const Cone& c) const;

  friend bool operator==(const Fan&, const Fan&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<IntVector> rays_;
  std::vector<Cone> max_cones_;
};

/// Empty when the fan is valid; otherwise one message per violation.
std::vector<std::string> validate_fan(const Fan& f);

/// All faces of a simplicial cone (every subset of its rays), sorted.
std::vector<Cone> faces(const Cone& c);
/// Cones of the fan admitting `sigma` as a face.
std::vector<Cone> star(const Fan& f, const Cone& sigma);

bool is_smooth_cone(const Fan& f, const Cone& c);
bool is_smooth(const Fan& f);
bool is_complete(const Fan& f);
bool has_codim_ge2_strata(const Fan& f);
bool divisors_intersect(const Fan& f, RayId i, RayId j);

/// Fan of the orbit closure V(sigma) in N / span(sigma).
struct OrbitClosure {
  Fan fan;
  /// Original ray id -> quotient ray id, for rays of star(sigma) outside sigma.
  std::map<RayId, RayId> ray_map;
  /// Index of each quotient ray generator inside the projected original generator.
  std::vector<Int> scales;
  /// Unimodular basis whose leading columns generate sigma; quotient coordinates are
  /// the trailing coordinates in this basis.
  IntMatrix basis;
};

OrbitClosure orbit_closure_fan(const Fan& f, const Cone& sigma);

struct StellarSubdivision {
  Fan fan;
  RayId new_ray = -1;
  /// Old ray id -> ray id in the subdivided fan (identity on old rays).
  std::map<RayId, RayId> provenance;
};

StellarSubdivision stellar_subdivision(const Fan& f, const Cone& sigma);

/// Subfan of all cones not containing any of `removed` as a face.
Fan remove_star(const Fan& f, const std::vector<Cone>& removed);

}  // namespace toric
