#pragma once

// The blow-up pipeline: coordinate normalization, tracked stellar blow-up, removal of the
// codimension >= 2 strata away from the center, the blow-up floor formula, exact
// one-sided perturbations, and the generating systems they produce.

#include "toric/gensys.hpp"
#include "toric/thomsen.hpp"

#include <optional>

namespace toric {

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};
class DisjointnessFailure : public Error {
 public:
  using Error::Error;
};
class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Raw input: a smooth fan, a smooth center of dimension >= 2 and the Q-divisor
/// c0 * Y + sum c_i D_i on the blow-up.
struct BondalInstance {
  Fan fan;
  Cone sigma;
  Rat c0;
  QDivisor c;
};

/// Unimodular T such that, with new rays T v, sigma's rays (ascending id) become e_1..e_l
/// and no ray projects onto the open ray R>0 (1,...,1) of the first l coordinates.
IntMatrix claim1_normalize(const Fan& f, const Cone& sigma);

/// First-l projection of some ray is a positive multiple of (1,...,1).
bool has_diagonal_projection(const Fan& f, std::size_t l);

struct NormalizedInstance {
  Fan fan;
  Cone sigma;
  std::size_t l = 0;
  Rat c0;
  QDivisor c;
  IntMatrix basis_change;
  /// Integral parts removed from the coefficients (rays of the blown fan; the
  /// exceptional ray under its own id). T(X~, D~) is the normalized collection shifted by this.
  TDivisor shift;
};

NormalizedInstance normalize_instance(const BondalInstance& raw);

struct BlowupData {
  Fan original;
  Fan blown;
  RayId exceptional = -1;
  std::map<RayId, RayId> strict;
};

BlowupData blowup_tracked(const NormalizedInstance& inst);

struct OpenParts {
  Fan x;        // X minus Z
  Fan x_tilde;  // X~ minus the strict transform of Z
  std::vector<Cone> removed;
};

OpenParts z_removal(const NormalizedInstance& inst, const BlowupData& bd);

/// D~_u on X~: floor(u_1 + ... + u_l + c0) on the exceptional ray, floor((v_i,u) + c_i) elsewhere.
TDivisor tilde_divisor_floor(const NormalizedInstance& inst, const BlowupData& bd, const Fan& x_tilde,
                             const RatVector& u);
/// The Q-divisor c0 Y + sum c_i D_i on the blown fan.
QDivisor tilde_qdivisor(const NormalizedInstance& inst, const BlowupData& bd);
TDivisor pullback_divisor(const NormalizedInstance& inst, const BlowupData& bd, const TDivisor& d);
bool verify_eq1(const NormalizedInstance& inst, const BlowupData& bd, const OpenParts& open, const RatVector& u);

/// Limit of D~ at u - eps (w, 0) as eps -> 0+.
TDivisor perturb_symbolic(const NormalizedInstance& inst, const BlowupData& bd, const Fan& x_tilde,
                          const RatVector& u, const RatVector& w);
/// An eps > 0 at which the concrete perturbation agrees with the symbolic limit.
Rat admissible_epsilon(const NormalizedInstance& inst, const BlowupData& bd, const Fan& x_tilde,
                       const RatVector& u, const RatVector& w);
RatVector perturbed_point(const RatVector& u, const RatVector& w, const Rat& eps);

std::string prime_name(RayId id);
FormalDivisor to_formal(const TDivisor& d);
TDivisor from_formal(const FormalDivisor& d);

struct Claim2System {
  GeneratingSystem system;
  /// Rays whose first-l part is a negative multiple of (1,...,1): never positive on W+.
  std::vector<RayId> inert;
};

Claim2System claim2_system(const NormalizedInstance& inst, const BlowupData& bd, const OpenParts& open,
                           const RatVector& u);

struct ChamberCheck {
  std::string signs;
  RatVector witness;
  bool symbolic_ok = false;
  bool concrete_ok = false;
};

struct Claim2Result {
  Claim2System system;
  FormalDivisor twist;
  GenerationCertificate certificate;
  std::vector<std::string> certificate_problems;
  std::vector<ChamberCheck> chambers;
  /// Leaf id -> perturbed point realizing its target.
  std::map<int, RatVector> leaf_points;
  std::size_t leaves_in_collection = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Builds, resolves and checks the generating system at u. If `collection` is given, every
/// leaf class must lie in it.
Claim2Result verify_claim2(const NormalizedInstance& inst, const BlowupData& bd, const OpenParts& open,
                           const RatVector& u, const ThomsenCollection* collection = nullptr);

struct Prop45Witness {
  RayId ray = -1;
  RatVector u, u_prime;
  TDivisor d_u, d_u_prime;
};

struct Prop45Options {
  long max_denominator = 64;
};

/// For each ray, u with (v_i,u)+c_i integral and (v_j,u)+c_j non-integral unless v_j = +-v_i,
/// and a perturbation u' with D_u' = D_u - D_i.
std::vector<Prop45Witness> prop45_witnesses(const Fan& f, const QDivisor& d, const Prop45Options& opt = {});

/// Transport of D (zero on sigma) to the orbit closure of sigma: rays of star(sigma)
/// keep their coefficient, other rays drop out.
TDivisor restrict_class_to_orbit(const Fan& f, const Cone& sigma, const TDivisor& d,
                                 const OrbitClosure& oc);
TDivisor restrict_class_to_orbit(const Fan& f, const Cone& sigma, const TDivisor& d);
/// c'_i = (v_i^1, u^1) + c_i on the quotient rays.
QDivisor induced_qdivisor(const NormalizedInstance& inst, const Fan& f, const OrbitClosure& oc,
                          const RatVector& u1);

// ---------------------------------------------------------------- pipeline

struct Claim2Record {
  RatVector u;
  Int d;
  std::size_t items = 0, chambers = 0, leaves = 0, koszul = 0;
  bool ok = false;
  std::vector<std::string> failures;
};

struct RestrictionRecord {
  RatVector u1;
  Int grid;
  std::set<DivClass> restricted, expected;
  std::size_t prop45_witnesses = 0;
  bool ok = false;
};

struct BondalReport {
  NormalizedInstance instance;
  OpenParts open;
  RayId exceptional = -1;
  Int q;
  std::size_t eq1_checks = 0;
  std::vector<RatVector> eq1_failures;
  std::vector<Claim2Record> claim2;
  std::set<Int> d_window, d_window_expected, claim2_d_values;
  std::vector<RestrictionRecord> restriction;
  ThomsenCollection tilde_collection;

  bool d_window_ok() const { return d_window == d_window_expected; }
  bool ok() const;
};

BondalReport bondal_pipeline(const BondalInstance& raw, const Int& q);

}  // namespace toric
