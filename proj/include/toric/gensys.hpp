#pragma once

// Generating systems: half-space data over an abstract alphabet of prime divisors,
// chamber enumeration over W+, and Koszul generation certificates.

#include "toric/lattice.hpp"

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace toric {

/// Formal integer combination of prime names; zero coefficients are never stored.
using FormalDivisor = std::map<std::string, Int>;

FormalDivisor operator+(const FormalDivisor& a, const FormalDivisor& b);
FormalDivisor operator-(const FormalDivisor& a, const FormalDivisor& b);
FormalDivisor operator-(const FormalDivisor& a);
FormalDivisor formal_sum(const std::set<std::string>& primes);
bool is_effective(const FormalDivisor& d);
std::string to_string(const FormalDivisor& d);

struct SystemItem {
  IntVector normal;  // the half space {w : (normal, w) > 0}
  std::set<std::string> primes;

  friend bool operator==(const SystemItem&, const SystemItem&) = default;
};

struct GeneratingSystem {
  std::size_t dim = 0;
  IntVector wplus;
  std::vector<SystemItem> items;

  friend bool operator==(const GeneratingSystem&, const GeneratingSystem&) = default;
};

class InvalidSystem : public Error {
 public:
  using Error::Error;
};
class DegenerateSlice : public Error {
 public:
  using Error::Error;
};

/// Empty when valid. Normals must be primitive; see also check_system.
std::vector<std::string> validate_system(const GeneratingSystem& gs);
/// Throws InvalidSystem listing every violation.
void check_system(const GeneratingSystem& gs);

/// One character per item: '+', '0' or '-' for the sign of (normal, w).
std::string sign_string(const GeneratingSystem& gs, const RatVector& w);
FormalDivisor divisor_of_signs(const GeneratingSystem& gs, const std::string& signs);
/// D_w: primes of the items containing w.
FormalDivisor divisor_at(const GeneratingSystem& gs, const RatVector& w);
/// Whether some w in the open W+ realizes the sign string (exact LP).
bool realizable(const GeneratingSystem& gs, const std::string& signs, RatVector* witness = nullptr);

struct Chamber {
  std::string signs;
  RatVector witness;
  FormalDivisor divisor;
};

/// Every realizable sign vector on W+, walls included. Clockwise for dim 2,
/// otherwise sorted by sign string.
std::vector<Chamber> chambers(const GeneratingSystem& gs);

// ---------------------------------------------------------------- decomposition

/// The quotient by U = boundary(W+) cap boundary(item) used in dimension > 2.
struct QuotientSplit {
  std::size_t pivot = 0;
  /// Columns span U (dim - 2 of them).
  IntMatrix u_basis;
  /// Items whose boundary contains U, and the rest.
  std::vector<std::size_t> t_items, rest_items;
  /// Dimension-2 system in coordinates w -> ((wplus, w), (pivot normal, w)).
  GeneratingSystem quotient;
};

QuotientSplit quotient_split(const GeneratingSystem& gs, std::size_t pivot);
/// An integral z with quotient coordinates a positive multiple of `wq`.
IntVector lift_quotient_point(const GeneratingSystem& gs, const QuotientSplit& qs, const RatVector& wq);
/// System induced on H = U + span(z), in coordinates (U basis, z). Items whose boundary
/// contains U are left out; items restricting to the same half space are merged.
GeneratingSystem slice_system(const GeneratingSystem& gs, const IntMatrix& u_basis, const IntVector& z);
/// Point of W with slice coordinates `p`.
RatVector slice_to_ambient(const IntMatrix& u_basis, const IntVector& z, const RatVector& p);

// ---------------------------------------------------------------- certificates

struct CertNode {
  enum class Kind { Leaf, Koszul };
  int id = 0;
  Kind kind = Kind::Leaf;
  FormalDivisor target;
  // Leaf
  std::string chamber;
  RatVector witness;
  // Koszul
  FormalDivisor d, e;
  std::vector<int> children;

  friend bool operator==(const CertNode&, const CertNode&) = default;
};

struct GenerationCertificate {
  int root = 0;
  std::vector<CertNode> nodes;

  const CertNode* find(int id) const;
  std::size_t leaf_count() const;
  friend bool operator==(const GenerationCertificate&, const GenerationCertificate&) = default;
};

/// Certificate that O(twist) lies in the subcategory generated by O(twist - D_w).
GenerationCertificate resolve(const GeneratingSystem& gs, const FormalDivisor& twist = {});

/// True when the two primes have disjoint supports.
using DisjointnessOracle = std::function<bool(const std::string&, const std::string&)>;
/// Distinct names are disjoint.
bool names_disjoint(const std::string& a, const std::string& b);

/// Empty when the certificate is valid for the system; otherwise one message per problem.
std::vector<std::string> verify_certificate(const GenerationCertificate& cert, const GeneratingSystem& gs,
                                            const DisjointnessOracle& disjoint = names_disjoint,
                                            const FormalDivisor& twist = {});

}  // namespace toric
