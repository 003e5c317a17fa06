#pragma once

// Exact integer / rational arithmetic and integer matrix normal forms.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

using Int = mpz_class;
using IntVector = std::vector<Int>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by complete_to_basis when the vectors span a non-saturated sublattice.
class NotCompletable : public Error {
 public:
  using Error::Error;
};

std::strong_ordering compare(const Int& a, const Int& b);

/// Rational number kept in lowest terms with a positive denominator.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rat(const Int& n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rat(Int n, Int d);

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  int sign() const { return sgn(num_); }

  /// Largest integer not larger than the value.
  Int floor() const;
  Int ceil() const;
  /// Value minus its floor, in [0, 1).
  Rat frac() const;

  Rat operator-() const;
  Rat& operator+=(const Rat& o);
  Rat& operator-=(const Rat& o);
  Rat& operator*=(const Rat& o);
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b);

  std::string str() const;

 private:
  Int num_;
  Int den_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

using RatVector = std::vector<Rat>;

Int floor_rat(const Rat& x);

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  IntMatrix transpose() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, const IntVector& v);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// A = U * S * V with U, V unimodular and S diagonal with d_1 | d_2 | ...
/// The inverses of U and V are carried along since every consumer needs them.
struct SmithDecomposition {
  IntMatrix U, S, V;
  IntMatrix U_inv, V_inv;

  std::size_t rank() const;
  /// Diagonal of S, length min(rows, cols).
  IntVector invariants() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

Int gcd_of(const IntVector& v);
bool is_primitive(const IntVector& v);
/// v divided by the gcd of its entries; zero stays zero.
IntVector primitive_part(const IntVector& v);

Int dot(const IntVector& a, const IntVector& b);
Rat dot(const IntVector& a, const RatVector& b);
Rat dot(const RatVector& a, const RatVector& b);

Int determinant(const IntMatrix& a);
std::size_t matrix_rank(const IntMatrix& a);

/// Integral solution of A x = b, if any.
std::optional<IntVector> lattice_membership(const IntMatrix& a, const IntVector& b);

/// Integer basis of { x : A x = 0 } (columns of the returned matrix).
IntMatrix integer_kernel(const IntMatrix& a);

/// Z^rows / image(A), with the columns of A as relation generators.
struct AbelianGroupPresentation {
  std::size_t free_rank = 0;
  IntVector torsion_factors;
  /// (free_rank + #torsion) x ambient; torsion rows are read modulo their factor.
  IntMatrix projection;

  /// Coordinates of an ambient vector: free part exact, torsion residues in [0, d).
  IntVector project(const IntVector& x) const;
  std::size_t ambient_rank() const { return projection.cols(); }
};

AbelianGroupPresentation cokernel(const IntMatrix& a);

/// Unimodular n x n matrix whose leading columns are `vs`.
IntMatrix complete_to_basis(const std::vector<IntVector>& vs, std::size_t n);

/// Inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& a);

/// Rational solution of A x = b (any one), if the system is consistent.
std::optional<RatVector> rational_solve(const std::vector<RatVector>& rows, const RatVector& rhs,
                                        std::size_t unknowns);

Int lcm(const Int& a, const Int& b);

std::string to_string(const Int& v);

}  // namespace toric
