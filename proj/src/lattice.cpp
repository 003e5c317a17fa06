#include "toric/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace toric {

std::strong_ordering compare(const Int& a, const Int& b) {
  int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const Int& v) { return v.get_str(); }

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// ---------------------------------------------------------------- Rat

Rat::Rat(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_ == 0) throw Error("Rat: zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  Int g = gcd(num_, den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

Int Rat::floor() const {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  return q;
}

Int Rat::ceil() const {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  return q;
}

Rat Rat::frac() const { return *this - Rat(floor()); }

Rat Rat::operator-() const {
  Rat r = *this;
  r.num_ = -r.num_;
  return r;
}

Rat& Rat::operator+=(const Rat& o) {
  *this = Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  return *this;
}

Rat& Rat::operator-=(const Rat& o) {
  *this = Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  return *this;
}

Rat& Rat::operator*=(const Rat& o) {
  *this = Rat(num_ * o.num_, den_ * o.den_);
  return *this;
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.num_ == 0) throw Error("Rat: division by zero");
  *this = Rat(num_ * o.den_, den_ * o.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
  return compare(a.num_ * b.den_, b.num_ * a.den_);
}

std::string Rat::str() const {
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Int floor_rat(const Rat& x) { return x.floor(); }

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error("IntMatrix: ragged initializer");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw Error("IntMatrix::from_columns: dimension mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error("IntMatrix::from_rows: dimension mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error("IntMatrix: product dimension mismatch");
  IntMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += x * b(k, j);
    }
  return p;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols_ != v.size()) throw Error("IntMatrix: vector dimension mismatch");
  IntVector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
  return out;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << ", ";
    os << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? "," : "") << m(r, c);
    os << ']';
  }
  return os << ']';
}

// ---------------------------------------------------------------- Smith form

namespace {

// Elementary operations on S, mirrored on U, U_inv (rows) and V, V_inv (columns)
// so that A = U * S * V holds throughout.
struct SmithState {
  IntMatrix S, U, U_inv, V, V_inv;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < S.cols(); ++c) std::swap(S(i, c), S(j, c));
    for (std::size_t r = 0; r < U.rows(); ++r) std::swap(U(r, i), U(r, j));
    for (std::size_t c = 0; c < U_inv.cols(); ++c) std::swap(U_inv(i, c), U_inv(j, c));
  }
  // row_i += k * row_j
  void add_row(std::size_t i, std::size_t j, const Int& k) {
    for (std::size_t c = 0; c < S.cols(); ++c) S(i, c) += k * S(j, c);
    for (std::size_t r = 0; r < U.rows(); ++r) U(r, j) -= k * U(r, i);
    for (std::size_t c = 0; c < U_inv.cols(); ++c) U_inv(i, c) += k * U_inv(j, c);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < S.cols(); ++c) S(i, c) = -S(i, c);
    for (std::size_t r = 0; r < U.rows(); ++r) U(r, i) = -U(r, i);
    for (std::size_t c = 0; c < U_inv.cols(); ++c) U_inv(i, c) = -U_inv(i, c);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < S.rows(); ++r) std::swap(S(r, i), S(r, j));
    for (std::size_t c = 0; c < V.cols(); ++c) std::swap(V(i, c), V(j, c));
    for (std::size_t r = 0; r < V_inv.rows(); ++r) std::swap(V_inv(r, i), V_inv(r, j));
  }
  // col_i += k * col_j
  void add_col(std::size_t i, std::size_t j, const Int& k) {
    for (std::size_t r = 0; r < S.rows(); ++r) S(r, i) += k * S(r, j);
    for (std::size_t c = 0; c < V.cols(); ++c) V(j, c) -= k * V(i, c);
    for (std::size_t r = 0; r < V_inv.rows(); ++r) V_inv(r, i) += k * V_inv(r, j);
  }
};

int abs_cmp(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

Int rounded_quotient(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
    if (S(i, i) != 0) ++r;
  return r;
}

IntVector SmithDecomposition::invariants() const {
  IntVector d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithState st{a, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n),
                IntMatrix::identity(n)};
  IntMatrix& S = st.S;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Pivot: minimal absolute value in the trailing block.
    bool found = false;
    std::size_t pr = t, pc = t;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (S(i, j) != 0 && (!found || abs_cmp(S(i, j), S(pr, pc)) < 0)) {
          found = true;
          pr = i;
          pc = j;
        }
    if (!found) break;
    st.swap_rows(t, pr);
    st.swap_cols(t, pc);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i)
        if (S(i, t) != 0) {
          st.add_row(i, t, -rounded_quotient(S(i, t), S(t, t)));
          if (S(i, t) != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (S(t, j) != 0) {
          st.add_col(j, t, -rounded_quotient(S(t, j), S(t, t)));
          if (S(t, j) != 0) clean = false;
        }
      if (!clean) {
        // A remainder is smaller than the pivot: bring the smallest one up and retry.
        std::size_t br = t, bc = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (S(i, t) != 0 && abs_cmp(S(i, t), S(br, bc)) < 0) {
            br = i;
            bc = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(t, j) != 0 && abs_cmp(S(t, j), S(br, bc)) < 0) {
            br = t;
            bc = j;
          }
        st.swap_rows(t, br);
        st.swap_cols(t, bc);
        continue;
      }
      // Row and column are clear; enforce divisibility of the trailing block.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
            st.add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (S(t, t) < 0) st.negate_row(t);
  }
  return SmithDecomposition{std::move(st.U), std::move(st.S), std::move(st.V),
                            std::move(st.U_inv), std::move(st.V_inv)};
}

// ---------------------------------------------------------------- vectors

Int gcd_of(const IntVector& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

bool is_primitive(const IntVector& v) { return gcd_of(v) == 1; }

IntVector primitive_part(const IntVector& v) {
  Int g = gcd_of(v);
  if (g == 0 || g == 1) return v;
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

Int dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw Error("dot: dimension mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const IntVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error("dot: dimension mismatch");
  // Accumulate over the common denominator to avoid repeated reductions.
  Int den = 1;
  for (const auto& x : b) den = lcm(den, x.den());
  Int num = 0;
  for (std::size_t i = 0; i < a.size(); ++i) num += a[i] * b[i].num() * (den / b[i].den());
  return Rat(num, den);
}

Rat dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error("dot: dimension mismatch");
  Rat s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Fraction-free Bareiss elimination.
Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error("determinant: non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::size_t matrix_rank(const IntMatrix& a) { return smith_normal_form(a).rank(); }

std::optional<IntVector> lattice_membership(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw Error("lattice_membership: dimension mismatch");
  SmithDecomposition snf = smith_normal_form(a);
  IntVector y = snf.U_inv * b;
  const std::size_t r = snf.rank();
  IntVector z(a.cols());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < r) {
      if (!mpz_divisible_p(y[i].get_mpz_t(), snf.S(i, i).get_mpz_t())) return std::nullopt;
      z[i] = y[i] / snf.S(i, i);
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V_inv * z;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  SmithDecomposition snf = smith_normal_form(a);
  const std::size_t r = snf.rank(), n = a.cols();
  IntMatrix k(n, n - r);
  for (std::size_t c = r; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i) k(i, c - r) = snf.V_inv(i, c);
  return k;
}

// ---------------------------------------------------------------- cokernel

namespace {

// Row Hermite normal form of a full-row-rank matrix: positive pivots, entries above
// each pivot reduced into [0, pivot).
IntMatrix row_hermite(IntMatrix h) {
  const std::size_t m = h.rows(), n = h.cols();
  auto add_row = [&](std::size_t i, std::size_t j, const Int& k) {
    for (std::size_t c = 0; c < n; ++c) h(i, c) += k * h(j, c);
  };
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < n; ++c) std::swap(h(i, c), h(j, c));
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (h(i, c) != 0 && (best == m || abs_cmp(h(i, c), h(best, c)) < 0)) best = i;
      if (best == m) break;
      swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i)
        if (h(i, c) != 0) {
          add_row(i, r, -rounded_quotient(h(i, c), h(r, c)));
          if (h(i, c) != 0) done = false;
        }
      if (done) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0)
      for (std::size_t k = 0; k < n; ++k) h(r, k) = -h(r, k);
    for (std::size_t i = 0; i < r; ++i) add_row(i, r, -rounded_quotient(h(i, c), h(r, c)));
    ++r;
  }
  return h;
}

Int mod_positive(const Int& a, const Int& d) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return r;
}

}  // namespace

IntVector AbelianGroupPresentation::project(const IntVector& x) const {
  IntVector y = projection * x;
  for (std::size_t i = 0; i < torsion_factors.size(); ++i) {
    Int& t = y[free_rank + i];
    t = mod_positive(t, torsion_factors[i]);
  }
  return y;
}

AbelianGroupPresentation cokernel(const IntMatrix& a) {
  const std::size_t m = a.rows();
  AbelianGroupPresentation g;
  if (a.cols() == 0) {
    g.free_rank = m;
    g.projection = IntMatrix::identity(m);
    return g;
  }
  SmithDecomposition snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  std::vector<IntVector> free_rows, torsion_rows;
  for (std::size_t i = 0; i < r; ++i) {
    const Int& d = snf.S(i, i);
    if (d == 1) continue;
    g.torsion_factors.push_back(d);
    IntVector row = snf.U_inv.row(i);
    for (auto& x : row) x = mod_positive(x, d);
    torsion_rows.push_back(std::move(row));
  }
  for (std::size_t i = r; i < m; ++i) free_rows.push_back(snf.U_inv.row(i));
  g.free_rank = free_rows.size();

  IntMatrix free_block = row_hermite(IntMatrix::from_rows(free_rows, m));
  g.projection = IntMatrix(g.free_rank + torsion_rows.size(), m);
  for (std::size_t i = 0; i < g.free_rank; ++i)
    for (std::size_t c = 0; c < m; ++c) g.projection(i, c) = free_block(i, c);
  for (std::size_t i = 0; i < torsion_rows.size(); ++i)
    for (std::size_t c = 0; c < m; ++c) g.projection(g.free_rank + i, c) = torsion_rows[i][c];
  return g;
}

// ---------------------------------------------------------------- bases

IntMatrix complete_to_basis(const std::vector<IntVector>& vs, std::size_t n) {
  const std::size_t k = vs.size();
  if (k > n) throw NotCompletable("complete_to_basis: more vectors than the rank");
  if (k == 0) return IntMatrix::identity(n);
  IntMatrix b = IntMatrix::from_columns(vs, n);
  SmithDecomposition snf = smith_normal_form(b);
  if (snf.rank() != k) throw NotCompletable("complete_to_basis: vectors are linearly dependent");
  for (std::size_t i = 0; i < k; ++i)
    if (snf.S(i, i) != 1)
      throw NotCompletable("complete_to_basis: spanned sublattice is not saturated (invariant " +
                           snf.S(i, i).get_str() + ")");
  IntMatrix out(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) out(r, c) = c < k ? b(r, c) : snf.U(r, c);
  return out;
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error("unimodular_inverse: non-square matrix");
  SmithDecomposition snf = smith_normal_form(a);
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (snf.S(i, i) != 1) throw Error("unimodular_inverse: matrix is not unimodular");
  return snf.V_inv * snf.U_inv;
}

std::optional<RatVector> rational_solve(const std::vector<RatVector>& rows, const RatVector& rhs,
                                        std::size_t unknowns) {
  const std::size_t m = rows.size();
  std::vector<RatVector> aug(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != unknowns) throw Error("rational_solve: dimension mismatch");
    aug[i] = rows[i];
    aug[i].push_back(rhs[i]);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < unknowns && r < m; ++c) {
    std::size_t p = r;
    while (p < m && aug[p][c].sign() == 0) ++p;
    if (p == m) continue;
    std::swap(aug[p], aug[r]);
    Rat inv = Rat(1) / aug[r][c];
    for (auto& x : aug[r]) x *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || aug[i][c].sign() == 0) continue;
      Rat f = aug[i][c];
      for (std::size_t k = c; k <= unknowns; ++k) aug[i][k] -= f * aug[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (aug[i][unknowns].sign() != 0) return std::nullopt;
  RatVector x(unknowns);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = aug[i][unknowns];
  return x;
}

}  // namespace toric
