#include "toric/divisor.hpp"

#include <algorithm>
#include <sstream>

namespace toric {

// ---------------------------------------------------------------- TDivisor

TDivisor::TDivisor(std::initializer_list<std::pair<const RayId, long>> init) {
  for (const auto& [id, v] : init) add(id, Int(v));
}

TDivisor::TDivisor(const std::map<RayId, Int>& coeffs) {
  for (const auto& [id, v] : coeffs) add(id, v);
}

Int TDivisor::coeff(RayId id) const {
  auto it = coeffs_.find(id);
  return it == coeffs_.end() ? Int(0) : it->second;
}

void TDivisor::set(RayId id, const Int& value) {
  if (value == 0)
    coeffs_.erase(id);
  else
    coeffs_[id] = value;
}

void TDivisor::add(RayId id, const Int& value) { set(id, coeff(id) + value); }

TDivisor TDivisor::operator-() const {
  TDivisor d;
  for (const auto& [id, v] : coeffs_) d.coeffs_[id] = -v;
  return d;
}

TDivisor& TDivisor::operator+=(const TDivisor& o) {
  for (const auto& [id, v] : o.coeffs_) add(id, v);
  return *this;
}

TDivisor& TDivisor::operator-=(const TDivisor& o) {
  for (const auto& [id, v] : o.coeffs_) add(id, -v);
  return *this;
}

TDivisor operator*(const Int& k, const TDivisor& d) {
  TDivisor out;
  for (const auto& [id, v] : d.coeffs_) out.set(id, k * v);
  return out;
}

std::string to_string(const TDivisor& d) {
  if (d.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [id, v] : d.coeffs()) {
    if (v < 0)
      os << (first ? "-" : " - ");
    else if (!first)
      os << " + ";
    Int a = abs(v);
    if (a != 1) os << a;
    os << 'D' << id;
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const TDivisor& d) { return os << to_string(d); }

// ---------------------------------------------------------------- QDivisor

QDivisor::QDivisor(const std::map<RayId, Rat>& coeffs) {
  for (const auto& [id, v] : coeffs) set(id, v);
}

QDivisor::QDivisor(const TDivisor& d) {
  for (const auto& [id, v] : d.coeffs()) set(id, Rat(v));
}

Rat QDivisor::coeff(RayId id) const {
  auto it = coeffs_.find(id);
  return it == coeffs_.end() ? Rat(0) : it->second;
}

void QDivisor::set(RayId id, const Rat& value) {
  if (value.sign() == 0)
    coeffs_.erase(id);
  else
    coeffs_[id] = value;
}

Int QDivisor::denominator() const {
  Int d = 1;
  for (const auto& [id, v] : coeffs_) d = lcm(d, v.den());
  return d;
}

TDivisor QDivisor::scaled_to_integral(const Int& k) const {
  TDivisor out;
  for (const auto& [id, v] : coeffs_) {
    Rat s = Rat(k) * v;
    if (!s.is_integer())
      throw Error("Q-divisor times " + k.get_str() + " is not integral on ray " + std::to_string(id));
    out.set(id, s.num());
  }
  return out;
}

QDivisor& QDivisor::operator+=(const QDivisor& o) {
  for (const auto& [id, v] : o.coeffs_) set(id, coeff(id) + v);
  return *this;
}

std::string to_string(const QDivisor& d) {
  if (d.coeffs().empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [id, v] : d.coeffs()) {
    os << (first ? "" : " + ") << '(' << v << ")D" << id;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------- DivClass

namespace {

std::strong_ordering compare_vectors(const IntVector& a, const IntVector& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (auto c = compare(a[i], b[i]); c != 0) return c;
  return a.size() <=> b.size();
}

Int mod_positive(const Int& a, const Int& d) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return r;
}

}  // namespace

std::strong_ordering operator<=>(const DivClass& a, const DivClass& b) {
  if (auto c = compare_vectors(a.free, b.free); c != 0) return c;
  return compare_vectors(a.torsion, b.torsion);
}

std::string to_string(const DivClass& c) {
  std::ostringstream os;
  if (c.torsion.empty() && c.free.size() == 1) {
    os << c.free[0];
    return os.str();
  }
  os << '(';
  for (std::size_t i = 0; i < c.free.size(); ++i) os << (i ? "," : "") << c.free[i];
  os << ')';
  if (!c.torsion.empty()) {
    os << "+t[";
    for (std::size_t i = 0; i < c.torsion.size(); ++i) os << (i ? "," : "") << c.torsion[i];
    os << ']';
  }
  return os.str();
}

// ---------------------------------------------------------------- ClassGroup

ClassGroup::ClassGroup(const Fan& f) : ray_ids_(f.active_rays()) {
  std::vector<IntVector> rows;
  for (RayId id : ray_ids_) rows.push_back(f.ray(id));
  relations_ = IntMatrix::from_rows(rows, f.rank());
  pres_ = cokernel(relations_);
}

IntVector ClassGroup::coefficient_vector(const TDivisor& d) const {
  IntVector x(ray_ids_.size());
  for (const auto& [id, v] : d.coeffs()) {
    auto it = std::lower_bound(ray_ids_.begin(), ray_ids_.end(), id);
    if (it == ray_ids_.end() || *it != id)
      throw UnknownRay("divisor is supported on ray " + std::to_string(id) +
                       ", which is not a ray of the fan");
    x[static_cast<std::size_t>(it - ray_ids_.begin())] = v;
  }
  return x;
}

DivClass ClassGroup::reduce(IntVector free, IntVector torsion) const {
  for (std::size_t i = 0; i < torsion.size(); ++i)
    torsion[i] = mod_positive(torsion[i], pres_.torsion_factors[i]);
  return DivClass{std::move(free), std::move(torsion)};
}

DivClass ClassGroup::class_of(const TDivisor& d) const {
  IntVector y = pres_.projection * coefficient_vector(d);
  IntVector free(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(pres_.free_rank));
  IntVector tors(y.begin() + static_cast<std::ptrdiff_t>(pres_.free_rank), y.end());
  return reduce(std::move(free), std::move(tors));
}

DivClass ClassGroup::zero() const {
  return DivClass{IntVector(pres_.free_rank), IntVector(pres_.torsion_factors.size())};
}

DivClass ClassGroup::add(const DivClass& a, const DivClass& b) const {
  IntVector f = a.free, t = a.torsion;
  for (std::size_t i = 0; i < f.size(); ++i) f[i] += b.free[i];
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += b.torsion[i];
  return reduce(std::move(f), std::move(t));
}

DivClass ClassGroup::negate(const DivClass& a) const { return scale(Int(-1), a); }

DivClass ClassGroup::scale(const Int& k, const DivClass& a) const {
  IntVector f = a.free, t = a.torsion;
  for (auto& x : f) x *= k;
  for (auto& x : t) x *= k;
  return reduce(std::move(f), std::move(t));
}

Int ClassGroup::torsion_count(const Int& m) const {
  Int n = 1;
  for (const auto& d : pres_.torsion_factors) n *= gcd(m, d);
  return n;
}

ClassGroup class_group(const Fan& f) { return ClassGroup(f); }

bool linearly_equivalent(const Fan& f, const TDivisor& d, const TDivisor& e) {
  ClassGroup g(f);
  return lattice_membership(g.relations(), g.coefficient_vector(d - e)).has_value();
}

std::vector<DivClass> divide_class(const ClassGroup& g, const DivClass& c, const Int& m) {
  if (m < 1) throw Error("divide_class: m must be positive");
  IntVector free(c.free.size());
  for (std::size_t i = 0; i < free.size(); ++i) {
    if (!mpz_divisible_p(c.free[i].get_mpz_t(), m.get_mpz_t())) return {};
    free[i] = c.free[i] / m;
  }
  // Per torsion factor d: m*y = t (mod d) has gcd(m, d) solutions when gcd | t.
  std::vector<std::vector<Int>> options;
  const auto& factors = g.torsion_factors();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Int& d = factors[i];
    const Int& t = c.torsion[i];
    Int gg = gcd(m, d);
    if (!mpz_divisible_p(t.get_mpz_t(), gg.get_mpz_t())) return {};
    Int step = d / gg;
    Int mm = m / gg, tt = t / gg;
    Int inv = 0;
    if (step != 1) {
      Int mm_mod = mod_positive(mm, step);
      mpz_invert(inv.get_mpz_t(), mm_mod.get_mpz_t(), step.get_mpz_t());
    }
    Int y0 = step == 1 ? Int(0) : mod_positive(tt * inv, step);
    std::vector<Int> sols;
    for (Int k = 0; k < gg; ++k) sols.push_back(y0 + k * step);
    options.push_back(std::move(sols));
  }
  std::vector<DivClass> out{DivClass{free, {}}};
  for (const auto& opts : options) {
    std::vector<DivClass> next;
    for (const auto& partial : out)
      for (const auto& y : opts) {
        DivClass e = partial;
        e.torsion.push_back(y);
        next.push_back(std::move(e));
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace toric
