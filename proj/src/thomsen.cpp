#include "toric/thomsen.hpp"

namespace toric {

TDivisor divisor_floor(const Fan& f, const RatVector& u, const QDivisor& d) {
  if (u.size() != f.rank())
    throw Error("divisor_floor: u has dimension " + std::to_string(u.size()) + ", fan rank is " +
                std::to_string(f.rank()));
  TDivisor out;
  for (RayId id : f.active_rays()) out.set(id, floor_rat(dot(f.ray(id), u) + d.coeff(id)));
  return out;
}

Int FrobeniusDecomposition::total() const {
  Int s = 0;
  for (const auto& [c, k] : multiplicities) s += k;
  return s;
}

namespace {

void require_smooth(const Fan& f, const char* what) {
  if (!is_smooth(f)) throw NotSmooth(std::string(what) + " requires a smooth fan");
}

void require_positive(const Int& m) {
  if (m < 1) throw Error("m must be a positive integer");
}

// Odometer over {0..m-1}^k.
template <class F>
void for_each_cube_point(std::size_t k, const Int& m, F&& visit) {
  std::vector<Int> x(k, Int(0));
  while (true) {
    visit(static_cast<const std::vector<Int>&>(x));
    std::size_t i = 0;
    for (; i < k; ++i) {
      if (++x[i] < m) break;
      x[i] = 0;
    }
    if (i == k) return;
  }
}

}  // namespace

void for_each_grid_point(std::size_t n, const Int& m, const std::function<void(const RatVector&)>& visit) {
  require_positive(m);
  RatVector u(n);
  for_each_cube_point(n, m, [&](const std::vector<Int>& x) {
    // Reverse so the first coordinate varies slowest.
    for (std::size_t i = 0; i < n; ++i) u[i] = Rat(x[n - 1 - i], m);
    visit(u);
  });
}

FrobeniusDecomposition frobenius_cube(const Fan& f, const Int& m, const TDivisor& l) {
  require_positive(m);
  require_smooth(f, "frobenius_cube");
  ClassGroup g(f);
  const auto& ids = g.ray_ids();
  FrobeniusDecomposition out{m, l, {}};
  for_each_cube_point(ids.size(), m, [&](const std::vector<Int>& x) {
    TDivisor e = l;
    for (std::size_t i = 0; i < ids.size(); ++i) e.add(ids[i], -x[i]);
    for (auto& y : divide_class(g, g.class_of(e), m)) out.multiplicities[y] += 1;
  });
  return out;
}

FrobeniusDecomposition frobenius_lattice(const Fan& f, const Int& m, const QDivisor& d) {
  require_positive(m);
  std::vector<IntVector> rows;
  for (RayId id : f.active_rays()) rows.push_back(f.ray(id));
  if (matrix_rank(IntMatrix::from_rows(rows, f.rank())) != f.rank())
    throw RaysDoNotSpan("the rays of the fan do not span the ambient space");
  FrobeniusDecomposition out{m, d.scaled_to_integral(m), {}};
  ClassGroup g(f);
  for_each_grid_point(f.rank(), m, [&](const RatVector& u) {
    out.multiplicities[g.class_of(divisor_floor(f, u, d))] += 1;
  });
  return out;
}

namespace {

// Grid scan in machine integers: with u = x/m and m*c_i = a_i integral, the floor on ray
// i is floor((v_i.x + a_i)/m) and the class is the image of that coefficient vector.
std::optional<std::set<DivClass>> floor_classes_fast(const Fan& f, const ClassGroup& g,
                                                     const QDivisor& d, const Int& m) {
  const Int limit = Int(1) << 40;
  if (m > limit) return std::nullopt;
  const auto& ids = g.ray_ids();
  const std::size_t n = f.rank(), k = ids.size();
  const auto& pres = g.presentation();
  const std::size_t rows = pres.projection.rows();
  std::vector<std::vector<long>> ray(k, std::vector<long>(n)), proj(rows, std::vector<long>(k));
  std::vector<long> shift(k), mods(rows, 0);
  for (std::size_t i = 0; i < k; ++i) {
    Rat a = Rat(m) * d.coeff(ids[i]);
    if (!a.is_integer() || abs(a.num()) > limit) return std::nullopt;
    shift[i] = a.num().get_si();
    for (std::size_t j = 0; j < n; ++j) {
      if (abs(f.ray(ids[i])[j]) > 1000) return std::nullopt;
      ray[i][j] = f.ray(ids[i])[j].get_si();
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < k; ++i) {
      if (abs(pres.projection(r, i)) > 1000) return std::nullopt;
      proj[r][i] = pres.projection(r, i).get_si();
    }
    if (r >= pres.free_rank) mods[r] = pres.torsion_factors[r - pres.free_rank].get_si();
  }
  const long mm = m.get_si();
  auto fdiv = [](long a, long b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); };
  std::set<std::vector<long>> seen;
  std::vector<long> x(n, 0), coef(k), cls(rows);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) {
      long s = shift[i];
      for (std::size_t j = 0; j < n; ++j) s += ray[i][j] * x[j];
      coef[i] = fdiv(s, mm);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      long s = 0;
      for (std::size_t i = 0; i < k; ++i) s += proj[r][i] * coef[i];
      if (mods[r]) s = ((s % mods[r]) + mods[r]) % mods[r];
      cls[r] = s;
    }
    seen.insert(cls);
    std::size_t j = 0;
    for (; j < n; ++j) {
      if (++x[j] < mm) break;
      x[j] = 0;
    }
    if (j == n) break;
  }
  std::set<DivClass> out;
  for (const auto& c : seen) {
    DivClass dc;
    for (std::size_t r = 0; r < rows; ++r) (r < pres.free_rank ? dc.free : dc.torsion).emplace_back(c[r]);
    out.insert(std::move(dc));
  }
  return out;
}

}  // namespace

std::set<DivClass> floor_classes(const Fan& f, const ClassGroup& g, const QDivisor& d, const Int& m) {
  require_positive(m);
  if (auto fast = floor_classes_fast(f, g, d, m)) return *fast;
  std::set<DivClass> out;
  for_each_grid_point(f.rank(), m,
                      [&](const RatVector& u) { out.insert(g.class_of(divisor_floor(f, u, d))); });
  return out;
}

namespace {

Int minor_lcm(const std::vector<IntVector>& rows, std::size_t n, std::size_t r) {
  Int acc = 1;
  const std::size_t k = rows.size();
  // All r-subsets of rows and of columns; sizes here are tiny.
  auto subsets = [](std::size_t total, std::size_t size) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      if (cur.size() == size) {
        out.push_back(cur);
        return;
      }
      for (std::size_t i = start; i < total; ++i) {
        cur.push_back(i);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(0);
    return out;
  };
  for (const auto& rs : subsets(k, r))
    for (const auto& cs : subsets(n, r)) {
      IntMatrix m(r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) m(i, j) = rows[rs[i]][cs[j]];
      Int det = determinant(m);
      if (det != 0) acc = lcm(acc, abs(det));
    }
  return acc;
}

}  // namespace

Int stabilization_base(const Fan& f, const QDivisor& d) {
  std::vector<IntVector> rows;
  for (RayId id : f.active_rays()) rows.push_back(f.ray(id));
  Int base = d.denominator();
  if (rows.empty()) return base;
  // Pass to coordinates in which the kernel of the ray matrix is a coordinate subspace.
  IntMatrix v = IntMatrix::from_rows(rows, f.rank());
  SmithDecomposition snf = smith_normal_form(v);
  const std::size_t r = snf.rank();
  if (r == 0) return base;
  IntMatrix w = v * snf.V_inv;
  std::vector<IntVector> reduced;
  for (std::size_t i = 0; i < w.rows(); ++i) {
    IntVector row = w.row(i);
    row.resize(r);
    reduced.push_back(std::move(row));
  }
  base = lcm(base, minor_lcm(reduced, r, r));
  // Cell vertices lie on the 1/base grid; barycenters of up to r+1 of them need the rest.
  for (long j = 2; j <= static_cast<long>(r) + 1; ++j) base = lcm(base, Int(j));
  return base;
}

ThomsenCollection thomsen_collection(const Fan& f, const QDivisor& d, const ThomsenOptions& opt) {
  require_smooth(f, "thomsen_collection");
  ClassGroup g(f);
  Int m = stabilization_base(f, d);
  auto over_cap = [&](const Int& x) { return opt.max_m && x > *opt.max_m; };
  if (over_cap(m))
    throw NoStabilization("stabilization base " + m.get_str() + " exceeds the cap " + opt.max_m->get_str());
  std::set<DivClass> prev = floor_classes(f, g, d, m);
  for (int round = 0; round < opt.rounds; ++round) {
    Int next = 2 * m;
    if (over_cap(next)) break;
    std::set<DivClass> cur = floor_classes(f, g, d, next);
    if (cur == prev) return ThomsenCollection{std::move(cur), m, {m, next}};
    prev = std::move(cur);
    m = next;
  }
  throw NoStabilization("class sets did not stabilize by m = " + m.get_str());
}

}  // namespace toric
