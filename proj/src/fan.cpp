#include "toric/fan.hpp"

#include <algorithm>
#include <sstream>

namespace toric {

Cone::Cone(std::vector<RayId> ids) : rays(std::move(ids)) {
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
}

bool Cone::contains(const Cone& face) const {
  return std::includes(rays.begin(), rays.end(), face.rays.begin(), face.rays.end());
}

bool Cone::has_ray(RayId id) const { return std::binary_search(rays.begin(), rays.end(), id); }

std::string to_string(const Cone& c) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < c.rays.size(); ++i) os << (i ? "," : "") << c.rays[i];
  os << '}';
  return os.str();
}

Fan::Fan(std::size_t rank, std::vector<IntVector> rays, std::vector<Cone> max_cones)
    : rank_(rank), rays_(std::move(rays)) {
  std::sort(max_cones.begin(), max_cones.end());
  max_cones.erase(std::unique(max_cones.begin(), max_cones.end()), max_cones.end());
  for (std::size_t i = 0; i < max_cones.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < max_cones.size() && !dominated; ++j)
      dominated = i != j && max_cones[j].dim() > max_cones[i].dim() &&
                  max_cones[j].contains(max_cones[i]);
    if (!dominated) max_cones_.push_back(max_cones[i]);
  }
}

const IntVector& Fan::ray(RayId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= rays_.size())
    throw UnknownRay("unknown ray id " + std::to_string(id));
  return rays_[static_cast<std::size_t>(id)];
}

std::vector<Cone> Fan::cones() const {
  std::set<Cone> all;
  for (const auto& c : max_cones_)
    for (auto& f : faces(c)) all.insert(std::move(f));
  return {all.begin(), all.end()};
}

bool Fan::has_cone(const Cone& c) const {
  return std::any_of(max_cones_.begin(), max_cones_.end(),
                     [&](const Cone& m) { return m.contains(c); });
}

std::vector<RayId> Fan::active_rays() const {
  std::set<RayId> ids;
  for (const auto& c : max_cones_) ids.insert(c.rays.begin(), c.rays.end());
  return {ids.begin(), ids.end()};
}

bool Fan::is_active(RayId id) const { return has_cone(Cone({id})); }

IntMatrix Fan::generator_matrix(const Cone& c) const {
  std::vector<IntVector> cols;
  for (RayId id : c.rays) cols.push_back(ray(id));
  return IntMatrix::from_columns(cols, rank_);
}

// ---------------------------------------------------------------- validation

namespace {

// True when some nonzero nonnegative combination of the columns vanishes.
// Extreme rays of {a >= 0 : G a = 0} are supported on circuits, so it suffices to look
// for a circuit whose kernel vector is strictly one-signed.
bool has_positive_dependency(const std::vector<IntVector>& gens, std::size_t dim) {
  const std::size_t k = gens.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    std::vector<IntVector> cols;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) cols.push_back(gens[i]);
    if (cols.size() > dim + 1) continue;
    IntMatrix m = IntMatrix::from_columns(cols, dim);
    IntMatrix ker = integer_kernel(m);
    if (ker.cols() != 1) continue;
    int sign = 0;
    bool ok = true;
    for (std::size_t i = 0; i < ker.rows() && ok; ++i) {
      int s = sgn(ker(i, 0));
      if (s == 0 || (sign != 0 && s != sign)) ok = false;
      sign = s;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> validate_fan(const Fan& f) {
  std::vector<std::string> out;
  const std::size_t n = f.rank();
  bool rays_ok = true;
  for (std::size_t i = 0; i < f.num_rays(); ++i) {
    const auto& v = f.rays()[i];
    if (v.size() != n) {
      out.push_back("ray " + std::to_string(i) + ": dimension " + std::to_string(v.size()) +
                    " differs from rank " + std::to_string(n));
      rays_ok = false;
      continue;
    }
    if (!is_primitive(v)) out.push_back("ray " + std::to_string(i) + ": generator is not primitive");
    for (std::size_t j = 0; j < i; ++j)
      if (f.rays()[j] == v)
        out.push_back("rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
  for (const auto& c : f.max_cones())
    for (RayId id : c.rays)
      if (id < 0 || static_cast<std::size_t>(id) >= f.num_rays()) {
        out.push_back("cone " + to_string(c) + ": unknown ray id " + std::to_string(id));
        rays_ok = false;
      }
  if (!rays_ok) return out;

  std::vector<bool> simplicial;
  for (const auto& c : f.max_cones()) {
    bool indep = matrix_rank(f.generator_matrix(c)) == c.dim();
    simplicial.push_back(indep);
    if (indep) continue;
    std::vector<IntVector> gens;
    for (RayId id : c.rays) gens.push_back(f.ray(id));
    if (has_positive_dependency(gens, n))
      out.push_back("cone " + to_string(c) + ": not strictly convex");
    else
      out.push_back("cone " + to_string(c) + ": generators linearly dependent (not simplicial)");
  }

  const auto& mc = f.max_cones();
  for (std::size_t a = 0; a < mc.size(); ++a)
    for (std::size_t b = a + 1; b < mc.size(); ++b) {
      if (!simplicial[a] || !simplicial[b]) continue;
      std::vector<RayId> common;
      std::set_intersection(mc[a].rays.begin(), mc[a].rays.end(), mc[b].rays.begin(),
                            mc[b].rays.end(), std::back_inserter(common));
      // Work modulo span(common): x -> K^T x where K spans the annihilator of common.
      std::vector<IntVector> common_gens;
      for (RayId id : common) common_gens.push_back(f.ray(id));
      IntMatrix proj = IntMatrix::identity(n);
      if (!common_gens.empty())
        proj = integer_kernel(IntMatrix::from_rows(common_gens, n)).transpose();
      std::vector<IntVector> gens;
      for (RayId id : mc[a].rays)
        if (!std::binary_search(common.begin(), common.end(), id)) gens.push_back(proj * f.ray(id));
      for (RayId id : mc[b].rays)
        if (!std::binary_search(common.begin(), common.end(), id)) {
          IntVector w = proj * f.ray(id);
          for (auto& x : w) x = -x;
          gens.push_back(std::move(w));
        }
      if (has_positive_dependency(gens, proj.rows()))
        out.push_back("cones " + to_string(mc[a]) + " and " + to_string(mc[b]) +
                      ": intersection is not a common face");
    }
  return out;
}

// ---------------------------------------------------------------- faces, stars

std::vector<Cone> faces(const Cone& c) {
  std::vector<Cone> out;
  const std::size_t k = c.dim();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<RayId> ids;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) ids.push_back(c.rays[i]);
    out.emplace_back(std::move(ids));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Cone> star(const Fan& f, const Cone& sigma) {
  if (!f.has_cone(sigma)) throw UnknownCone("cone " + to_string(sigma) + " is not in the fan");
  std::vector<Cone> out;
  for (auto& c : f.cones())
    if (c.contains(sigma)) out.push_back(std::move(c));
  return out;
}

bool is_smooth_cone(const Fan& f, const Cone& c) {
  if (c.dim() == 0) return true;
  SmithDecomposition snf = smith_normal_form(f.generator_matrix(c));
  if (snf.rank() != c.dim()) return false;
  for (std::size_t i = 0; i < c.dim(); ++i)
    if (snf.S(i, i) != 1) return false;
  return true;
}

bool is_smooth(const Fan& f) {
  return std::all_of(f.max_cones().begin(), f.max_cones().end(),
                     [&](const Cone& c) { return is_smooth_cone(f, c); });
}

bool is_complete(const Fan& f) {
  if (f.empty()) return false;
  const std::size_t n = f.rank();
  std::map<Cone, int> ridge_count;
  for (const auto& c : f.max_cones()) {
    if (c.dim() != n) return false;
    for (std::size_t i = 0; i < c.dim(); ++i) {
      std::vector<RayId> ids = c.rays;
      ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(i));
      ++ridge_count[Cone(std::move(ids))];
    }
  }
  return std::all_of(ridge_count.begin(), ridge_count.end(),
                     [](const auto& kv) { return kv.second == 2; });
}

bool has_codim_ge2_strata(const Fan& f) {
  return std::any_of(f.max_cones().begin(), f.max_cones().end(),
                     [](const Cone& c) { return c.dim() >= 2; });
}

bool divisors_intersect(const Fan& f, RayId i, RayId j) {
  if (!f.is_active(i)) throw UnknownRay("ray " + std::to_string(i) + " is not a ray of the fan");
  if (!f.is_active(j)) throw UnknownRay("ray " + std::to_string(j) + " is not a ray of the fan");
  return f.has_cone(Cone({i, j}));
}

// ---------------------------------------------------------------- constructions

OrbitClosure orbit_closure_fan(const Fan& f, const Cone& sigma) {
  if (!f.has_cone(sigma)) throw UnknownCone("cone " + to_string(sigma) + " is not in the fan");
  if (!is_smooth_cone(f, sigma))
    throw NonSmoothCenter("cone " + to_string(sigma) + " is not smooth");
  const std::size_t n = f.rank(), k = sigma.dim();
  std::vector<IntVector> gens;
  for (RayId id : sigma.rays) gens.push_back(f.ray(id));

  OrbitClosure oc;
  oc.basis = complete_to_basis(gens, n);
  IntMatrix inv = unimodular_inverse(oc.basis);

  std::vector<Cone> star_max;
  std::set<RayId> star_rays;
  for (const auto& c : f.max_cones())
    if (c.contains(sigma)) {
      star_max.push_back(c);
      for (RayId id : c.rays)
        if (!sigma.has_ray(id)) star_rays.insert(id);
    }

  std::vector<IntVector> qrays;
  for (RayId id : star_rays) {
    IntVector x = inv * f.ray(id);
    IntVector tail(x.begin() + static_cast<std::ptrdiff_t>(k), x.end());
    oc.scales.push_back(gcd_of(tail));
    oc.ray_map[id] = static_cast<RayId>(qrays.size());
    qrays.push_back(primitive_part(tail));
  }
  std::vector<Cone> qcones;
  for (const auto& c : star_max) {
    std::vector<RayId> ids;
    for (RayId id : c.rays)
      if (!sigma.has_ray(id)) ids.push_back(oc.ray_map.at(id));
    qcones.emplace_back(std::move(ids));
  }
  oc.fan = Fan(n - k, std::move(qrays), std::move(qcones));
  return oc;
}

StellarSubdivision stellar_subdivision(const Fan& f, const Cone& sigma) {
  if (!f.has_cone(sigma)) throw UnknownCone("cone " + to_string(sigma) + " is not in the fan");
  if (sigma.dim() < 2)
    throw CenterTooSmall("blow-up center " + to_string(sigma) + " has dimension < 2");
  if (!is_smooth_cone(f, sigma))
    throw NonSmoothCenter("cone " + to_string(sigma) + " is not smooth");

  IntVector v0(f.rank());
  for (RayId id : sigma.rays)
    for (std::size_t i = 0; i < f.rank(); ++i) v0[i] += f.ray(id)[i];

  StellarSubdivision out;
  std::vector<IntVector> rays = f.rays();
  out.new_ray = static_cast<RayId>(rays.size());
  rays.push_back(std::move(v0));

  std::vector<Cone> cones;
  for (const auto& c : f.max_cones()) {
    if (!c.contains(sigma)) {
      cones.push_back(c);
      continue;
    }
    for (RayId drop : sigma.rays) {
      std::vector<RayId> ids;
      for (RayId id : c.rays)
        if (id != drop) ids.push_back(id);
      ids.push_back(out.new_ray);
      cones.emplace_back(std::move(ids));
    }
  }
  for (std::size_t i = 0; i < f.num_rays(); ++i)
    out.provenance[static_cast<RayId>(i)] = static_cast<RayId>(i);
  out.fan = Fan(f.rank(), std::move(rays), std::move(cones));
  return out;
}

Fan remove_star(const Fan& f, const std::vector<Cone>& removed) {
  std::vector<Cone> kept;
  for (auto& c : f.cones()) {
    bool drop = std::any_of(removed.begin(), removed.end(),
                            [&](const Cone& r) { return c.contains(r); });
    if (!drop) kept.push_back(std::move(c));
  }
  return Fan(f.rank(), f.rays(), std::move(kept));
}

}  // namespace toric
