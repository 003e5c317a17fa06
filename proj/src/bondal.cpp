#include "toric/bondal.hpp"

#include <algorithm>

namespace toric {

namespace {

IntVector first_part(const IntVector& v, std::size_t l) { return IntVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(l)); }

Rat sum_first(const RatVector& u, std::size_t l) {
  Rat s;
  for (std::size_t i = 0; i < l; ++i) s += u[i];
  return s;
}

// Candidate basis [gens | e_j ...] using standard vectors when that is already unimodular.
IntMatrix align_basis(const std::vector<IntVector>& gens, std::size_t n) {
  const std::size_t l = gens.size();
  std::vector<IntVector> cols = gens;
  for (std::size_t j = 0; j < n && cols.size() < n; ++j) {
    IntVector e(n);
    e[j] = 1;
    cols.push_back(e);
    if (matrix_rank(IntMatrix::from_columns(cols, n)) != cols.size()) cols.pop_back();
  }
  if (cols.size() == n && abs(determinant(IntMatrix::from_columns(cols, n))) == 1)
    return IntMatrix::from_columns(cols, n);
  (void)l;
  return complete_to_basis(gens, n);
}

// Values with |x| <= bound in the order 0, 1, -1, 2, -2, ...
std::vector<long> value_order(long bound) {
  std::vector<long> out{0};
  for (long k = 1; k <= bound; ++k) {
    out.push_back(k);
    out.push_back(-k);
  }
  return out;
}

// Tuples of length k with max-norm exactly `norm`, lexicographic in value order.
std::vector<std::vector<long>> tuples_of_norm(std::size_t k, long norm) {
  std::vector<std::vector<long>> out;
  auto vals = value_order(norm);
  std::vector<long> cur;
  std::function<void()> rec = [&]() {
    if (cur.size() == k) {
      long m = 0;
      for (long x : cur) m = std::max(m, std::labs(x));
      if (m == norm) out.push_back(cur);
      return;
    }
    for (long v : vals) {
      cur.push_back(v);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

Fan transform_fan(const Fan& f, const IntMatrix& t) {
  std::vector<IntVector> rays;
  for (const auto& v : f.rays()) rays.push_back(t * v);
  return Fan(f.rank(), std::move(rays), f.max_cones());
}

std::vector<IntVector> generators(const Fan& f, const Cone& c) {
  std::vector<IntVector> out;
  for (RayId id : c.rays) out.push_back(f.ray(id));
  return out;
}

bool sigma_is_standard(const Fan& f, const Cone& sigma) {
  for (std::size_t k = 0; k < sigma.dim(); ++k) {
    IntVector e(f.rank());
    e[k] = 1;
    if (f.ray(sigma.rays[k]) != e) return false;
  }
  return true;
}

void require_center(const Fan& f, const Cone& sigma) {
  if (!f.has_cone(sigma)) throw UnknownCone("cone " + to_string(sigma) + " is not in the fan");
  if (sigma.dim() < 2) throw CenterTooSmall("blow-up center " + to_string(sigma) + " has dimension < 2");
  if (!is_smooth_cone(f, sigma)) throw NonSmoothCenter("cone " + to_string(sigma) + " is not smooth");
}

}  // namespace

bool has_diagonal_projection(const Fan& f, std::size_t l) {
  for (RayId id : f.active_rays()) {
    const auto& v = f.ray(id);
    if (v[0] > 0 && std::all_of(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(l), [&](const Int& x) { return x == v[0]; }))
      return true;
  }
  return false;
}

IntMatrix claim1_normalize(const Fan& f, const Cone& sigma) {
  require_center(f, sigma);
  if (!is_smooth(f)) throw PreconditionViolated("the fan is not smooth");
  const std::size_t n = f.rank(), l = sigma.dim();
  IntMatrix align = unimodular_inverse(align_basis(generators(f, sigma), n));
  Fan aligned = transform_fan(f, align);
  const long max_norm = 8;
  for (long norm = 0; norm <= max_norm; ++norm) {
    for (const auto& k : tuples_of_norm(n - l, norm)) {
      IntMatrix shear = IntMatrix::identity(n);
      for (std::size_t j = 0; j < k.size(); ++j) shear(0, l + j) = k[j];
      if (!has_diagonal_projection(transform_fan(aligned, shear), l)) return shear * align;
    }
    if (n == l) break;
  }
  throw SearchBudgetExceeded("no shear with entries up to " + std::to_string(max_norm) +
                             " moves the rays off the diagonal");
}

NormalizedInstance normalize_instance(const BondalInstance& raw) {
  if (auto v = validate_fan(raw.fan); !v.empty()) throw PreconditionViolated("invalid fan: " + v.front());
  NormalizedInstance out;
  out.basis_change = claim1_normalize(raw.fan, raw.sigma);
  out.fan = transform_fan(raw.fan, out.basis_change);
  out.sigma = raw.sigma;
  out.l = raw.sigma.dim();
  if (!sigma_is_standard(out.fan, out.sigma)) throw Error("internal: center is not standard after normalization");
  for (const auto& [id, v] : raw.c.coeffs())
    if (!out.fan.is_active(id)) throw UnknownRay("coefficient on ray " + std::to_string(id) + ", which lies in no cone");

  // Subtract the principal Q-divisor of u0 = (c_sigma_1, ..., c_sigma_l, 0, ...).
  RatVector u0(out.fan.rank());
  for (std::size_t k = 0; k < out.l; ++k) u0[k] = raw.c.coeff(out.sigma.rays[k]);
  const RayId exceptional = static_cast<RayId>(out.fan.num_rays());
  Rat c0 = raw.c0 - sum_first(u0, out.l);
  out.shift.set(exceptional, c0.floor());
  out.c0 = c0.frac();
  for (RayId id : out.fan.active_rays()) {
    Rat x = raw.c.coeff(id) - dot(out.fan.ray(id), u0);
    out.shift.set(id, x.floor());
    out.c.set(id, x.frac());
  }
  return out;
}

BlowupData blowup_tracked(const NormalizedInstance& inst) {
  auto s = stellar_subdivision(inst.fan, inst.sigma);
  return BlowupData{inst.fan, s.fan, s.new_ray, s.provenance};
}

OpenParts z_removal(const NormalizedInstance& inst, const BlowupData& bd) {
  auto outside = [&](const Cone& c) {
    return std::none_of(c.rays.begin(), c.rays.end(), [&](RayId id) { return inst.sigma.has_ray(id) || id == bd.exceptional; });
  };
  OpenParts out;
  for (const auto& c : inst.fan.cones())
    if (c.dim() >= 2 && outside(c)) out.removed.push_back(c);
  out.x = remove_star(inst.fan, out.removed);
  std::vector<Cone> removed_tilde;
  for (const auto& c : bd.blown.cones())
    if (c.dim() >= 2 && outside(c)) removed_tilde.push_back(c);
  out.x_tilde = remove_star(bd.blown, removed_tilde);

  auto y = orbit_closure_fan(out.x, inst.sigma);
  if (has_codim_ge2_strata(y.fan)) throw Error("internal: the orbit closure still has strata of codimension >= 2");
  std::vector<RayId> rest;
  for (RayId id : out.x_tilde.active_rays())
    if (!inst.sigma.has_ray(id) && id != bd.exceptional) rest.push_back(id);
  for (std::size_t a = 0; a < rest.size(); ++a)
    for (std::size_t b = a + 1; b < rest.size(); ++b)
      if (divisors_intersect(out.x_tilde, rest[a], rest[b]))
        throw Error("internal: divisors D" + std::to_string(rest[a]) + " and D" + std::to_string(rest[b]) +
                    " still meet after removal");
  return out;
}

// ---------------------------------------------------------------- floors

namespace {

// Value and slope of every coefficient of D~ at u in direction (w, 0).
struct CoefficientData {
  RayId id;
  Rat x;
  Rat g;
};

std::vector<CoefficientData> coefficients(const NormalizedInstance& inst, const BlowupData& bd, const Fan& x_tilde,
                                          const RatVector& u, const RatVector* w) {
  if (u.size() != inst.fan.rank()) throw Error("u has the wrong dimension");
  std::vector<CoefficientData> out;
  for (RayId id : x_tilde.active_rays()) {
    CoefficientData cd{id, Rat(), Rat()};
    if (id == bd.exceptional) {
      cd.x = sum_first(u, inst.l) + inst.c0;
      if (w) cd.g = sum_first(*w, inst.l);
    } else {
      const auto& v = x_tilde.ray(id);
      cd.x = dot(v, u) + inst.c.coeff(id);
      if (w) cd.g = dot(first_part(v, inst.l), *w);
    }
    out.push_back(cd);
  }
  return out;
}

}  // namespace

TDivisor tilde_divisor_floor(const NormalizedInstance& inst, const BlowupData& bd, const Fan& x_tilde,
                             const RatVector& u) {
  TDivisor out;
  for (const auto& cd : coefficients(inst, bd, x_tilde, u, nullptr)) out.set(cd.id, cd.x.floor());
  return out;
}

QDivisor tilde_qdivisor(const NormalizedInstance& inst, const BlowupData& bd) {
  QDivisor out = inst.c;
  out.set(bd.exceptional, inst.c0);
  return out;
}

TDivisor pullback_divisor(const NormalizedInstance& inst, const BlowupData& bd, const TDivisor& d) {
  TDivisor out = d;
  Int e = 0;
  for (RayId id : inst.sigma.rays) e += d.coeff(id);
  out.add(bd.exceptional, e);
  return out;
}

bool verify_eq1(const NormalizedInstance& inst, const BlowupData& bd, const OpenParts& open, const RatVector& u) {
  for (std::size_t i = 0; i < inst.l; ++i)
    if (u[i].sign() < 0 || u[i] >= Rat(1))
      throw PreconditionViolated("u_" + std::to_string(i + 1) + " = " + u[i].str() + " is outside [0, 1)");
  TDivisor lhs = tilde_divisor_floor(inst, bd, open.x_tilde, u);
  TDivisor rhs = pullback_divisor(inst, bd, divisor_floor(open.x, u, inst.c));
  rhs.add(bd.exceptional, (sum_first(u, inst.l) + inst.c0).floor());
  return lhs == rhs;
}

TDivisor perturb_symbolic(const NormalizedInstance& inst, const BlowupData& bd, const Fan& x_tilde,
                          const RatVector& u, const RatVector& w) {
  if (w.size() != inst.l) throw Error("perturbation direction must have dimension l");
  if (sum_first(w, inst.l).sign() <= 0) throw PreconditionViolated("perturbation direction is not in W+");
  TDivisor out;
  for (const auto& cd : coefficients(inst, bd, x_tilde, u, &w))
    out.set(cd.id, cd.x.is_integer() && cd.g.sign() > 0 ? cd.x.num() - 1 : cd.x.floor());
  return out;
}

namespace {

Rat distance_to_integers(const Rat& x) {
  if (x.is_integer()) return Rat(1);
  Rat f = x.frac();
  return std::min(f, Rat(1) - f);
}

}  // namespace

Rat admissible_epsilon(const NormalizedInstance& inst, const BlowupData& bd, const Fan& x_tilde,
                       const RatVector& u, const RatVector& w) {
  Rat delta(1), slope(0);
  for (const auto& cd : coefficients(inst, bd, x_tilde, u, &w)) {
    delta = std::min(delta, distance_to_integers(cd.x));
    Rat g = cd.g.sign() < 0 ? -cd.g : cd.g;
    slope = std::max(slope, g);
  }
  return slope.sign() == 0 ? delta / Rat(2) : delta / (Rat(2) * slope);
}

RatVector perturbed_point(const RatVector& u, const RatVector& w, const Rat& eps) {
  RatVector out = u;
  for (std::size_t i = 0; i < w.size(); ++i) out[i] -= eps * w[i];
  return out;
}

std::string prime_name(RayId id) { return "D" + std::to_string(id); }

FormalDivisor to_formal(const TDivisor& d) {
  FormalDivisor out;
  for (const auto& [id, v] : d.coeffs()) out[prime_name(id)] = v;
  return out;
}

TDivisor from_formal(const FormalDivisor& d) {
  TDivisor out;
  for (const auto& [name, v] : d) {
    if (name.size() < 2 || name[0] != 'D' || name.find_first_not_of("0123456789", 1) != std::string::npos)
      throw Error("prime name " + name + " does not name a ray");
    out.set(std::stoi(name.substr(1)), v);
  }
  return out;
}

// ---------------------------------------------------------------- generating systems at u

namespace {

void require_claim2_point(const NormalizedInstance& inst, const RatVector& u) {
  if (u.size() != inst.fan.rank()) throw PreconditionViolated("u has the wrong dimension");
  for (std::size_t i = 0; i < inst.l; ++i)
    if (u[i].sign() <= 0 || u[i] >= Rat(1))
      throw PreconditionViolated("u_" + std::to_string(i + 1) + " = " + u[i].str() + " is outside (0, 1)");
  Rat s = sum_first(u, inst.l) + inst.c0;
  if (!s.is_integer()) throw PreconditionViolated("u_1 + ... + u_l + c0 = " + s.str() + " is not integral");
}

DisjointnessOracle fan_oracle(const Fan& f) {
  return [&f](const std::string& a, const std::string& b) {
    RayId i = from_formal({{a, Int(1)}}).coeffs().begin()->first;
    RayId j = from_formal({{b, Int(1)}}).coeffs().begin()->first;
    return i != j && !divisors_intersect(f, i, j);
  };
}

}  // namespace

Claim2System claim2_system(const NormalizedInstance& inst, const BlowupData& bd, const OpenParts& open,
                           const RatVector& u) {
  require_claim2_point(inst, u);
  Claim2System out;
  out.system.dim = inst.l;
  out.system.wplus.assign(inst.l, Int(1));
  IntVector neg(inst.l, Int(-1));
  std::vector<RayId> primes;
  for (RayId id : open.x_tilde.active_rays()) {
    if (id == bd.exceptional) continue;
    const auto& v = open.x_tilde.ray(id);
    if (!(dot(v, u) + inst.c.coeff(id)).is_integer()) continue;
    IntVector v1 = first_part(v, inst.l);
    if (std::all_of(v1.begin(), v1.end(), [](const Int& x) { return x == 0; })) continue;
    IntVector nrm = primitive_part(v1);
    if (nrm == out.system.wplus) throw Error("ray " + std::to_string(id) + " projects onto the diagonal; coordinates are not normalized");
    if (nrm == neg) {
      out.inert.push_back(id);
      continue;
    }
    primes.push_back(id);
    auto it = std::find_if(out.system.items.begin(), out.system.items.end(),
                           [&](const SystemItem& s) { return s.normal == nrm; });
    if (it == out.system.items.end())
      out.system.items.push_back(SystemItem{nrm, {prime_name(id)}});
    else
      it->primes.insert(prime_name(id));
  }
  for (std::size_t a = 0; a < primes.size(); ++a)
    for (std::size_t b = a + 1; b < primes.size(); ++b)
      if (divisors_intersect(open.x_tilde, primes[a], primes[b]))
        throw DisjointnessFailure("D" + std::to_string(primes[a]) + " and D" + std::to_string(primes[b]) + " intersect");
  check_system(out.system);
  return out;
}

Claim2Result verify_claim2(const NormalizedInstance& inst, const BlowupData& bd, const OpenParts& open,
                           const RatVector& u, const ThomsenCollection* collection) {
  Claim2Result r;
  r.system = claim2_system(inst, bd, open, u);
  const Fan& xt = open.x_tilde;
  TDivisor du = tilde_divisor_floor(inst, bd, xt, u);
  TDivisor y{{bd.exceptional, 1}};
  r.twist = to_formal(du - y);
  r.certificate = resolve(r.system.system, r.twist);
  r.certificate_problems = verify_certificate(r.certificate, r.system.system, fan_oracle(xt), r.twist);
  for (const auto& p : r.certificate_problems) r.failures.push_back("certificate: " + p);

  for (const auto& ch : chambers(r.system.system)) {
    ChamberCheck cc{ch.signs, ch.witness, false, false};
    TDivisor expect = du - from_formal(ch.divisor) - y;
    cc.symbolic_ok = perturb_symbolic(inst, bd, xt, u, ch.witness) == expect;
    Rat eps = admissible_epsilon(inst, bd, xt, u, ch.witness);
    cc.concrete_ok = tilde_divisor_floor(inst, bd, xt, perturbed_point(u, ch.witness, eps)) == expect;
    if (!cc.symbolic_ok) r.failures.push_back("chamber " + ch.signs + ": symbolic perturbation mismatch");
    if (!cc.concrete_ok) r.failures.push_back("chamber " + ch.signs + ": concrete perturbation mismatch");
    r.chambers.push_back(std::move(cc));
  }

  std::optional<ClassGroup> group;
  if (collection) group.emplace(xt);
  for (const auto& n : r.certificate.nodes) {
    if (n.kind != CertNode::Kind::Leaf) continue;
    Rat eps = admissible_epsilon(inst, bd, xt, u, n.witness);
    RatVector up = perturbed_point(u, n.witness, eps);
    TDivisor d = tilde_divisor_floor(inst, bd, xt, up);
    if (to_formal(d) != n.target)
      r.failures.push_back("leaf " + std::to_string(n.id) + ": D~ at the perturbed point is " + to_string(d));
    if (collection) {
      if (collection->contains(group->class_of(d)))
        ++r.leaves_in_collection;
      else
        r.failures.push_back("leaf " + std::to_string(n.id) + ": class is not in the Thomsen collection");
    }
    r.leaf_points[n.id] = std::move(up);
  }
  return r;
}

// ---------------------------------------------------------------- single-ray witnesses

std::vector<Prop45Witness> prop45_witnesses(const Fan& f, const QDivisor& d, const Prop45Options& opt) {
  if (has_codim_ge2_strata(f)) throw PreconditionViolated("the fan has cones of dimension >= 2");
  const std::size_t n = f.rank();
  auto ids = f.active_rays();
  std::vector<Prop45Witness> out;
  for (RayId i : ids) {
    const IntVector& vi = f.ray(i);
    IntMatrix dual = unimodular_inverse(complete_to_basis({vi}, n)).transpose();
    auto pattern_ok = [&](const RatVector& u) {
      for (RayId j : ids) {
        if (j == i) continue;
        IntVector neg = f.ray(j);
        for (auto& x : neg) x = -x;
        if (f.ray(j) == vi || neg == vi) continue;
        if ((dot(f.ray(j), u) + d.coeff(j)).is_integer()) return false;
      }
      return true;
    };
    std::optional<RatVector> found;
    for (long q = 1; q <= opt.max_denominator && !found; ++q) {
      for_each_grid_point(n - 1, Int(q), [&](const RatVector& a) {
        if (found) return;
        RatVector y{-d.coeff(i)};
        y.insert(y.end(), a.begin(), a.end());
        RatVector u(n);
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) u[r] += Rat(dual(r, c)) * y[c];
        if (pattern_ok(u)) found = u;
      });
      if (n == 1) break;
    }
    if (!found) throw SearchBudgetExceeded("no witness for ray " + std::to_string(i) + " with denominator up to " +
                                           std::to_string(opt.max_denominator));
    // Move against v_i: only D_i has an integral value with positive slope.
    Rat delta(1), slope(0);
    for (RayId j : ids) {
      delta = std::min(delta, distance_to_integers(dot(f.ray(j), *found) + d.coeff(j)));
      Rat g(dot(f.ray(j), vi));
      slope = std::max(slope, g.sign() < 0 ? -g : g);
    }
    Rat eps = delta / (Rat(2) * slope);
    RatVector up = *found;
    for (std::size_t r = 0; r < n; ++r) up[r] -= eps * Rat(vi[r]);
    Prop45Witness w{i, *found, up, divisor_floor(f, *found, d), divisor_floor(f, up, d)};
    if (w.d_u_prime != w.d_u - TDivisor{{i, 1}})
      throw Error("internal: perturbation at ray " + std::to_string(i) + " does not drop exactly D" + std::to_string(i));
    out.push_back(std::move(w));
  }
  return out;
}

// ---------------------------------------------------------------- restriction

TDivisor restrict_class_to_orbit(const Fan& f, const Cone& sigma, const TDivisor& d, const OrbitClosure& oc) {
  (void)f;
  for (RayId id : sigma.rays)
    if (d.coeff(id) != 0)
      throw PreconditionViolated("divisor has a nonzero coefficient on ray " + std::to_string(id) + " of the center");
  TDivisor out;
  for (const auto& [id, v] : d.coeffs())
    if (auto it = oc.ray_map.find(id); it != oc.ray_map.end()) out.set(it->second, v);
  return out;
}

TDivisor restrict_class_to_orbit(const Fan& f, const Cone& sigma, const TDivisor& d) {
  return restrict_class_to_orbit(f, sigma, d, orbit_closure_fan(f, sigma));
}

QDivisor induced_qdivisor(const NormalizedInstance& inst, const Fan& f, const OrbitClosure& oc, const RatVector& u1) {
  if (u1.size() != inst.l) throw Error("u1 must have dimension l");
  QDivisor out;
  for (const auto& [id, qid] : oc.ray_map) out.set(qid, dot(first_part(f.ray(id), inst.l), u1) + inst.c.coeff(id));
  return out;
}

// ---------------------------------------------------------------- pipeline

bool BondalReport::ok() const {
  return eq1_failures.empty() && d_window_ok() &&
         std::all_of(claim2.begin(), claim2.end(), [](const Claim2Record& r) { return r.ok; }) &&
         std::all_of(restriction.begin(), restriction.end(), [](const RestrictionRecord& r) { return r.ok; });
}

BondalReport bondal_pipeline(const BondalInstance& raw, const Int& q) {
  if (q < 1) throw Error("grid denominator must be positive");
  BondalReport rep;
  rep.q = q;
  rep.instance = normalize_instance(raw);
  const auto& inst = rep.instance;
  BlowupData bd = blowup_tracked(inst);
  rep.exceptional = bd.exceptional;
  rep.open = z_removal(inst, bd);
  rep.tilde_collection = thomsen_collection(rep.open.x_tilde, tilde_qdivisor(inst, bd));
  const std::size_t n = inst.fan.rank(), l = inst.l;

  for (long k = inst.c0.sign() == 0 ? 0 : 1; k <= static_cast<long>(l) - (inst.c0.sign() == 0 ? 1 : 0); ++k)
    rep.d_window_expected.insert(Int(k));

  std::vector<RatVector> admissible;
  for_each_grid_point(n, q, [&](const RatVector& u) {
    ++rep.eq1_checks;
    if (!verify_eq1(inst, bd, rep.open, u)) rep.eq1_failures.push_back(u);
    Rat s = sum_first(u, l) + inst.c0;
    if (!s.is_integer()) return;
    rep.d_window.insert(s.num());
    if (std::all_of(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(l), [](const Rat& x) { return x.sign() > 0; }))
      admissible.push_back(u);
  });

  for (const auto& u : admissible) {
    Claim2Record rec;
    rec.u = u;
    rec.d = (sum_first(u, l) + inst.c0).num();
    rep.claim2_d_values.insert(rec.d);
    try {
      auto res = verify_claim2(inst, bd, rep.open, u, &rep.tilde_collection);
      rec.items = res.system.system.items.size();
      rec.chambers = res.chambers.size();
      rec.leaves = res.certificate.leaf_count();
      rec.koszul = res.certificate.nodes.size() - rec.leaves;
      rec.failures = res.failures;
      rec.ok = res.ok();
    } catch (const Error& e) {
      rec.failures.push_back(e.what());
    }
    rep.claim2.push_back(std::move(rec));
  }

  // Restriction to the orbit closure of the center, one record per admissible u1.
  OrbitClosure oc = orbit_closure_fan(rep.open.x, inst.sigma);
  ClassGroup qgroup(oc.fan);
  std::set<RatVector> u1s;
  for (const auto& u : admissible) u1s.insert(RatVector(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(l)));
  for (const auto& u1 : u1s) {
    RestrictionRecord rec;
    rec.u1 = u1;
    QDivisor dq = induced_qdivisor(inst, rep.open.x, oc, u1);
    rec.expected = thomsen_collection(oc.fan, dq).classes;
    rec.grid = q * stabilization_base(oc.fan, dq);
    for_each_grid_point(n - l, rec.grid, [&](const RatVector& u2) {
      RatVector u = u1;
      u.insert(u.end(), u2.begin(), u2.end());
      TDivisor d = divisor_floor(rep.open.x, u, inst.c);
      rec.restricted.insert(qgroup.class_of(restrict_class_to_orbit(rep.open.x, inst.sigma, d, oc)));
    });
    if (!oc.fan.active_rays().empty()) rec.prop45_witnesses = prop45_witnesses(oc.fan, dq).size();
    rec.ok = rec.restricted == rec.expected;
    rep.restriction.push_back(std::move(rec));
  }
  return rep;
}

}  // namespace toric
