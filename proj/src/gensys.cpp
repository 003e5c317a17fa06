#include "toric/gensys.hpp"

#include "simplex.hpp"

#include <algorithm>
#include <sstream>

namespace toric {

// ---------------------------------------------------------------- formal divisors

namespace {

void add_into(FormalDivisor& out, const FormalDivisor& x, long sign) {
  for (const auto& [name, c] : x) {
    Int v = out[name] + (sign > 0 ? c : Int(-c));
    if (v == 0)
      out.erase(name);
    else
      out[name] = v;
  }
}

}  // namespace

FormalDivisor operator+(const FormalDivisor& a, const FormalDivisor& b) {
  FormalDivisor out = a;
  add_into(out, b, 1);
  return out;
}

FormalDivisor operator-(const FormalDivisor& a, const FormalDivisor& b) {
  FormalDivisor out = a;
  add_into(out, b, -1);
  return out;
}

FormalDivisor operator-(const FormalDivisor& a) { return FormalDivisor{} - a; }

FormalDivisor formal_sum(const std::set<std::string>& primes) {
  FormalDivisor out;
  for (const auto& p : primes) out[p] = 1;
  return out;
}

bool is_effective(const FormalDivisor& d) {
  return std::all_of(d.begin(), d.end(), [](const auto& kv) { return kv.second > 0; });
}

std::string to_string(const FormalDivisor& d) {
  if (d.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, c] : d) {
    if (c < 0)
      os << '-';
    else if (!first)
      os << '+';
    Int a = abs(c);
    if (a != 1) os << a;
    os << name;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------- validation

std::vector<std::string> validate_system(const GeneratingSystem& gs) {
  std::vector<std::string> out;
  if (gs.dim < 2) out.push_back("dimension must be at least 2");
  auto vec_ok = [&](const IntVector& v, const std::string& what) {
    if (v.size() != gs.dim) {
      out.push_back(what + ": has " + std::to_string(v.size()) + " entries, expected " + std::to_string(gs.dim));
      return false;
    }
    if (!is_primitive(v)) {
      out.push_back(what + ": normal must be a nonzero primitive vector");
      return false;
    }
    return true;
  };
  bool wplus_ok = vec_ok(gs.wplus, "wplus");
  std::map<std::string, std::size_t> owner;
  for (std::size_t i = 0; i < gs.items.size(); ++i) {
    const auto& it = gs.items[i];
    std::string name = "item " + std::to_string(i);
    if (vec_ok(it.normal, name) && wplus_ok) {
      IntVector neg = gs.wplus;
      for (auto& x : neg) x = -x;
      if (it.normal == gs.wplus) out.push_back(name + ": half space equals W+");
      if (it.normal == neg) out.push_back(name + ": half space is the complement of W+");
      for (std::size_t j = 0; j < i; ++j)
        if (gs.items[j].normal == it.normal)
          out.push_back("items " + std::to_string(j) + " and " + std::to_string(i) + ": half spaces coincide");
    }
    if (it.primes.empty()) out.push_back(name + ": prime set is empty");
    for (const auto& p : it.primes) {
      if (p.empty()) out.push_back(name + ": empty prime name");
      auto [pos, fresh] = owner.emplace(p, i);
      if (!fresh)
        out.push_back("items " + std::to_string(pos->second) + " and " + std::to_string(i) +
                      ": prime " + p + " used twice");
    }
  }
  return out;
}

void check_system(const GeneratingSystem& gs) {
  auto v = validate_system(gs);
  if (v.empty()) return;
  std::string msg = "invalid generating system:";
  for (const auto& s : v) msg += "\n  " + s;
  throw InvalidSystem(msg);
}

// ---------------------------------------------------------------- signs

std::string sign_string(const GeneratingSystem& gs, const RatVector& w) {
  std::string s;
  for (const auto& it : gs.items) {
    int g = dot(it.normal, w).sign();
    s.push_back(g > 0 ? '+' : g < 0 ? '-' : '0');
  }
  return s;
}

FormalDivisor divisor_of_signs(const GeneratingSystem& gs, const std::string& signs) {
  FormalDivisor out;
  for (std::size_t i = 0; i < gs.items.size() && i < signs.size(); ++i)
    if (signs[i] == '+') out = out + formal_sum(gs.items[i].primes);
  return out;
}

FormalDivisor divisor_at(const GeneratingSystem& gs, const RatVector& w) {
  return divisor_of_signs(gs, sign_string(gs, w));
}

bool realizable(const GeneratingSystem& gs, const std::string& signs, RatVector* witness) {
  const std::size_t l = gs.dim, nv = 2 * l + 1;
  std::vector<RatVector> a;
  RatVector b;
  // Row for  s * (g, w) >= t, i.e.  -s*(g, w+ - w-) + t <= 0.
  auto strict = [&](const IntVector& g, int s) {
    RatVector row(nv);
    for (std::size_t j = 0; j < l; ++j) {
      row[j] = Rat(-s * g[j]);
      row[l + j] = Rat(s * g[j]);
    }
    row[2 * l] = 1;
    a.push_back(std::move(row));
    b.emplace_back(0);
  };
  auto nonpos = [&](const IntVector& g, int s) {
    RatVector row(nv);
    for (std::size_t j = 0; j < l; ++j) {
      row[j] = Rat(s * g[j]);
      row[l + j] = Rat(-s * g[j]);
    }
    a.push_back(std::move(row));
    b.emplace_back(0);
  };
  strict(gs.wplus, 1);
  for (std::size_t i = 0; i < signs.size(); ++i) {
    const auto& g = gs.items[i].normal;
    if (signs[i] == '+')
      strict(g, 1);
    else if (signs[i] == '-')
      strict(g, -1);
    else if (signs[i] == '0') {
      nonpos(g, 1);
      nonpos(g, -1);
    } else {
      throw Error(std::string("invalid sign character '") + signs[i] + "'");
    }
  }
  for (std::size_t j = 0; j < nv; ++j) {
    RatVector row(nv);
    row[j] = 1;
    a.push_back(std::move(row));
    b.emplace_back(1);
  }
  RatVector c(nv);
  c[2 * l] = 1;
  auto sol = detail::maximize(c, a, b);
  if (!sol || sol->value.sign() <= 0) return false;
  if (witness) {
    witness->assign(l, Rat(0));
    for (std::size_t j = 0; j < l; ++j) (*witness)[j] = sol->x[j] - sol->x[l + j];
  }
  return true;
}

// ---------------------------------------------------------------- chambers

namespace {

Int cross(const IntVector& a, const IntVector& b) { return a[0] * b[1] - a[1] * b[0]; }

IntVector plus(const IntVector& a, const IntVector& b) { return {a[0] + b[0], a[1] + b[1]}; }
IntVector minus(const IntVector& a, const IntVector& b) { return {a[0] - b[0], a[1] - b[1]}; }

RatVector to_rat(const IntVector& v) {
  RatVector r;
  for (const auto& x : v) r.emplace_back(x);
  return r;
}

struct Wall {
  IntVector direction;
  std::vector<std::size_t> items;
};

// Direction at angle 0 when W+ is rotated to the upper half plane.
IntVector angle_zero(const GeneratingSystem& gs) { return {gs.wplus[1], -gs.wplus[0]}; }

// Walls of a 2-dimensional system, by decreasing angle.
std::vector<Wall> walls2(const GeneratingSystem& gs) {
  std::vector<Wall> walls;
  for (std::size_t i = 0; i < gs.items.size(); ++i) {
    const auto& f = gs.items[i].normal;
    IntVector d{-f[1], f[0]};
    if (dot(gs.wplus, d) < 0) d = {f[1], -f[0]};
    auto it = std::find_if(walls.begin(), walls.end(), [&](const Wall& w) { return cross(w.direction, d) == 0; });
    if (it == walls.end())
      walls.push_back(Wall{d, {i}});
    else
      it->items.push_back(i);
  }
  std::sort(walls.begin(), walls.end(),
            [](const Wall& x, const Wall& y) { return cross(x.direction, y.direction) < 0; });
  return walls;
}

bool is_plus_item(const GeneratingSystem& gs, std::size_t i) {
  return dot(gs.items[i].normal, angle_zero(gs)) > 0;
}

std::vector<Chamber> chambers2(const GeneratingSystem& gs) {
  auto walls = walls2(gs);
  std::vector<IntVector> witnesses;
  if (walls.empty()) {
    witnesses.push_back(gs.wplus);
  } else {
    IntVector a = angle_zero(gs);
    witnesses.push_back(minus(walls.front().direction, a));
    for (std::size_t i = 0; i < walls.size(); ++i) {
      witnesses.push_back(walls[i].direction);
      if (i + 1 < walls.size()) witnesses.push_back(plus(walls[i].direction, walls[i + 1].direction));
    }
    witnesses.push_back(plus(walls.back().direction, a));
  }
  std::vector<Chamber> out;
  for (const auto& w : witnesses) {
    RatVector rw = to_rat(w);
    std::string s = sign_string(gs, rw);
    out.push_back(Chamber{s, rw, divisor_of_signs(gs, s)});
  }
  return out;
}

std::vector<Chamber> chambers_lp(const GeneratingSystem& gs) {
  struct Partial {
    std::string signs;
    RatVector witness;
  };
  RatVector start;
  if (!realizable(gs, "", &start)) return {};
  std::vector<Partial> cur{{"", start}};
  for (std::size_t i = 0; i < gs.items.size(); ++i) {
    std::vector<Partial> next;
    for (const auto& p : cur)
      for (char s : {'+', '0', '-'}) {
        std::string signs = p.signs + s;
        int g = dot(gs.items[i].normal, p.witness).sign();
        char have = g > 0 ? '+' : g < 0 ? '-' : '0';
        if (have == s) {
          next.push_back(Partial{signs, p.witness});
          continue;
        }
        RatVector w;
        if (realizable(gs, signs, &w)) next.push_back(Partial{signs, w});
      }
    cur = std::move(next);
  }
  std::vector<Chamber> out;
  for (auto& p : cur) out.push_back(Chamber{p.signs, p.witness, divisor_of_signs(gs, p.signs)});
  std::sort(out.begin(), out.end(), [](const Chamber& x, const Chamber& y) { return x.signs < y.signs; });
  return out;
}

}  // namespace

std::vector<Chamber> chambers(const GeneratingSystem& gs) {
  check_system(gs);
  return gs.dim == 2 ? chambers2(gs) : chambers_lp(gs);
}

// ---------------------------------------------------------------- decomposition

namespace {

RatVector solve_or_throw(const std::vector<RatVector>& rows, const RatVector& rhs, std::size_t unknowns,
                         const char* what) {
  auto x = rational_solve(rows, rhs, unknowns);
  if (!x) throw Error(std::string("internal: inconsistent system in ") + what);
  return *x;
}

// Smallest positive integral multiple, made primitive.
IntVector primitive_integral(const RatVector& v) {
  Int den = 1;
  for (const auto& x : v) den = lcm(den, x.den());
  IntVector out;
  for (const auto& x : v) out.push_back(x.num() * (den / x.den()));
  return primitive_part(out);
}

}  // namespace

QuotientSplit quotient_split(const GeneratingSystem& gs, std::size_t pivot) {
  check_system(gs);
  if (gs.dim < 3) throw Error("quotient_split needs dimension at least 3");
  if (pivot >= gs.items.size()) throw Error("quotient_split: pivot item out of range");
  const std::size_t l = gs.dim;
  const IntVector& p = gs.wplus;
  const IntVector& f1 = gs.items[pivot].normal;
  QuotientSplit qs;
  qs.pivot = pivot;
  qs.u_basis = integer_kernel(IntMatrix::from_rows({p, f1}, l));
  qs.quotient.dim = 2;
  qs.quotient.wplus = {Int(1), Int(0)};
  std::vector<RatVector> rows(l, RatVector(2));
  for (std::size_t j = 0; j < l; ++j) rows[j] = {Rat(p[j]), Rat(f1[j])};
  for (std::size_t i = 0; i < gs.items.size(); ++i) {
    const auto& f = gs.items[i].normal;
    if (matrix_rank(IntMatrix::from_rows({p, f1, f}, l)) != 2) {
      qs.rest_items.push_back(i);
      continue;
    }
    qs.t_items.push_back(i);
    RatVector coeffs = solve_or_throw(rows, to_rat(f), 2, "quotient_split");
    qs.quotient.items.push_back(SystemItem{primitive_integral(coeffs), gs.items[i].primes});
  }
  return qs;
}

IntVector lift_quotient_point(const GeneratingSystem& gs, const QuotientSplit& qs, const RatVector& wq) {
  const auto& f1 = gs.items[qs.pivot].normal;
  RatVector z = solve_or_throw({to_rat(gs.wplus), to_rat(f1)}, wq, gs.dim, "lift_quotient_point");
  IntVector out = primitive_integral(z);
  if (dot(gs.wplus, out) <= 0) throw Error("internal: lifted point is not in W+");
  return out;
}

GeneratingSystem slice_system(const GeneratingSystem& gs, const IntMatrix& u_basis, const IntVector& z) {
  const std::size_t l = gs.dim, k = u_basis.cols();
  if (k + 1 >= l + 1 || u_basis.rows() != l) throw Error("slice_system: U must have dimension dim - 2");
  auto restrict_form = [&](const IntVector& f) {
    IntVector r(k + 1);
    for (std::size_t j = 0; j < k; ++j) r[j] = dot(f, u_basis.column(j));
    r[k] = dot(f, z);
    return r;
  };
  GeneratingSystem out;
  out.dim = k + 1;
  IntVector wp = restrict_form(gs.wplus);
  for (std::size_t j = 0; j < k; ++j)
    if (wp[j] != 0) throw Error("slice_system: U is not inside the boundary of W+");
  if (wp[k] <= 0) throw Error("slice_system: z does not lie in W+");
  out.wplus = primitive_part(wp);
  IntVector neg = out.wplus;
  for (auto& x : neg) x = -x;
  for (std::size_t i = 0; i < gs.items.size(); ++i) {
    IntVector r = restrict_form(gs.items[i].normal);
    bool contains_u = std::all_of(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k),
                                  [](const Int& x) { return x == 0; });
    if (contains_u) continue;
    r = primitive_part(r);
    if (r == out.wplus || r == neg)
      throw DegenerateSlice("item " + std::to_string(i) + " restricts to " +
                            (r == neg ? std::string("the complement of W+") : std::string("W+")));
    auto it = std::find_if(out.items.begin(), out.items.end(), [&](const SystemItem& s) { return s.normal == r; });
    if (it == out.items.end())
      out.items.push_back(SystemItem{r, gs.items[i].primes});
    else
      it->primes.insert(gs.items[i].primes.begin(), gs.items[i].primes.end());
  }
  return out;
}

RatVector slice_to_ambient(const IntMatrix& u_basis, const IntVector& z, const RatVector& p) {
  const std::size_t l = u_basis.rows(), k = u_basis.cols();
  RatVector w(l);
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < k; ++j) w[i] += Rat(u_basis(i, j)) * p[j];
    w[i] += Rat(z[i]) * p[k];
  }
  return w;
}

// ---------------------------------------------------------------- resolution

const CertNode* GenerationCertificate::find(int id) const {
  auto it = std::find_if(nodes.begin(), nodes.end(), [&](const CertNode& n) { return n.id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

std::size_t GenerationCertificate::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const CertNode& n) { return n.kind == CertNode::Kind::Leaf; }));
}

namespace {

using LeafFn = std::function<int(const FormalDivisor&)>;

GeneratingSystem without_item(const GeneratingSystem& gs, std::size_t i) {
  GeneratingSystem r = gs;
  r.items.erase(r.items.begin() + static_cast<std::ptrdiff_t>(i));
  return r;
}

class Resolver {
 public:
  explicit Resolver(const GeneratingSystem& top) : top_(top) {}

  GenerationCertificate run(const FormalDivisor& twist) {
    LeafFn leaf = [this](const FormalDivisor& t) { return make_leaf(t); };
    int root = prove(top_, twist, leaf);
    bind_leaves(twist);
    return GenerationCertificate{root, std::move(nodes_)};
  }

 private:
  int prove(const GeneratingSystem& sys, const FormalDivisor& shift, const LeafFn& leaf) {
    if (auto it = proven_.find(shift); it != proven_.end()) return it->second;
    if (sys.items.empty()) return leaf(shift);
    return sys.dim == 2 ? prove2(sys, shift, leaf) : prove_n(sys, shift, leaf);
  }

  // Induction on the number of items, peeling the outermost wall.
  int prove2(const GeneratingSystem& sys, const FormalDivisor& shift, const LeafFn& leaf) {
    if (auto it = proven_.find(shift); it != proven_.end()) return it->second;
    auto chs = chambers2(sys);
    if (std::any_of(chs.begin(), chs.end(), [](const Chamber& c) { return c.divisor.empty(); }))
      return leaf(shift);
    auto walls = walls2(sys);
    const Wall& top = walls.front();
    for (std::size_t i : top.items)
      if (!is_plus_item(sys, i)) return prove2(without_item(sys, i), shift, leaf);
    const std::size_t pi = top.items.front();
    FormalDivisor d1 = formal_sum(sys.items[pi].primes);
    GeneratingSystem reduced = without_item(sys, pi);
    FormalDivisor e1 = chambers2(reduced).front().divisor;
    int id = reserve(shift);
    int c1 = prove2(reduced, shift - d1, leaf);
    int c2 = leaf(shift - e1);
    int c3 = leaf(shift - d1 - e1);
    CertNode& n = node(id);
    n.kind = CertNode::Kind::Koszul;
    n.d = d1;
    n.e = e1;
    n.children = {c1, c2, c3};
    return id;
  }

  // Quotient by U = boundary(W+) cap boundary(first item), then slices over each quotient chamber.
  int prove_n(const GeneratingSystem& sys, const FormalDivisor& shift, const LeafFn& leaf) {
    QuotientSplit qs = quotient_split(sys, 0);
    auto qch = chambers2(qs.quotient);
    LeafFn through_slice = [&, this](const FormalDivisor& t) {
      FormalDivisor dq = shift - t;
      auto it = std::find_if(qch.begin(), qch.end(), [&](const Chamber& c) { return c.divisor == dq; });
      if (it == qch.end()) throw Error("internal: no quotient chamber with divisor " + to_string(dq));
      IntVector z = lift_quotient_point(sys, qs, it->witness);
      return prove(slice_system(sys, qs.u_basis, z), t, leaf);
    };
    return prove2(qs.quotient, shift, through_slice);
  }

  int make_leaf(const FormalDivisor& target) {
    if (auto it = proven_.find(target); it != proven_.end()) return it->second;
    return reserve(target);
  }

  int reserve(const FormalDivisor& target) {
    int id = static_cast<int>(nodes_.size());
    CertNode n;
    n.id = id;
    n.target = target;
    nodes_.push_back(std::move(n));
    proven_[target] = id;
    return id;
  }

  CertNode& node(int id) { return nodes_[static_cast<std::size_t>(id)]; }

  void bind_leaves(const FormalDivisor& twist) {
    auto chs = chambers(top_);
    for (auto& n : nodes_) {
      if (n.kind != CertNode::Kind::Leaf) continue;
      FormalDivisor want = twist - n.target;
      auto it = std::find_if(chs.begin(), chs.end(), [&](const Chamber& c) { return c.divisor == want; });
      if (it == chs.end()) throw Error("internal: leaf " + to_string(n.target) + " matches no chamber");
      n.chamber = it->signs;
      n.witness = it->witness;
    }
  }

  const GeneratingSystem& top_;
  std::vector<CertNode> nodes_;
  std::map<FormalDivisor, int> proven_;
};

}  // namespace

GenerationCertificate resolve(const GeneratingSystem& gs, const FormalDivisor& twist) {
  check_system(gs);
  return Resolver(gs).run(twist);
}

// ---------------------------------------------------------------- verification

bool names_disjoint(const std::string& a, const std::string& b) { return a != b; }

std::vector<std::string> verify_certificate(const GenerationCertificate& cert, const GeneratingSystem& gs,
                                            const DisjointnessOracle& disjoint, const FormalDivisor& twist) {
  std::vector<std::string> out;
  auto fail = [&](int id, const std::string& msg) { out.push_back("node " + std::to_string(id) + ": " + msg); };
  if (auto v = validate_system(gs); !v.empty()) {
    for (auto& s : v) out.push_back("system: " + s);
    return out;
  }
  std::map<int, const CertNode*> by_id;
  for (const auto& n : cert.nodes)
    if (!by_id.emplace(n.id, &n).second) fail(n.id, "duplicate node id");
  auto root = by_id.find(cert.root);
  if (root == by_id.end()) {
    out.push_back("root node " + std::to_string(cert.root) + " does not exist");
  } else if (root->second->target != twist) {
    fail(cert.root, "root target " + to_string(root->second->target) + " differs from " + to_string(twist));
  }

  for (const auto& n : cert.nodes) {
    if (n.kind == CertNode::Kind::Koszul) {
      if (n.children.size() != 3) {
        fail(n.id, "Koszul step needs exactly three children");
        continue;
      }
      if (n.d.empty() || n.e.empty()) fail(n.id, "Koszul divisors must be nonempty");
      if (!is_effective(n.d) || !is_effective(n.e)) fail(n.id, "Koszul divisors must be effective");
      for (const auto& [a, ca] : n.d)
        for (const auto& [b, cb] : n.e)
          if (a == b || !disjoint(a, b)) fail(n.id, "primes " + a + " and " + b + " are not disjoint");
      const FormalDivisor expect[3] = {n.target - n.d, n.target - n.e, n.target - n.d - n.e};
      for (std::size_t k = 0; k < 3; ++k) {
        auto c = by_id.find(n.children[k]);
        if (c == by_id.end())
          fail(n.id, "child " + std::to_string(n.children[k]) + " does not exist");
        else if (c->second->target != expect[k])
          fail(n.id, "child " + std::to_string(k) + " proves " + to_string(c->second->target) + ", expected " +
                         to_string(expect[k]));
      }
    } else {
      if (n.chamber.size() != gs.items.size() ||
          n.chamber.find_first_not_of("+0-") != std::string::npos) {
        fail(n.id, "malformed chamber sign string '" + n.chamber + "'");
        continue;
      }
      if (!n.witness.empty()) {
        if (n.witness.size() != gs.dim)
          fail(n.id, "witness has the wrong dimension");
        else if (dot(gs.wplus, n.witness).sign() <= 0)
          fail(n.id, "witness is not in W+");
        else if (sign_string(gs, n.witness) != n.chamber)
          fail(n.id, "witness realizes " + sign_string(gs, n.witness) + ", not " + n.chamber);
      } else if (!realizable(gs, n.chamber)) {
        fail(n.id, "chamber " + n.chamber + " is not realized in W+");
      }
      FormalDivisor expect = twist - divisor_of_signs(gs, n.chamber);
      if (n.target != expect)
        fail(n.id, "leaf target " + to_string(n.target) + " differs from " + to_string(expect));
    }
  }

  // Acyclicity by iterative depth-first search.
  std::map<int, int> color;
  for (const auto& n : cert.nodes) {
    if (color[n.id] != 0) continue;
    std::vector<std::pair<int, std::size_t>> stack{{n.id, 0}};
    color[n.id] = 1;
    while (!stack.empty()) {
      auto& [id, next] = stack.back();
      const CertNode* cur = by_id.count(id) ? by_id[id] : nullptr;
      if (!cur || cur->kind == CertNode::Kind::Leaf || next >= cur->children.size()) {
        color[id] = 2;
        stack.pop_back();
        continue;
      }
      int child = cur->children[next++];
      if (!by_id.count(child)) continue;
      if (color[child] == 1) {
        fail(child, "certificate has a cycle");
        return out;
      }
      if (color[child] == 0) {
        color[child] = 1;
        stack.emplace_back(child, 0);
      }
    }
  }
  return out;
}

}  // namespace toric
