#include "toric/io.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace toric::io {

SchemaError::SchemaError(const std::string& where, const std::string& what)
    : Error(where.empty() ? what : where + ": " + what), where_(where) {}

namespace {

std::string at(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }
std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where, "missing field \"" + key + "\"");
  return *it;
}

void allow_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where, "expected an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* a : keys) known = known || k == a;
    if (!known) throw SchemaError(where, "unknown field \"" + k + "\"");
  }
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where, "expected an array");
  return j;
}

std::size_t index_from_json(const Json& j, std::size_t bound, const std::string& where) {
  Int x = int_from_json(j, where);
  if (x < 0 || x >= static_cast<unsigned long>(bound))
    throw SchemaError(where, "index " + x.get_str() + " is out of range");
  return x.get_ui();
}

RayId ray_key(const std::string& key, const std::string& where) {
  static const std::regex digits("0|[1-9][0-9]{0,8}");
  if (!std::regex_match(key, digits)) throw SchemaError(where, "key \"" + key + "\" is not a ray index");
  return std::stoi(key);
}

IntVector int_vector(const Json& j, const std::string& where) {
  IntVector out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) out.push_back(int_from_json(j[i], at(where, i)));
  return out;
}

RatVector rat_vector(const Json& j, const std::string& where) {
  RatVector out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) out.push_back(rat_from_json(j[i], at(where, i)));
  return out;
}

std::string vector_str(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

Json classes(const std::set<DivClass>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(to_json(c));
  return out;
}

Json int_set(const std::set<Int>& s) {
  Json out = Json::array();
  for (const auto& x : s) out.push_back(to_json(x));
  return out;
}

}  // namespace

// ---------------------------------------------------------------- files

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw SchemaError("line " + std::to_string(line) + ", column " + std::to_string(col), msg);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_json_text(ss.str());
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

// ---------------------------------------------------------------- scalars

Json to_json(const Int& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Json to_json(const Rat& x) { return Json::array({to_json(x.num()), to_json(x.den())}); }

Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

Int int_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Int(std::to_string(j.get<unsigned long>())) : Int(j.get<long>());
  if (j.is_string()) {
    static const std::regex integer("-?(0|[1-9][0-9]*)");
    const auto& s = j.get_ref<const std::string&>();
    if (std::regex_match(s, integer)) return Int(s);
  }
  throw SchemaError(where, "expected an integer");
}

Rat rat_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(where, "expected a rational [num, den]");
  Int n = int_from_json(j[0], at(where, 0)), d = int_from_json(j[1], at(where, 1));
  if (d == 0) throw SchemaError(where, "zero denominator");
  return Rat(n, d);
}

Rat rat_from_string(const std::string& s) {
  static const std::regex form("\\s*(-?[0-9]+)\\s*(/\\s*([0-9]+)\\s*)?");
  std::smatch m;
  if (!std::regex_match(s, m, form)) throw SchemaError("", "\"" + s + "\" is not a rational num/den");
  Int d = m[3].matched ? Int(m[3].str()) : Int(1);
  if (d == 0) throw SchemaError("", "zero denominator in \"" + s + "\"");
  return Rat(Int(m[1].str()), d);
}

// ---------------------------------------------------------------- fans and divisors

Json to_json(const Cone& c) {
  Json out = Json::array();
  for (RayId id : c.rays) out.push_back(id);
  return out;
}

Json to_json(const Fan& f) {
  Json rays = Json::array(), cones = Json::array();
  for (const auto& v : f.rays()) rays.push_back(to_json(v));
  for (const auto& c : f.max_cones()) cones.push_back(to_json(c));
  return Json{{"rank", f.rank()}, {"rays", rays}, {"max_cones", cones}};
}

Fan fan_from_json(const Json& j, const std::string& where) {
  allow_keys(j, {"rank", "rays", "max_cones"}, where);
  Int r = int_from_json(field(j, "rank", where), at(where, "rank"));
  if (r < 0 || r > 64) throw SchemaError(at(where, "rank"), "rank must be between 0 and 64");
  const std::size_t rank = r.get_ui();
  std::string rw = at(where, "rays");
  const Json& jr = array(field(j, "rays", where), rw);
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < jr.size(); ++i) {
    IntVector v = int_vector(jr[i], at(rw, i));
    if (v.size() != rank)
      throw SchemaError(at(rw, i), "ray has " + std::to_string(v.size()) + " coordinates, rank is " + std::to_string(rank));
    if (std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; })) throw SchemaError(at(rw, i), "zero ray");
    if (!is_primitive(v)) throw SchemaError(at(rw, i), "ray " + vector_str(v) + " is not primitive");
    for (std::size_t k = 0; k < rays.size(); ++k)
      if (rays[k] == v) throw SchemaError(at(rw, i), "duplicate of rays[" + std::to_string(k) + "]");
    rays.push_back(std::move(v));
  }
  std::string cw = at(where, "max_cones");
  const Json& jc = array(field(j, "max_cones", where), cw);
  std::vector<Cone> cones;
  for (std::size_t i = 0; i < jc.size(); ++i) {
    std::vector<RayId> ids;
    for (std::size_t k = 0; k < array(jc[i], at(cw, i)).size(); ++k) {
      RayId id = static_cast<RayId>(index_from_json(jc[i][k], rays.size(), at(at(cw, i), k)));
      if (std::find(ids.begin(), ids.end(), id) != ids.end())
        throw SchemaError(at(at(cw, i), k), "ray " + std::to_string(id) + " repeated in a cone");
      ids.push_back(id);
    }
    cones.emplace_back(std::move(ids));
  }
  return Fan(rank, std::move(rays), std::move(cones));
}

Json to_json(const TDivisor& d) {
  Json out = Json::object();
  for (const auto& [id, v] : d.coeffs()) out[std::to_string(id)] = to_json(v);
  return out;
}

Json to_json(const QDivisor& d) {
  Json c = Json::object();
  for (const auto& [id, v] : d.coeffs()) c[std::to_string(id)] = to_json(v);
  return Json{{"coeffs", c}};
}

QDivisor qdivisor_from_json(const Json& j, const std::string& where) {
  allow_keys(j, {"coeffs"}, where);
  std::string cw = at(where, "coeffs");
  const Json& c = field(j, "coeffs", where);
  if (!c.is_object()) throw SchemaError(cw, "expected an object");
  QDivisor out;
  for (const auto& [k, v] : c.items()) out.set(ray_key(k, cw), rat_from_json(v, at(cw, k)));
  return out;
}

Json to_json(const DivClass& c) { return Json{{"free", to_json(c.free)}, {"torsion", to_json(c.torsion)}}; }

Json to_json(const FormalDivisor& d) {
  Json out = Json::object();
  for (const auto& [name, v] : d)
    if (v != 0) out[name] = to_json(v);
  return out;
}

FormalDivisor formal_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where, "expected an object of prime coefficients");
  FormalDivisor out;
  for (const auto& [k, v] : j.items()) {
    if (k.empty()) throw SchemaError(where, "empty prime name");
    Int x = int_from_json(v, at(where, k));
    if (x != 0) out[k] = x;
  }
  return out;
}

// ---------------------------------------------------------------- systems and certificates

Json to_json(const GeneratingSystem& gs) {
  Json items = Json::array();
  for (const auto& it : gs.items) {
    Json primes = Json::array();
    for (const auto& p : it.primes) primes.push_back(p);
    items.push_back(Json{{"normal", to_json(it.normal)}, {"primes", primes}});
  }
  return Json{{"dim", gs.dim}, {"wplus", to_json(gs.wplus)}, {"items", items}};
}

GeneratingSystem system_from_json(const Json& j, const std::string& where) {
  allow_keys(j, {"dim", "wplus", "items"}, where);
  GeneratingSystem gs;
  Int dim = int_from_json(field(j, "dim", where), at(where, "dim"));
  if (dim < 2 || dim > 64) throw SchemaError(at(where, "dim"), "dimension must be between 2 and 64");
  gs.dim = dim.get_ui();
  gs.wplus = int_vector(field(j, "wplus", where), at(where, "wplus"));
  std::string iw = at(where, "items");
  const Json& items = array(field(j, "items", where), iw);
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::string w = at(iw, i);
    allow_keys(items[i], {"normal", "primes"}, w);
    SystemItem it;
    it.normal = int_vector(field(items[i], "normal", w), at(w, "normal"));
    const Json& ps = array(field(items[i], "primes", w), at(w, "primes"));
    for (std::size_t k = 0; k < ps.size(); ++k) {
      if (!ps[k].is_string()) throw SchemaError(at(at(w, "primes"), k), "expected a prime name");
      if (!it.primes.insert(ps[k].get<std::string>()).second)
        throw SchemaError(at(at(w, "primes"), k), "repeated prime name");
    }
    gs.items.push_back(std::move(it));
  }
  if (auto problems = validate_system(gs); !problems.empty()) throw SchemaError(where, problems.front());
  return gs;
}

Json to_json(const GenerationCertificate& cert) {
  Json nodes = Json::array();
  for (const auto& n : cert.nodes) {
    Json jn{{"id", n.id}, {"target", to_json(n.target)}};
    if (n.kind == CertNode::Kind::Leaf) {
      jn["kind"] = "leaf";
      jn["chamber"] = n.chamber;
      if (!n.witness.empty()) jn["witness"] = to_json(n.witness);
    } else {
      jn["kind"] = "koszul";
      jn["d"] = to_json(n.d);
      jn["e"] = to_json(n.e);
      jn["children"] = n.children;
    }
    nodes.push_back(std::move(jn));
  }
  return Json{{"root", cert.root}, {"nodes", nodes}};
}

GenerationCertificate certificate_from_json(const Json& j, const std::string& where) {
  allow_keys(j, {"root", "nodes"}, where);
  GenerationCertificate cert;
  auto small = [](const Json& v, const std::string& w) {
    Int x = int_from_json(v, w);
    if (!x.fits_sint_p()) throw SchemaError(w, "node id out of range");
    return static_cast<int>(x.get_si());
  };
  cert.root = small(field(j, "root", where), at(where, "root"));
  std::string nw = at(where, "nodes");
  const Json& nodes = array(field(j, "nodes", where), nw);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string w = at(nw, i);
    const Json& jn = nodes[i];
    CertNode n;
    n.id = small(field(jn, "id", w), at(w, "id"));
    n.target = formal_from_json(field(jn, "target", w), at(w, "target"));
    const Json& kind = field(jn, "kind", w);
    if (kind == "leaf") {
      allow_keys(jn, {"id", "kind", "target", "chamber", "witness"}, w);
      n.kind = CertNode::Kind::Leaf;
      const Json& ch = field(jn, "chamber", w);
      if (!ch.is_string()) throw SchemaError(at(w, "chamber"), "expected a sign string");
      n.chamber = ch.get<std::string>();
      if (jn.contains("witness")) n.witness = rat_vector(jn["witness"], at(w, "witness"));
    } else if (kind == "koszul") {
      allow_keys(jn, {"id", "kind", "target", "d", "e", "children"}, w);
      n.kind = CertNode::Kind::Koszul;
      n.d = formal_from_json(field(jn, "d", w), at(w, "d"));
      n.e = formal_from_json(field(jn, "e", w), at(w, "e"));
      const Json& ch = array(field(jn, "children", w), at(w, "children"));
      for (std::size_t k = 0; k < ch.size(); ++k) n.children.push_back(small(ch[k], at(at(w, "children"), k)));
    } else {
      throw SchemaError(at(w, "kind"), "expected \"leaf\" or \"koszul\"");
    }
    cert.nodes.push_back(std::move(n));
  }
  return cert;
}

// ---------------------------------------------------------------- bondal

Json to_json(const BondalInstance& inst) {
  return Json{{"fan", to_json(inst.fan)}, {"sigma", to_json(inst.sigma)}, {"c0", to_json(inst.c0)}, {"c", to_json(inst.c)}};
}

BondalInstance instance_from_json(const Json& j, const std::string& where) {
  allow_keys(j, {"fan", "sigma", "c0", "c"}, where);
  BondalInstance inst;
  inst.fan = fan_from_json(field(j, "fan", where), at(where, "fan"));
  std::string sw = at(where, "sigma");
  const Json& js = array(field(j, "sigma", where), sw);
  std::vector<RayId> ids;
  for (std::size_t i = 0; i < js.size(); ++i)
    ids.push_back(static_cast<RayId>(index_from_json(js[i], inst.fan.num_rays(), at(sw, i))));
  inst.sigma = Cone(std::move(ids));
  inst.c0 = j.contains("c0") ? rat_from_json(j["c0"], at(where, "c0")) : Rat();
  if (j.contains("c")) inst.c = qdivisor_from_json(j["c"], at(where, "c"));
  return inst;
}

Json to_json(const FrobeniusDecomposition& fd) {
  Json table = Json::array();
  for (const auto& [c, k] : fd.multiplicities) table.push_back(Json{{"class", to_json(c)}, {"multiplicity", to_json(k)}});
  return Json{{"m", to_json(fd.m)}, {"source", to_json(fd.source)}, {"table", table}, {"total", to_json(fd.total())}};
}

Json to_json(const ThomsenCollection& tc) {
  return Json{{"classes", classes(tc.classes)},
              {"m_used", to_json(tc.m_used)},
              {"evidence", Json::array({to_json(tc.evidence.first), to_json(tc.evidence.second)})}};
}

Json to_json(const BondalReport& rep) {
  const auto& inst = rep.instance;
  Json normalized{{"fan", to_json(inst.fan)},         {"sigma", to_json(inst.sigma)},
                  {"l", inst.l},                       {"c0", to_json(inst.c0)},
                  {"c", to_json(inst.c)},              {"basis_change", to_json(inst.basis_change)},
                  {"shift", to_json(inst.shift)}};
  Json removed = Json::array();
  for (const auto& c : rep.open.removed) removed.push_back(to_json(c));
  Json eq1_failures = Json::array();
  for (const auto& u : rep.eq1_failures) eq1_failures.push_back(to_json(u));
  Json claim2 = Json::array();
  for (const auto& r : rep.claim2)
    claim2.push_back(Json{{"u", to_json(r.u)},
                          {"d", to_json(r.d)},
                          {"items", r.items},
                          {"chambers", r.chambers},
                          {"leaves", r.leaves},
                          {"koszul", r.koszul},
                          {"ok", r.ok},
                          {"failures", r.failures}});
  Json restriction = Json::array();
  for (const auto& r : rep.restriction)
    restriction.push_back(Json{{"u1", to_json(r.u1)},
                               {"grid", to_json(r.grid)},
                               {"restricted", classes(r.restricted)},
                               {"expected", classes(r.expected)},
                               {"prop45_witnesses", r.prop45_witnesses},
                               {"ok", r.ok}});
  return Json{{"normalized", normalized},
              {"removed_cones", removed},
              {"x_open", to_json(rep.open.x)},
              {"x_tilde_open", to_json(rep.open.x_tilde)},
              {"exceptional_ray", rep.exceptional},
              {"grid", to_json(rep.q)},
              {"eq1", Json{{"checks", rep.eq1_checks}, {"failures", eq1_failures}}},
              {"claim2", claim2},
              {"d_window", int_set(rep.d_window)},
              {"d_window_expected", int_set(rep.d_window_expected)},
              {"claim2_d_values", int_set(rep.claim2_d_values)},
              {"restriction", restriction},
              {"tilde_collection", to_json(rep.tilde_collection)},
              {"ok", rep.ok()}};
}

// ---------------------------------------------------------------- file wrappers

namespace {

template <class T, class F>
T parse_with(const std::string& path, F from) {
  Json j = read_json_file(path);
  try {
    return from(j, "");
  } catch (const SchemaError& e) {
    throw SchemaError(e.where().empty() ? path : path + ": " + e.where(),
                      e.where().empty() ? e.what() : std::string(e.what()).substr(e.where().size() + 2));
  }
}

}  // namespace

Fan parse_fan(const std::string& path) { return parse_with<Fan>(path, fan_from_json); }
QDivisor parse_qdivisor(const std::string& path) { return parse_with<QDivisor>(path, qdivisor_from_json); }
GeneratingSystem parse_system(const std::string& path) { return parse_with<GeneratingSystem>(path, system_from_json); }
GenerationCertificate parse_certificate(const std::string& path) {
  return parse_with<GenerationCertificate>(path, certificate_from_json);
}
BondalInstance parse_instance(const std::string& path) { return parse_with<BondalInstance>(path, instance_from_json); }

void emit_certificate(const GenerationCertificate& cert, const std::string& path) { write_file(path, dump(to_json(cert))); }

}  // namespace toric::io
