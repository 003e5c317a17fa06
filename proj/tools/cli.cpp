#include "cli.hpp"

#include "toric/io.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>

namespace toric::cli {

namespace {

using io::Json;

// A check ran to completion and failed.
struct CheckFailed {};

struct Options {
  std::string fan, divisor, system, cert, twist, instance, out, cone, c0, method = "both";
  long max_m = 0, m = 0, grid = 0;
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string vec_str(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::string vec_str(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

template <class Set>
std::string set_str(const Set& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& x : s) {
    out += (first ? "" : ", ") + x.get_str();
    first = false;
  }
  return out + "}";
}

void emit(const Options& o, const Json& j, std::ostream& out) {
  if (o.out.empty()) return;
  if (o.out == "-")
    out << io::dump(j);
  else
    io::write_file(o.out, io::dump(j));
}

Fan load_valid_fan(const std::string& path) {
  Fan f = io::parse_fan(path);
  if (auto problems = validate_fan(f); !problems.empty()) throw io::SchemaError(path, "invalid fan: " + problems.front());
  return f;
}

QDivisor load_divisor(const Options& o) { return o.divisor.empty() ? QDivisor() : io::parse_qdivisor(o.divisor); }

std::string group_str(const ClassGroup& g) {
  std::string s = "Z^" + std::to_string(g.free_rank());
  for (const auto& t : g.torsion_factors()) s += " + Z/" + t.get_str();
  return s;
}

// ---------------------------------------------------------------- commands

void fan_check(const Options& o, std::ostream& out) {
  Fan f = io::parse_fan(o.fan);
  auto problems = validate_fan(f);
  Json j{{"rank", f.rank()}, {"rays", f.num_rays()}, {"max_cones", f.max_cones().size()}, {"valid", problems.empty()},
         {"problems", problems}};
  out << "rank = " << f.rank() << ", rays = " << f.num_rays() << ", maximal cones = " << f.max_cones().size() << "\n";
  out << "valid = " << yes_no(problems.empty()) << "\n";
  for (const auto& p : problems) out << "  " << p << "\n";
  if (problems.empty()) {
    bool smooth = is_smooth(f), complete = is_complete(f), strata = has_codim_ge2_strata(f);
    ClassGroup g(f);
    out << "smooth = " << yes_no(smooth) << "\ncomplete = " << yes_no(complete)
        << "\ncodim>=2 strata = " << yes_no(strata) << "\nclass group = " << group_str(g) << "\n";
    j["smooth"] = smooth;
    j["complete"] = complete;
    j["codim_ge2_strata"] = strata;
    j["class_group"] = Json{{"free_rank", g.free_rank()}, {"torsion", io::to_json(g.torsion_factors())}};
  }
  emit(o, j, out);
  if (!problems.empty()) throw CheckFailed{};
}

std::vector<RayId> parse_cone(const std::string& s) {
  std::vector<RayId> ids;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      int id = std::stoi(tok, &pos);
      if (pos != tok.size() || id < 0) throw std::invalid_argument(tok);
      ids.push_back(id);
    } catch (const std::logic_error&) {
      throw io::SchemaError("--cone", "\"" + s + "\" is not a list of ray indices");
    }
  }
  return ids;
}

void fan_blowup(const Options& o, std::ostream& out) {
  Fan f = load_valid_fan(o.fan);
  auto s = stellar_subdivision(f, Cone(parse_cone(o.cone)));
  out << "new ray " << s.new_ray << " = " << vec_str(s.fan.ray(s.new_ray)) << "\nmaximal cones:";
  for (const auto& c : s.fan.max_cones()) out << " " << to_string(c);
  out << "\n";
  emit(o, io::to_json(s.fan), out);
}

void thomsen(const Options& o, std::ostream& out) {
  Fan f = load_valid_fan(o.fan);
  ThomsenOptions opt;
  if (o.max_m > 0) opt.max_m = Int(o.max_m);
  auto tc = thomsen_collection(f, load_divisor(o), opt);
  out << "m = " << tc.m_used << " (agreement between m = " << tc.evidence.first << " and m = " << tc.evidence.second
      << ")\nclasses (" << tc.classes.size() << "):\n";
  for (const auto& c : tc.classes) out << "  " << to_string(c) << "\n";
  emit(o, io::to_json(tc), out);
}

void frobenius(const Options& o, std::ostream& out) {
  Fan f = load_valid_fan(o.fan);
  if (o.m < 1) throw io::SchemaError("-m", "must be positive");
  Int m(o.m);
  QDivisor d = load_divisor(o);
  Json j{{"m", o.m}};
  std::optional<FrobeniusDecomposition> cube, lattice;
  if (o.method != "lattice") cube = frobenius_cube(f, m, d.scaled_to_integral(m));
  if (o.method != "cube") lattice = frobenius_lattice(f, m, d);
  auto table = [&](const char* name, const FrobeniusDecomposition& fd) {
    out << name << " (total " << fd.total() << "):\n";
    for (const auto& [c, k] : fd.multiplicities) out << "  " << to_string(c) << ": " << k << "\n";
    j[name] = io::to_json(fd);
  };
  if (cube) table("cube", *cube);
  if (lattice) table("lattice", *lattice);
  bool agree = !(cube && lattice) || cube->multiplicities == lattice->multiplicities;
  if (cube && lattice) {
    out << "methods " << (agree ? "agree" : "DISAGREE") << "\n";
    j["agree"] = agree;
  }
  emit(o, j, out);
  if (!agree) throw CheckFailed{};
}

FormalDivisor load_twist(const Options& o) {
  return o.twist.empty() ? FormalDivisor{} : io::formal_from_json(io::read_json_file(o.twist), o.twist);
}

void report_problems(const std::vector<std::string>& problems, std::ostream& out) {
  out << (problems.empty() ? "certificate verified\n" : "certificate REJECTED\n");
  for (const auto& p : problems) out << "  " << p << "\n";
}

void gensys_resolve(const Options& o, std::ostream& out) {
  auto gs = io::parse_system(o.system);
  auto twist = load_twist(o);
  auto cert = resolve(gs, twist);
  auto problems = verify_certificate(cert, gs, names_disjoint, twist);
  out << "nodes = " << cert.nodes.size() << ", leaves = " << cert.leaf_count()
      << ", koszul steps = " << cert.nodes.size() - cert.leaf_count() << "\n";
  for (const auto& n : cert.nodes)
    if (n.kind == CertNode::Kind::Leaf) out << "  leaf " << n.id << " [" << n.chamber << "] " << to_string(n.target) << "\n";
  report_problems(problems, out);
  emit(o, io::to_json(cert), out);
  if (!problems.empty()) throw CheckFailed{};
}

void gensys_verify(const Options& o, std::ostream& out) {
  auto cert = io::parse_certificate(o.cert);
  auto gs = io::parse_system(o.system);
  auto problems = verify_certificate(cert, gs, names_disjoint, load_twist(o));
  report_problems(problems, out);
  emit(o, Json{{"ok", problems.empty()}, {"problems", problems}}, out);
  if (!problems.empty()) throw CheckFailed{};
}

void bondal_run(const Options& o, std::ostream& out) {
  auto inst = io::parse_instance(o.instance);
  if (!o.c0.empty()) inst.c0 = io::rat_from_string(o.c0);
  if (o.grid < 1) throw io::SchemaError("--grid", "must be positive");
  auto rep = bondal_pipeline(inst, Int(o.grid));
  std::size_t c2_ok = 0, leaves = 0, koszul = 0, r_ok = 0;
  for (const auto& r : rep.claim2) {
    c2_ok += r.ok;
    leaves += r.leaves;
    koszul += r.koszul;
  }
  for (const auto& r : rep.restriction) r_ok += r.ok;
  const auto& n = rep.instance;
  out << "normalized: l = " << n.l << ", c0 = " << n.c0.str() << ", exceptional ray " << rep.exceptional << " = "
      << vec_str(rep.open.x_tilde.ray(rep.exceptional)) << "\n";
  out << "removed cones: " << rep.open.removed.size() << "\n";
  out << "eq1: " << rep.eq1_checks - rep.eq1_failures.size() << "/" << rep.eq1_checks << " points\n";
  for (const auto& u : rep.eq1_failures) out << "  FAILED at u = " << vec_str(u) << "\n";
  out << "claim2: " << c2_ok << "/" << rep.claim2.size() << " points, " << leaves << " leaves, " << koszul
      << " koszul steps\n";
  for (const auto& r : rep.claim2)
    for (const auto& f : r.failures) out << "  u = " << vec_str(r.u) << ": " << f << "\n";
  out << "d window: " << set_str(rep.d_window) << ", expected " << set_str(rep.d_window_expected)
      << (rep.d_window_ok() ? "" : " MISMATCH") << "\n";
  out << "restriction: " << r_ok << "/" << rep.restriction.size() << " values of u1\n";
  out << (rep.ok() ? "all checks passed" : "CHECKS FAILED") << "\n";
  emit(o, io::to_json(rep), out);
  if (!rep.ok()) throw CheckFailed{};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations on toric fans: Frobenius splittings, Thomsen collections, generating systems "
               "and blow-up checks.",
               "toricgen"};
  app.require_subcommand(1);
  Options o;
  std::function<void(const Options&, std::ostream&)> action;

  auto out_opt = [&](CLI::App* c) { c->add_option("--out", o.out, "Write the JSON report here ('-' for stdout)"); };

  auto* fan = app.add_subcommand("fan", "Fan utilities")->require_subcommand(1);
  auto* check = fan->add_subcommand("check", "Validate a fan and report its properties");
  check->add_option("fan", o.fan, "Fan JSON")->required();
  out_opt(check);
  check->callback([&] { action = fan_check; });
  auto* blowup = fan->add_subcommand("blowup", "Stellar subdivision at a cone");
  blowup->add_option("fan", o.fan, "Fan JSON")->required();
  blowup->add_option("--cone", o.cone, "Ray indices i,j,...")->required();
  out_opt(blowup);
  blowup->callback([&] { action = fan_blowup; });

  auto* th = app.add_subcommand("thomsen", "Thomsen collection of a Q-divisor");
  th->add_option("fan", o.fan, "Fan JSON")->required();
  th->add_option("--divisor", o.divisor, "Q-divisor JSON (default 0)");
  th->add_option("--max-m", o.max_m, "Largest grid denominator to try")->check(CLI::PositiveNumber);
  out_opt(th);
  th->callback([&] { action = thomsen; });

  auto* fr = app.add_subcommand("frobenius", "Splitting of the Frobenius pushforward");
  fr->add_option("fan", o.fan, "Fan JSON")->required();
  fr->add_option("-m", o.m, "Frobenius degree")->required()->check(CLI::PositiveNumber);
  fr->add_option("--method", o.method, "cube, lattice or both")->check(CLI::IsMember({"cube", "lattice", "both"}));
  fr->add_option("--divisor", o.divisor, "Q-divisor D with m*D integral (default 0)");
  out_opt(fr);
  fr->callback([&] { action = frobenius; });

  auto* gs = app.add_subcommand("gensys", "Generating systems")->require_subcommand(1);
  auto* res = gs->add_subcommand("resolve", "Build and verify a generation certificate");
  res->add_option("system", o.system, "System JSON")->required();
  res->add_option("--twist", o.twist, "Formal divisor JSON added to every target");
  out_opt(res);
  res->callback([&] { action = gensys_resolve; });
  auto* ver = gs->add_subcommand("verify", "Check a certificate against a system");
  ver->add_option("cert", o.cert, "Certificate JSON")->required();
  ver->add_option("system", o.system, "System JSON")->required();
  ver->add_option("--twist", o.twist, "Formal divisor JSON the root must equal");
  out_opt(ver);
  ver->callback([&] { action = gensys_verify; });

  auto* bo = app.add_subcommand("bondal", "Blow-up pipeline")->require_subcommand(1);
  auto* br = bo->add_subcommand("run", "Run every check of the pipeline on a grid");
  br->add_option("instance", o.instance, "Instance JSON")->required();
  br->add_option("--grid", o.grid, "Grid denominator")->required()->check(CLI::PositiveNumber);
  br->add_option("--c0", o.c0, "Override the exceptional coefficient (num/den)");
  out_opt(br);
  br->callback([&] { action = bondal_run; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    action(o, out);
    return 0;
  } catch (const CheckFailed&) {
    return 1;
  } catch (const NoStabilization& e) {
    err << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const SearchBudgetExceeded& e) {
    err << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const DisjointnessFailure& e) {
    err << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace toric::cli
