// Command-line front end: loads groupoid/functor/action documents, runs the
// library operations, prints key: value reports. Exit codes: 0 ok,
// 1 validation failure, 2 usage or file error.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "grpd/action.hpp"
#include "grpd/butterfly.hpp"
#include "grpd/finmap.hpp"
#include "grpd/fraction.hpp"
#include "grpd/functor.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/io.hpp"
#include "grpd/trivialize.hpp"

namespace {

using namespace grpd;

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kUsageError = 2;

struct Options {
  std::string format = "text";
  std::string out_path;
};

struct CliError {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{kUsageError, "cannot open '" + path + "'"};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out_path);
  if (!out) throw CliError{kUsageError, "cannot write '" + opt.out_path + "'"};
  out << text;
}

RawGroupoid load_raw(const std::string& path, const Options& opt) {
  std::string text = read_file(path);
  ParseResult res = opt.format == "json" ? parse_groupoid_json(text)
                                         : parse_groupoid_text(text);
  if (!res.ok()) {
    std::string msg = "parse error in '" + path + "':";
    for (const auto& e : res.errors)
      msg += "\n  line " + std::to_string(e.line) + ": " + e.message;
    throw CliError{kValidationFailure, msg};
  }
  return *res.groupoid;
}

GroupoidPtr load_groupoid(const std::string& path, const Options& opt) {
  ValidationResult res = validate(load_raw(path, opt));
  if (!res.ok())
    throw CliError{kValidationFailure, "invalid groupoid '" + path + "':\n" +
                                           format_diagnostics(res.issues)};
  return share(std::move(*res.groupoid));
}

Functor load_functor(const std::string& path, const Options& opt) {
  FunctorParseResult res = parse_functor_text(read_file(path));
  if (!res.ok()) {
    std::string msg = "parse error in '" + path + "':";
    for (const auto& e : res.errors)
      msg += "\n  line " + std::to_string(e.line) + ": " + e.message;
    throw CliError{kValidationFailure, msg};
  }
  const FunctorDocument& doc = *res.doc;
  auto resolve = [&](const std::string& ref,
                     const std::optional<RawGroupoid>& inl) {
    if (inl) {
      ValidationResult v = validate(*inl);
      if (!v.ok())
        throw CliError{kValidationFailure, "invalid inline groupoid in '" +
                                               path + "':\n" +
                                               format_diagnostics(v.issues)};
      return share(std::move(*v.groupoid));
    }
    return load_groupoid(ref, opt);
  };
  RawFunctor raw;
  raw.source = resolve(doc.source_path, doc.source_inline);
  raw.target = resolve(doc.target_path, doc.target_inline);
  raw.arrow_map = doc.arrow_map;
  raw.object_map = doc.object_map;
  FunctorValidation v = validate_functor(raw);
  if (!v.ok())
    throw CliError{kValidationFailure, "invalid functor '" + path + "':\n" +
                                           format_diagnostics(v.issues)};
  return *v.functor;
}

ActionLaw load_action(const std::string& path, const Options& opt) {
  ActionParseResult res = parse_action_text(read_file(path));
  if (!res.ok()) {
    std::string msg = "parse error in '" + path + "':";
    for (const auto& e : res.errors)
      msg += "\n  line " + std::to_string(e.line) + ": " + e.message;
    throw CliError{kValidationFailure, msg};
  }
  const ActionDocument& doc = *res.doc;
  GroupoidPtr g;
  if (doc.groupoid_inline) {
    ValidationResult v = validate(*doc.groupoid_inline);
    if (!v.ok())
      throw CliError{kValidationFailure,
                     "invalid inline groupoid in '" + path + "':\n" +
                         format_diagnostics(v.issues)};
    g = share(std::move(*v.groupoid));
  } else {
    g = load_groupoid(doc.groupoid_path, opt);
  }
  std::vector<std::string> points;
  std::vector<int> proj;
  for (const auto& [id, object] : doc.points) {
    int b = g->object_index(object);
    if (b < 0)
      throw CliError{kValidationFailure,
                     "point '" + id + "' lies over unknown object '" + object + "'"};
    points.push_back(id);
    proj.push_back(b);
  }
  auto point_index = [&](const std::string& id) {
    for (size_t i = 0; i < points.size(); ++i)
      if (points[i] == id) return static_cast<int>(i);
    throw CliError{kValidationFailure, "unknown point '" + id + "'"};
  };
  std::vector<int> act(static_cast<size_t>(g->arrow_count()) * points.size(),
                       -1);
  for (const auto& [arrow, from, to] : doc.act) {
    int a = g->arrow_index(arrow);
    if (a < 0)
      throw CliError{kValidationFailure, "unknown arrow '" + arrow + "'"};
    act[static_cast<size_t>(a) * points.size() + point_index(from)] =
        point_index(to);
  }
  ActionLaw law{g, points, proj, act};
  Diagnostics issues = check_action(law);
  if (!issues.empty())
    throw CliError{kValidationFailure,
                   "invalid action '" + path + "':\n" + format_diagnostics(issues)};
  return law;
}

// key: value report, or a JSON object with the same fields
struct Report {
  std::vector<std::pair<std::string, std::string>> fields;
  void add(const std::string& key, const std::string& value) {
    fields.push_back({key, value});
  }
  void add(const std::string& key, long value) {
    fields.push_back({key, std::to_string(value)});
  }
  void add(const std::string& key, bool value) {
    fields.push_back({key, value ? "true" : "false"});
  }
  std::string render(const Options& opt) const {
    if (opt.format == "json") {
      nlohmann::json j;
      for (const auto& [k, v] : fields) j[k] = v;
      return j.dump(2) + "\n";
    }
    std::ostringstream os;
    for (const auto& [k, v] : fields) os << k << ": " << v << "\n";
    return os.str();
  }
};

std::string join_labels(const std::set<std::string>& labels) {
  std::string out;
  for (const auto& l : labels) {
    if (!out.empty()) out += " ";
    out += l;
  }
  return out.empty() ? "(none)" : out;
}

std::string groupoid_payload(const Groupoid& g, const Options& opt) {
  RawGroupoid raw = to_raw(g);
  return opt.format == "json" ? serialize_groupoid_json(raw)
                              : serialize_groupoid_text(raw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite groupoid calculus"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", opt.out_path, "write the report to a file");
  // global options may follow the subcommand
  app.preparse_callback([&app](size_t) {
    for (CLI::App* sub : app.get_subcommands(
             [](const CLI::App*) { return true; }))
      sub->fallthrough();
  });

  std::string path_a, path_b, path_c, path_d;
  std::string map_spec, base_point;
  int max_size = 3;

  auto* validate_cmd = app.add_subcommand("validate", "check the groupoid axioms");
  validate_cmd->add_option("file", path_a)->required();

  auto* classify_cmd = app.add_subcommand("classify", "degeneracy labels");
  classify_cmd->add_option("file", path_a)->required();

  auto* orbits_cmd = app.add_subcommand("orbits", "orbit decomposition");
  orbits_cmd->add_option("file", path_a)->required();

  auto* triv_cmd = app.add_subcommand("trivialize", "trivialize a transitive groupoid");
  triv_cmd->add_option("file", path_a)->required();
  triv_cmd->add_option("--base-point", base_point, "object to anchor at");

  auto* fclass_cmd = app.add_subcommand("functor-classify", "classify a functor");
  fclass_cmd->add_option("file", path_a)->required();

  auto* pullback_cmd = app.add_subcommand("pullback", "induce along a map into the objects");
  pullback_cmd->add_option("file", path_a)->required();
  pullback_cmd->add_option("--map", map_spec, "e1=b1,e2=b2,...")->required();

  auto* kernel_cmd = app.add_subcommand("kernel", "kernel of a functor");
  kernel_cmd->add_option("file", path_a)->required();

  auto* quotient_cmd = app.add_subcommand("quotient", "two-sided quotient by a wide subgroupoid");
  quotient_cmd->add_option("groupoid", path_a)->required();
  quotient_cmd->add_option("subgroupoid", path_b)->required();

  auto* action_cmd = app.add_subcommand("action", "action groupoid and its actor");
  action_cmd->add_option("file", path_a)->required();

  auto* butterfly_cmd = app.add_subcommand("butterfly", "conjugate a principal actor");
  butterfly_cmd->add_option("file", path_a)->required();

  auto* squares_cmd = app.add_subcommand("squares", "groupoid of commuting squares");
  squares_cmd->add_option("file", path_a)->required();

  auto* frac_cmd = app.add_subcommand("fraction-compose", "compose two fractions");
  frac_cmd->add_option("num2", path_a)->required();
  frac_cmd->add_option("den2", path_b)->required();
  frac_cmd->add_option("num1", path_c)->required();
  frac_cmd->add_option("den1", path_d)->required();

  auto* holo_cmd = app.add_subcommand("holograph", "canonical fraction of a functor");
  holo_cmd->add_option("file", path_a)->required();

  auto* morita_cmd = app.add_subcommand("morita", "decide Morita equivalence");
  morita_cmd->add_option("first", path_a)->required();
  morita_cmd->add_option("second", path_b)->required();

  auto* cech_cmd = app.add_subcommand("cech", "covering presentation over a surjection");
  cech_cmd->add_option("file", path_a)->required();
  cech_cmd->add_option("--cover", map_spec, "u1=b1,u2=b2,...")->required();

  auto* diptych_cmd = app.add_subcommand("diptych-check", "stability axioms on finite sets");
  diptych_cmd->add_option("--max-size", max_size, "largest set in the family");

  auto* dot_cmd = app.add_subcommand("dot", "DOT graph output");
  dot_cmd->add_option("file", path_a)->required();
  bool dot_orbits = false;
  dot_cmd->add_flag("--orbits", dot_orbits, "cluster objects by orbit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  auto parse_map_spec = [&](const std::string& spec) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream is(spec);
    std::string item;
    while (std::getline(is, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw CliError{kUsageError, "bad map entry '" + item + "'"};
      out.push_back({item.substr(0, eq), item.substr(eq + 1)});
    }
    return out;
  };

  try {
    Report report;
    if (app.got_subcommand(validate_cmd)) {
      ValidationResult res = validate(load_raw(path_a, opt));
      report.add("valid", res.ok());
      if (!res.ok()) {
        report.add("violations", static_cast<long>(res.issues.size()));
        int i = 0;
        for (const auto& d : res.issues)
          report.add("violation." + std::to_string(i++), d.rule + ": " + d.detail);
      } else {
        report.add("objects", static_cast<long>(res.groupoid->object_count()));
        report.add("arrows", static_cast<long>(res.groupoid->arrow_count()));
      }
      write_output(opt, report.render(opt));
      return res.ok() ? kOk : kValidationFailure;
    }
    if (app.got_subcommand(classify_cmd)) {
      GroupoidPtr g = load_groupoid(path_a, opt);
      report.add("labels", join_labels(classify(*g).labels()));
      write_output(opt, report.render(opt));
      return kOk;
    }
    if (app.got_subcommand(orbits_cmd)) {
      GroupoidPtr g = load_groupoid(path_a, opt);
      AnchorAnalysis an = analyze_anchor(*g);
      report.add("orbits", static_cast<long>(an.orbits.size()));
      for (size_t k = 0; k < an.orbits.size(); ++k) {
        std::string objs;
        for (int b : an.orbits[k]) {
          if (!objs.empty()) objs += " ";
          objs += g->object_name(b);
        }
        report.add("orbit." + std::to_string(k), objs);
        report.add("isotropy." + std::to_string(k),
                   static_cast<long>(an.isotropy[an.orbits[k][0]].size()));
      }
      write_output(opt, report.render(opt));
      return kOk;
    }
    if (app.got_subcommand(triv_cmd)) {
      GroupoidPtr g = load_groupoid(path_a, opt);
      int e = base_point.empty() ? 0 : g->object_index(base_point);
      if (e < 0) throw CliError{kUsageError, "unknown base point '" + base_point + "'"};
      Trivialization t = trivialize(g, e);
      report.add("base-point", g->object_name(t.base_point));
      report.add("fiber-size", static_cast<long>(t.fiber.size()));
      report.add("isotropy-order",
                 static_cast<long>(analyze_anchor(*g).isotropy[e].size()));
      report.add("arrows", static_cast<long>(g->arrow_count()));
      report.add("model-arrows", static_cast<long>(t.trivial_model->arrow_count()));
      write_output(opt, report.render(opt));
      return kOk;
    }
    if (app.got_subcommand(fclass_cmd)) {
      Functor f = load_functor(path_a, opt);
      report.add("labels", join_labels(classify_morphism(f).labels()));
      write_output(opt, report.render(opt));
      return kOk;
    }
    if (app.got_subcommand(pullback_cmd)) {
      GroupoidPtr g = load_groupoid(path_a, opt);
      std::vector<std::string> space;
      std::vector<int> p;
      for (auto& [e, b] : parse_map_spec(map_spec)) {
        int ob = g->object_index(b);
        if (ob < 0) throw CliError{kUsageError, "unknown object '" + b + "'"};
        space.push_back(e);
        p.push_back(ob);
      }
      PullbackGroupoid pb = pullback_groupoid(g, space, p);
      write_output(opt, groupoid_payload(*pb.groupoid, opt));
      return kOk;
    }
    if (app.got_subcommand(kernel_cmd)) {
      Functor f = load_functor(path_a, opt);
      write_output(opt, groupoid_payload(kernel(f), opt));
      return kOk;
    }
    if (app.got_subcommand(quotient_cmd)) {
      GroupoidPtr h = load_groupoid(path_a, opt);
      GroupoidPtr k = load_groupoid(path_b, opt);
      BilateralQuotient q = bilateral_quotient(h, *k);
      write_output(opt, groupoid_payload(*q.quotient, opt));
      return kOk;
    }
    if (app.got_subcommand(action_cmd)) {
      ActionLaw a = load_action(path_a, opt);
      ActionGroupoid ag = action_to_actor(a);
      PrincipalityCheck pc = is_principal_action(a);
      report.add("arrows", static_cast<long>(ag.groupoid->arrow_count()));
      report.add("principal", pc.principal);
      if (!pc.principal)
        report.add("fixed-pair",
                   a.actor->arrow_name(pc.witness->first) + " @ " +
                       a.points[pc.witness->second]);
      report.add("actor", classify_morphism(ag.to_actor).actor);
      write_output(opt, report.render(opt) + groupoid_payload(*ag.groupoid, opt));
      return kOk;
    }
    if (app.got_subcommand(butterfly_cmd)) {
      Functor r = load_functor(path_a, opt);
      Butterfly b = conjugate_principal_actor(r);
      report.add("core-arrows", static_cast<long>(b.core->arrow_count()));
      report.add("wing-r-arrows", static_cast<long>(b.wing_r.arrow_count()));
      report.add("wing-r2-arrows", static_cast<long>(b.wing_r2.arrow_count()));
      report.add("conjugate-arrows",
                 static_cast<long>(b.leg_q2.target->arrow_count()));
      write_output(opt, report.render(opt) + emit_dot_butterfly(b));
      return kOk;
    }
    if (app.got_subcommand(squares_cmd)) {
      GroupoidPtr g = load_groupoid(path_a, opt);
      SquareGroupoid sq = square_groupoid(g);
      report.add("square-arrows", static_cast<long>(sq.box->arrow_count()));
      report.add("pi-up", join_labels(classify_morphism(sq.pi_up).labels()));
      report.add("pi-down", join_labels(classify_morphism(sq.pi_down).labels()));
      write_output(opt, report.render(opt));
      return kOk;
    }
    if (app.got_subcommand(frac_cmd)) {
      Meromorphism m2 = make_meromorphism(
          make_fraction(load_functor(path_a, opt), load_functor(path_b, opt)));
      Meromorphism m1 = make_meromorphism(
          make_fraction(load_functor(path_c, opt), load_functor(path_d, opt)));
      Meromorphism m = compose_meromorphisms(m2, m1);
      report.add("core-arrows",
                 static_cast<long>(m.rep.num.source->arrow_count()));
      report.add("cotransversal", m.cotransversal);
      report.add("irreducible", m.irreducible);
      write_output(opt, report.render(opt));
      return kOk;
    }
    if (app.got_subcommand(holo_cmd)) {
      Functor f = load_functor(path_a, opt);
      Holograph h = holograph(f);
      report.add("core-arrows",
                 static_cast<long>(h.fraction.num.source->arrow_count()));
      report.add("denominator",
                 join_labels(classify_morphism(h.fraction.den).labels()));
      report.add("numerator",
                 join_labels(classify_morphism(h.fraction.num).labels()));
      report.add("split", true);
      write_output(opt, report.render(opt));
      return kOk;
    }
    if (app.got_subcommand(morita_cmd)) {
      GroupoidPtr g = load_groupoid(path_a, opt);
      GroupoidPtr h = load_groupoid(path_b, opt);
      MoritaResult res = morita_equivalent(g, h);
      report.add("equivalent", res.equivalent);
      if (res.witness) {
        report.add("witness-core-arrows",
                   static_cast<long>(res.witness->core->arrow_count()));
        report.add("witness-irreducible", res.witness->irreducible);
      }
      write_output(opt, report.render(opt));
      return kOk;
    }
    if (app.got_subcommand(cech_cmd)) {
      GroupoidPtr g = load_groupoid(path_a, opt);
      std::vector<std::string> cover;
      std::vector<int> r;
      for (auto& [u, b] : parse_map_spec(map_spec)) {
        int ob = g->object_index(b);
        if (ob < 0) throw CliError{kUsageError, "unknown object '" + b + "'"};
        cover.push_back(u);
        r.push_back(ob);
      }
      CechPresentation c = cech_presentation(g, cover, r);
      report.add("induced-arrows",
                 static_cast<long>(c.induced->arrow_count()));
      report.add("core-arrows", static_cast<long>(c.cover_core->arrow_count()));
      report.add("legs-split", true);
      report.add("morita-equivalent",
                 morita_equivalent(g, c.induced).equivalent);
      write_output(opt, report.render(opt));
      return kOk;
    }
    if (app.got_subcommand(diptych_cmd)) {
      AxiomReport res = check_axioms(max_size);
      report.add("checked", res.checked);
      report.add("failures", static_cast<long>(res.failures.size()));
      int i = 0;
      for (const auto& f : res.failures)
        report.add("failure." + std::to_string(i++), f);
      write_output(opt, report.render(opt));
      return res.ok() ? kOk : kValidationFailure;
    }
    if (app.got_subcommand(dot_cmd)) {
      GroupoidPtr g = load_groupoid(path_a, opt);
      write_output(opt, dot_orbits ? emit_dot_orbits(*g) : emit_dot(*g));
      return kOk;
    }
    throw CliError{kUsageError, "no subcommand"};
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kUsageError;
  }
}
