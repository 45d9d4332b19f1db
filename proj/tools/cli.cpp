#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "netdual/codegen.hpp"
#include "netdual/errors.hpp"
#include "netdual/evaluate.hpp"
#include "netdual/inequalities.hpp"
#include "netdual/info_expression.hpp"
#include "netdual/json_io.hpp"
#include "netdual/lp_bound.hpp"
#include "netdual/witness.hpp"

namespace netdual::cli {

namespace {

/// A command's verdict. With empty `text` the document is printed in both modes.
struct Outcome {
  int code = 0;
  Json doc;
  std::string text;
};

class Inputs {
 public:
  explicit Inputs(std::istream& in) : in_(in) {}

  static std::string name(const std::string& path) { return path == "-" ? "<stdin>" : path; }

  std::string text(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
      if (stdin_used_) throw StructuralError("<stdin>: standard input can be read only once");
      stdin_used_ = true;
      buf << in_.rdbuf();
    } else {
      std::ifstream f(path);
      if (!f) throw StructuralError(path + ": cannot open file");
      buf << f.rdbuf();
    }
    return buf.str();
  }

  Json json(const std::string& path) { return parse_json(text(path), name(path)); }

 private:
  std::istream& in_;
  bool stdin_used_ = false;
};

/// Decodes a document, prefixing any complaint with the file it came from.
template <class F>
auto decode(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StructuralError& e) {
    throw StructuralError(Inputs::name(path) + ": " + e.what());
  }
}

constexpr const char* kGDagger = "netdual.gdagger/1";

SetFunction load_setfunction(Inputs& inputs, const std::string& path) {
  const Json doc = inputs.json(path);
  return decode(path, [&] { return setfunction_from_json(doc); });
}

Network load_network(Inputs& inputs, const std::string& path) {
  const Json doc = inputs.json(path);
  return decode(path, [&] {
    return format_of(doc) == kGDagger ? network_from_json(doc.at("network"), "/network") : network_from_json(doc);
  });
}

ConnectionRequirement load_connection(Inputs& inputs, const std::string& path) {
  const Json doc = inputs.json(path);
  return decode(path, [&] {
    return format_of(doc) == kGDagger ? connection_from_json(doc.at("connection"), "/connection")
                                      : connection_from_json(doc);
  });
}

RateCapacityTuple load_tuple(Inputs& inputs, const std::string& path) {
  const Json doc = inputs.json(path);
  return decode(path, [&] {
    if (format_of(doc) != kGDagger) return tuple_from_json(doc);
    if (!doc.contains("tuple")) throw StructuralError("/: G-dagger document has no tuple (construct it with --h)");
    return tuple_from_json(doc.at("tuple"), "/tuple");
  });
}

/// A support given directly or as the coset support of a subgroup or subspace family.
SupportSet load_support(Inputs& inputs, const std::string& path) {
  const Json doc = inputs.json(path);
  return decode(path, [&] {
    const std::string f = format_of(doc);
    if (f == "netdual.subgroup-family/1") return coset_support(subgroup_family_from_json(doc));
    if (f == "netdual.subspace-family/1") return coset_support(subspace_family_from_json(doc));
    return support_from_json(doc);
  });
}

std::string bits(const LogScalar& x) {
  std::ostringstream os;
  os << "(" << std::setprecision(6) << x.to_double() / std::log(2.0) << " bits)";
  return os.str();
}

std::string value_text(const LogScalar& x) { return x.str() + "  " + bits(x); }

std::string rational_text(const Rational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : format_rational(q);
}

std::string braces(const GroundSet& g, Subset s) { return "{" + g.format(s) + "}"; }

std::string function_table(const SetFunction& f) {
  std::ostringstream os;
  for (Subset s = 1; s <= f.full(); ++s) os << "H" << braces(f.ground(), s) << " = " << value_text(f(s)) << "\n";
  return os.str();
}

Json report(const std::string& command) { return {{"format", "netdual.report/1"}, {"command", command}}; }

Outcome check(Inputs& inputs, const std::string& kind, const std::string& path, std::size_t limit) {
  const SetFunction f = load_setfunction(inputs, path);
  ViolationReport r;
  std::string what;
  if (kind == "poly") {
    r = check_polymatroid(f);
    what = "polymatroid check";
  } else if (kind == "ingleton") {
    r = check_ingleton(f);
    what = "Ingleton check";
  } else {
    r = check_zhang_yeung(f);
    what = "Zhang-Yeung check";
  }
  Outcome o{r.empty() ? 0 : 1, report("check " + kind), ""};
  o.doc["holds"] = r.empty();
  o.doc["violation_count"] = r.instances.size();
  Json list = Json::array();
  std::ostringstream text;
  if (r.empty()) {
    text << what << ": passed\n";
  } else {
    text << what << ": FAILED with " << r.instances.size() << " violation(s)\n";
  }
  for (std::size_t k = 0; k < r.instances.size() && k < limit; ++k) {
    const auto& v = r.instances[k];
    Json args = Json::array();
    for (Subset s : v.arguments) args.push_back(braces(f.ground(), s));
    list.push_back({{"family", to_string(v.family)}, {"arguments", args}, {"slack", to_json(v.slack)},
                    {"text", describe(v, f.ground())}});
    text << "  " << describe(v, f.ground()) << "  " << bits(v.slack) << "\n";
  }
  if (r.instances.size() > limit) text << "  ... " << r.instances.size() - limit << " more\n";
  o.doc["violations"] = list;
  o.text = text.str();
  return o;
}

Outcome entropy_outcome(const SetFunction& h, const std::string& title) {
  return {0, to_json(h), title + "\n" + function_table(h)};
}

Outcome support_outcome(const SupportSet& s) {
  std::ostringstream text;
  text << "support of " << s.size() << " tuples, alphabet sizes";
  for (const auto& a : s.alphabets) text << " " << a.size();
  text << "\n";
  return {0, to_json(s), text.str()};
}

Outcome qu_check(Inputs& inputs, const std::string& path) {
  const SupportSet s = load_support(inputs, path);
  const auto r = quasi_uniform_check(s);
  Outcome o{r.quasi_uniform ? 0 : 1, report("qu check"), ""};
  const GroundSet g = r.entropy.ground();
  Json failing = Json::array();
  for (Subset a : r.failing) failing.push_back(braces(g, a));
  o.doc["quasi_uniform"] = r.quasi_uniform;
  o.doc["failing"] = failing;
  o.doc["entropy"] = to_json(r.entropy);
  std::ostringstream text;
  text << (r.quasi_uniform ? "quasi-uniform\n" : "NOT quasi-uniform\n");
  if (!r.quasi_uniform) {
    text << "non-uniform projections:";
    for (Subset a : r.failing) text << " " << braces(g, a);
    text << "\n";
  } else {
    text << function_table(r.entropy);
  }
  o.text = text.str();
  return o;
}

Outcome construct(Inputs& inputs, int n, const std::string& h_path, const std::string& dot_path) {
  const GDaggerLayout layout = build_gdagger(n);
  std::optional<RateCapacityTuple> tuple;
  if (!h_path.empty()) {
    const SetFunction h = load_setfunction(inputs, h_path);
    if (h.size() != n) throw ArgumentError("h has " + std::to_string(h.size()) + " elements, expected " + std::to_string(n));
    tuple = rate_capacity(h, layout);
  }
  if (!dot_path.empty()) {
    std::ofstream f(dot_path);
    if (!f) throw StructuralError(dot_path + ": cannot write file");
    f << to_dot(tuple ? with_capacities(layout.network, *tuple) : layout.network, layout.conn);
  }
  return {0, to_json(layout, tuple ? &*tuple : nullptr), ""};
}

Outcome code_verify(Inputs& inputs, const std::vector<std::string>& files) {
  const Network net = load_network(inputs, files[0]);
  const ConnectionRequirement conn = load_connection(inputs, files[1]);
  const Json code_doc = inputs.json(files[2]);
  const NetworkCode code = decode(files[2], [&] { return code_from_json(code_doc); });
  const RateCapacityTuple tuple = load_tuple(inputs, files[3]);
  conn.validate(net);
  const auto ev = evaluate_code(net, conn, code);
  const auto alphabet = alphabet_violations(net, code, tuple);
  const bool admissible = ev.zero_error && alphabet.empty();
  Outcome o{admissible ? 0 : 1, report("code verify"), ""};
  o.doc["zero_error"] = ev.zero_error;
  o.doc["admissible"] = admissible;
  o.doc["alphabet_violations"] = alphabet;
  Json failing = Json::array();
  std::ostringstream text;
  text << "zero-error: " << (ev.zero_error ? "yes" : "no") << "\n";
  for (const auto& f : ev.failing_inputs) {
    failing.push_back({{"sources", f.sources}, {"receiver", f.receiver}, {"session", f.session}, {"decoded", f.decoded}});
    text << "  " << f.receiver << " decodes " << f.session << " as " << f.decoded << " on";
    for (const auto& [s, v] : f.sources) text << " " << s << "=" << v;
    text << "\n";
  }
  o.doc["failing_inputs"] = failing;
  if (!alphabet.empty()) text << "alphabets exceeding the tuple:\n";
  for (const auto& a : alphabet) text << "  " << a << "\n";
  text << "admissible: " << (admissible ? "yes" : "no") << "\n";
  o.text = text.str();
  return o;
}

Outcome lp_feasible_cmd(Inputs& inputs, const std::vector<std::string>& files, bool ingleton, int cap) {
  const Network net = load_network(inputs, files[0]);
  const ConnectionRequirement conn = load_connection(inputs, files[1]);
  const RateCapacityTuple tuple = load_tuple(inputs, files[2]);
  conn.validate(net);
  std::vector<InfoExpression> extra;
  if (ingleton) extra.push_back(ingleton_expression());
  LpOptions options;
  options.ground_cap = cap;
  const LpResult r = lp_feasible(net, conn, tuple, extra, options);
  Outcome o{r.feasible ? 0 : 1, report(ingleton ? "lp feasible --ingleton" : "lp feasible"), ""};
  o.doc["feasible"] = r.feasible;
  o.doc["variables"] = r.variables;
  o.doc["constraints"] = r.constraints;
  o.doc["pivots"] = r.pivots;
  std::ostringstream text;
  text << (r.feasible ? "feasible" : "INFEASIBLE") << " (" << r.variables << " variables, " << r.constraints
       << " constraints, " << r.pivots << " pivots)\n";
  Json cert = Json::array();
  for (const auto& [what, y] : r.certificate) {
    cert.push_back({{"constraint", what}, {"multiplier", format_rational(y)}});
    text << "  " << rational_text(y) << " x  " << what << "\n";
  }
  o.doc["certificate"] = cert;
  if (r.point) o.doc["point"] = to_json(*r.point);
  o.text = text.str();
  return o;
}

Outcome lp_implies(Inputs& inputs, const std::string& path, int n) {
  const std::string src = inputs.text(path);
  const InfoExpression expr = decode(path, [&] { return InfoExpression::parse(src); });
  const auto r = shannon_implies(expr, n);
  Outcome o{r.implied ? 0 : 1, report("lp implies"), ""};
  o.doc["expression"] = expr.str();
  o.doc["n"] = n;
  o.doc["implied"] = r.implied;
  std::ostringstream text;
  text << expr.str() << "\n" << (r.implied ? "implied by the elemental inequalities\n" : "NOT Shannon-implied\n");
  const GroundSet g = GroundSet::numbered(n);
  Json combo = Json::array();
  for (const auto& [e, c] : r.combination) {
    combo.push_back({{"inequality", describe(e, g)}, {"coefficient", format_rational(c)}});
    text << "  " << rational_text(c) << " x  " << describe(e, g) << "\n";
  }
  o.doc["combination"] = combo;
  if (r.counterexample) {
    o.doc["counterexample"] = to_json(*r.counterexample);
    text << "counterexample polymatroid, left side " << value_text(expr.evaluate(*r.counterexample)) << ":\n"
         << function_table(*r.counterexample);
  }
  o.text = text.str();
  return o;
}

Outcome witness_build(Inputs& inputs, const std::string& path, int n) {
  const SetFunction h = load_setfunction(inputs, path);
  const GDaggerLayout layout = build_gdagger(n);
  try {
    return {0, to_json(build_witness(h, layout)), ""};
  } catch (const CertificateInvalid& e) {
    Outcome o{1, report("witness build"), std::string("certificate invalid: ") + e.what() + "\n"};
    o.doc["valid"] = false;
    o.doc["reason"] = e.what();
    return o;
  }
}

Outcome witness_verify(Inputs& inputs, const std::string& cert_path, const std::string& tuple_path) {
  const Json doc = inputs.json(cert_path);
  const WitnessCertificate cert = decode(cert_path, [&] { return witness_from_json(doc); });
  const RateCapacityTuple tuple = load_tuple(inputs, tuple_path);
  const GDaggerLayout layout = build_gdagger(cert.n);
  const auto r = verify_connection_constraints(cert, layout, tuple);
  Outcome o{r.ok ? 0 : 1, report("witness verify"), ""};
  o.doc["valid"] = r.ok;
  o.doc["clauses"] = r.clauses;
  o.doc["failures"] = r.failures;
  std::ostringstream text;
  text << (r.ok ? "valid" : "INVALID") << " (" << r.clauses << " clauses, " << cert.locals.size() << " local functions)\n";
  for (const auto& f : r.failures) text << "  " << f << "\n";
  o.text = text.str();
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact set-function, network-code and LP outer-bound tools", "netdual"};
  app.fallthrough();
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Print the report as JSON");

  std::function<Outcome(Inputs&)> action;
  std::vector<std::string> files;
  std::string h_path, dot_path, a_text = "1";
  int n = 0, cap = 10;
  std::size_t limit = 20;
  bool ingleton = false;

  auto file_arg = [&](CLI::App* c, const char* name, std::size_t count) {
    c->add_option(name, files, "Input files, - for standard input")->required()->expected(static_cast<int>(count));
  };
  auto n_option = [&](CLI::App* c) { c->add_option("--n", n, "Number of variables N")->required()->check(CLI::PositiveNumber); };

  auto* chk = app.add_subcommand("check", "Check a set function against an inequality family")->require_subcommand(1);
  const std::pair<const char*, const char*> kinds[] = {
      {"poly", "Elemental Shannon inequalities"},
      {"ingleton", "Ingleton, every role assignment"},
      {"zy", "Zhang-Yeung, every role assignment"}};
  for (const auto& [kind, what] : kinds) {
    auto* c = chk->add_subcommand(kind, what);
    file_arg(c, "file", 1);
    c->add_option("--limit", limit, "Violations listed");
    const std::string k = kind;
    c->callback([&, k] { action = [&, k](Inputs& i) { return check(i, k, files[0], limit); }; });
  }

  auto* grp = app.add_subcommand("group", "Subgroup families")->require_subcommand(1);
  auto* ge = grp->add_subcommand("entropy", "Entropy function of a subgroup family");
  file_arg(ge, "file", 1);
  ge->callback([&] {
    action = [&](Inputs& i) {
      const Json doc = i.json(files[0]);
      return entropy_outcome(entropy_from_subgroups(decode(files[0], [&] { return subgroup_family_from_json(doc); })),
                             "subgroup entropy");
    };
  });
  auto* gs = grp->add_subcommand("support", "Coset support of a subgroup family");
  file_arg(gs, "file", 1);
  gs->callback([&] {
    action = [&](Inputs& i) {
      const Json doc = i.json(files[0]);
      return support_outcome(coset_support(decode(files[0], [&] { return subgroup_family_from_json(doc); })));
    };
  });

  auto* sub = app.add_subcommand("subspace", "Subspace families")->require_subcommand(1);
  auto* se = sub->add_subcommand("entropy", "Entropy function of a subspace family");
  file_arg(se, "file", 1);
  se->callback([&] {
    action = [&](Inputs& i) {
      const Json doc = i.json(files[0]);
      return entropy_outcome(entropy_from_subspaces(decode(files[0], [&] { return subspace_family_from_json(doc); })),
                             "subspace entropy");
    };
  });

  auto* qu = app.add_subcommand("qu", "Quasi-uniform supports")->require_subcommand(1);
  auto* qc = qu->add_subcommand("check", "Check that a support is quasi-uniform");
  file_arg(qc, "file", 1);
  qc->callback([&] { action = [&](Inputs& i) { return qu_check(i, files[0]); }; });

  auto* con = app.add_subcommand("construct", "Build networks")->require_subcommand(1);
  auto* gd = con->add_subcommand("gdagger", "The network G-dagger(N), with M(h) when --h is given");
  n_option(gd);
  gd->set_help_flag("--help", "Print this help message and exit");
  gd->add_option("--h", h_path, "Set function on N elements");
  gd->add_option("--dot", dot_path, "Write a Graphviz rendering here");
  gd->callback([&] { action = [&](Inputs& i) { return construct(i, n, h_path, dot_path); }; });

  auto* code = app.add_subcommand("code", "Network codes")->require_subcommand(1);
  auto* build = code->add_subcommand("build", "Codes on G-dagger(N)")->require_subcommand(1);
  auto* bq = build->add_subcommand("qu", "Code from a quasi-uniform support, subgroup or subspace family");
  file_arg(bq, "file", 1);
  n_option(bq);
  bq->callback([&] {
    action = [&](Inputs& i) {
      const SupportSet s = load_support(i, files[0]);
      return Outcome{0, to_json(quasi_uniform_code(s, build_gdagger(n))), ""};
    };
  });
  auto* bl = build->add_subcommand("linear", "Linear code from a subspace family");
  file_arg(bl, "file", 1);
  n_option(bl);
  bl->callback([&] {
    action = [&](Inputs& i) {
      const Json doc = i.json(files[0]);
      const SubspaceFamily fam = decode(files[0], [&] { return subspace_family_from_json(doc); });
      return Outcome{0, to_json(linear_code(fam, build_gdagger(n))), ""};
    };
  });
  auto* cv = code->add_subcommand("verify", "Zero-error and admissibility check");
  file_arg(cv, "files", 4);
  cv->callback([&] { action = [&](Inputs& i) { return code_verify(i, files); }; });

  auto* lp = app.add_subcommand("lp", "LP outer bound")->require_subcommand(1);
  auto* lf = lp->add_subcommand("feasible", "Is the tuple inside the LP bound?");
  file_arg(lf, "files", 3);
  lf->add_flag("--ingleton", ingleton, "Add every Ingleton instance");
  lf->add_option("--cap", cap, "Largest number of session and edge variables");
  lf->callback([&] { action = [&](Inputs& i) { return lp_feasible_cmd(i, files, ingleton, cap); }; });
  auto* li = lp->add_subcommand("implies", "Is an information inequality Shannon-implied?");
  file_arg(li, "file", 1);
  n_option(li);
  li->callback([&] { action = [&](Inputs& i) { return lp_implies(i, files[0], n); }; });

  auto* wit = app.add_subcommand("witness", "Local witness certificates on G-dagger(N)")->require_subcommand(1);
  auto* wb = wit->add_subcommand("build", "Certificate for M(h)");
  file_arg(wb, "file", 1);
  n_option(wb);
  wb->callback([&] { action = [&](Inputs& i) { return witness_build(i, files[0], n); }; });
  auto* wv = wit->add_subcommand("verify", "Check a certificate against a tuple");
  file_arg(wv, "files", 2);
  wv->callback([&] { action = [&](Inputs& i) { return witness_verify(i, files[0], files[1]); }; });

  auto* bi = app.add_subcommand("builtin", "Built-in set functions")->require_subcommand(1);
  auto* bz = bi->add_subcommand("zy", "The Zhang-Yeung counterexample, scaled by --a");
  bz->add_option("--a", a_text, "Positive rational scale");
  bz->callback([&] {
    action = [&](Inputs&) { return Outcome{0, to_json(zy_function(parse_rational(a_text))), ""}; };
  });
  auto* bp = bi->add_subcommand("projective-plane", "Entropy function from the projective plane of order 3");
  bp->callback([&] { action = [&](Inputs&) { return Outcome{0, to_json(projective_plane_function()), ""}; }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "netdual: " << e.what() << "\n";
    return 2;
  }

  try {
    Inputs inputs(in);
    const Outcome o = action(inputs);
    if (json || o.text.empty()) {
      out << o.doc.dump(2) << "\n";
    } else {
      out << o.text;
    }
    return o.code;
  } catch (const std::exception& e) {
    err << "netdual: error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace netdual::cli
