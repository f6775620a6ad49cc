// Command-line driver: parses a specification file and runs one command on it.
//
// Exit codes: 0 success, 1 invalid input or negative result, 2 usage error,
// 3 a budget or enumeration cap was exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dialog/decorate.hpp"
#include "dialog/dsl.hpp"
#include "dialog/equational_sketch.hpp"
#include "dialog/exact.hpp"
#include "dialog/format.hpp"
#include "dialog/inference.hpp"
#include "dialog/models.hpp"
#include "dialog/parameterize.hpp"

namespace {

using namespace dialog;
using format::Fields;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Collects both renderings; the chosen one is printed at the end.
struct Output {
  std::ostringstream text;
  Fields fields;
};

struct Options {
  std::string file;
  std::string format = "text";
  int depth = -1;
  bool trace = false;
  double cap = 0;
  std::size_t size = 2;
  std::size_t bound = 2;
  std::size_t model = 0;
  std::size_t alpha = 0;
  std::size_t m0 = 0;
  CarrierSizes carriers;  // from --T=k
};

SpecDocument load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_document(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ":" + e.message());
  }
}

// Carrier sizes for the base types of `s`: --T=k where given, else --size.
CarrierSizes sizes_for(const Specification& s, const Options& o, const std::vector<std::string>& extra_types = {}) {
  CarrierSizes out;
  for (const auto& t : base_types(s)) out[t] = o.size;
  for (const auto& t : extra_types) out[t] = o.size;
  for (const auto& [t, k] : o.carriers) {
    if (!out.count(t)) throw UsageError("--" + t + " is not a base type of the specification");
    out[t] = k;
  }
  return out;
}

std::string sizes_text(const CarrierSizes& c) {
  std::vector<std::string> parts;
  for (const auto& [t, k] : c) parts.push_back(t + "=" + std::to_string(k));
  return format::join(parts, " ");
}

EnumerationOptions enumeration(const Options& o) {
  EnumerationOptions e;
  if (o.cap > 0) e.cap = o.cap;
  return e;
}

void counts_fields(Output& out, const std::string& prefix, const Specification& s) {
  FeatureCounts c = counts(s);
  out.fields.add(prefix + "types", c.types);
  out.fields.add(prefix + "terms", c.terms);
  out.fields.add(prefix + "equations", c.equations);
}

int meta_check(const Options& o, Output& out) {
  SpecDocument doc = load(o.file);
  LimitSketch sk = equational_sketch_with_equations();
  FiniteRealization r = spec_to_realization(doc.base());
  std::vector<std::string> problems = check_realization(sk, r);
  bool inverse = false;
  if (problems.empty()) inverse = iso_search(realization_to_spec(r), doc.base()).found();
  out.text << "meta-sketch: " << sk.points.size() << " points, " << sk.arrows.size() << " arrows\n";
  for (const auto& [p, set] : r.sets) out.text << "  " << p << ": " << set.size() << "\n";
  for (const auto& p : problems) out.text << "violation: " << p << "\n";
  out.text << "realization " << (problems.empty() ? "ok" : "invalid") << "\n";
  out.text << "round trip " << (inverse ? "ok" : "failed") << "\n";
  for (const auto& [p, set] : r.sets) out.fields.add("point." + p, set.size());
  out.fields.add("violations", problems.size());
  out.fields.add("realization", problems.empty() ? "ok" : "invalid");
  out.fields.add("round_trip", inverse ? "ok" : "failed");
  return problems.empty() && inverse ? 0 : 1;
}

int validate_cmd(const Options& o, Output& out) {
  SpecDocument doc = load(o.file);
  std::vector<std::string> problems = validate(doc.base());
  if (doc.decorated)
    for (auto& p : validate_decorated(doc.spec)) problems.push_back(std::move(p));
  FeatureCounts c = counts(doc.base());
  out.text << "types " << c.types << ", terms " << c.terms << ", equations " << c.equations << "\n";
  if (doc.decorated) out.text << "pure terms " << doc.spec.pure_terms.size() << "\n";
  if (doc.parameter_type) out.text << "parameter type " << *doc.parameter_type << "\n";
  if (doc.parameter_constant) out.text << "parameter constant " << *doc.parameter_constant << "\n";
  for (const auto& p : problems) out.text << "problem: " << p << "\n";
  out.text << (problems.empty() ? "valid" : "invalid") << "\n";
  counts_fields(out, "", doc.base());
  out.fields.add("decorated", doc.decorated ? "true" : "false");
  if (doc.decorated) out.fields.add("pure_terms", doc.spec.pure_terms.size());
  out.fields.add("problems", problems.size());
  out.fields.add("valid", problems.empty() ? "true" : "false");
  return problems.empty() ? 0 : 1;
}

int saturate_cmd(const Options& o, Output& out) {
  SpecDocument doc = load(o.file);
  SaturationOptions so;
  if (o.cap > 0) so.term_cap = static_cast<std::size_t>(o.cap);
  int depth = o.depth < 0 ? 2 : o.depth;
  SaturationResult r = saturate(doc.base(), depth, so);
  out.text << dump(r.spec);
  if (o.trace) out.text << "# trace\n" << format::trace_text(r.trace);
  out.fields.add("depth", std::to_string(depth));
  counts_fields(out, "", r.spec);
  out.fields.add("steps", r.trace.size());
  if (o.trace)
    for (std::size_t i = 0; i < r.trace.size(); ++i)
      out.fields.add("trace." + std::to_string(i + 1), format::trace_line(r.trace[i]));
  return 0;
}

int entail_cmd(const Options& o, Output& out) {
  SpecDocument doc = load(o.file);
  if (doc.goals.empty()) throw UsageError(o.file + " has no goal statements");
  int depth = o.depth < 0 ? 3 : o.depth;
  GoalExtension g = goal_extension(doc);
  EntailmentVerdict v = is_entailment(g.inclusion, depth);
  if (o.trace) {
    out.text << "# trace\n" << format::trace_text(g.trace);
    out.text << "# goals\n";
    EqualityOptions quiet;
    quiet.search_countermodel = false;
    for (std::size_t i = 0; i < doc.goals.size(); ++i) {
      const auto& [l, r] = doc.goals[i];
      EqualityVerdict e = exprs_equal(doc.base(), l, r, depth, quiet);
      std::string line = dsl_expr(l) + " = " + dsl_expr(r);
      out.text << line << "  " << to_string(e.state) << " after " << e.rounds << " rounds\n";
      out.fields.add("goal." + std::to_string(i + 1), line);
      out.fields.add("goal." + std::to_string(i + 1) + ".status", std::string(to_string(e.state)));
    }
    for (std::size_t i = 0; i < g.trace.size(); ++i)
      out.fields.add("trace." + std::to_string(i + 1), format::trace_line(g.trace[i]));
  }
  out.text << "verdict: " << to_string(v.state) << " at depth " << depth << "\n";
  out.fields.add("depth", std::to_string(depth));
  out.fields.add("verdict", std::string(to_string(v.state)));
  for (std::size_t i = 0; i < v.unproven.size(); ++i) {
    out.text << "unproven: " << v.unproven[i] << "\n";
    out.fields.add("unproven." + std::to_string(i + 1), v.unproven[i]);
  }
  if (v.countermodel) {
    out.text << "countermodel:\n" << format::model_table(doc.base(), *v.countermodel, "  ");
    format::model_fields(out.fields, "countermodel", *v.countermodel);
  }
  return v.state == TriState::equal ? 0 : 1;
}

DecoratedSpecification decorated(const SpecDocument& doc) {
  if (auto v = validate_decorated(doc.spec); !v.empty()) throw Error(ErrorKind::purity_violation, v.front());
  return doc.spec;
}

void lift_table(Output& out, const Parameterization& p, const Specification& source) {
  auto rows = p.lift_table(source);
  out.text << "# lift table\n" << format::two_columns(rows, {"term", "lifted"});
  for (const auto& [f, l] : rows) out.fields.add("lift." + f, l);
}

int param_cmd(const Options& o, Output& out) {
  SpecDocument doc = load(o.file);
  DecoratedSpecification d = decorated(doc);
  Parameterization p = parameterize(d);
  SpecDocument target;
  target.spec.base = p.spec.base;
  target.parameter_type = p.spec.parameter_type;
  out.text << dump(target);
  lift_table(out, p, d.base);
  out.fields.add("parameter_type", p.spec.parameter_type);
  counts_fields(out, "", p.spec.base);
  return 0;
}

int ell_cmd(const Options& o, Output& out) {
  SpecDocument doc = load(o.file);
  DecoratedSpecification d = decorated(doc);
  EllResult e = ell(d);
  SpecDocument target;
  target.spec.base = e.morphism.target;
  target.parameter_type = e.target.parameter_type();
  target.parameter_constant = e.target.parameter_constant;
  out.text << dump(target);
  lift_table(out, e.parameterization, d.base);
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& [f, _] : d.base.terms) rows.emplace_back(f, e.morphism.term(f));
  out.text << "# passing\n" << format::two_columns(rows, {"term", "image"});
  for (const auto& [f, img] : rows) out.fields.add("ell." + f, img);
  out.fields.add("parameter_type", e.target.parameter_type());
  out.fields.add("parameter_constant", e.target.parameter_constant);
  counts_fields(out, "target.", e.morphism.target);
  return 0;
}

int models_cmd(const Options& o, Output& out) {
  SpecDocument doc = load(o.file);
  CarrierSizes sizes = sizes_for(doc.base(), o);
  std::vector<FiniteModel> ms = enumerate_models(doc.base(), sizes, {}, enumeration(o));
  out.text << "carriers " << sizes_text(sizes) << "\n";
  out.text << ms.size() << " models\n";
  out.fields.add("carriers", sizes_text(sizes));
  out.fields.add("models", ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    out.text << "model " << i << "\n" << format::model_table(doc.base(), ms[i], "  ");
    format::model_fields(out.fields, "model." + std::to_string(i), ms[i]);
  }
  return 0;
}

int pass_cmd(const Options& o, Output& out) {
  SpecDocument doc = load(o.file);
  DecoratedSpecification d = decorated(doc);
  Parameterization p = parameterize(d);
  const Specification& ps = p.spec.base;
  CarrierSizes sizes = sizes_for(ps, o);
  std::vector<FiniteModel> ms = enumerate_models(ps, sizes, {}, enumeration(o));
  if (o.model >= ms.size())
    throw UsageError("--model " + std::to_string(o.model) + " is out of range; there are " +
                     std::to_string(ms.size()) + " models");
  const FiniteModel& ma = ms[o.model];
  FiniteModel m = pass_parameter(d, p, ma, o.alpha);
  std::vector<std::string> problems = check_model(d.base, m);
  out.text << "carriers " << sizes_text(sizes) << "\n";
  out.text << "parameterized model " << o.model << " of " << ms.size() << "\n"
           << format::model_table(ps, ma, "  ");
  out.text << "alpha = " << ma.carriers.at(p.spec.parameter_type).at(o.alpha) << "\n";
  out.text << "passed model\n" << format::model_table(d.base, m, "  ");
  for (const auto& pr : problems) out.text << "problem: " << pr << "\n";
  out.text << (problems.empty() ? "model ok" : "not a model") << "\n";
  out.fields.add("carriers", sizes_text(sizes));
  out.fields.add("models", ms.size());
  out.fields.add("alpha", ma.carriers.at(p.spec.parameter_type).at(o.alpha));
  format::model_fields(out.fields, "passed", m);
  out.fields.add("valid", problems.empty() ? "true" : "false");
  return problems.empty() ? 0 : 1;
}

// The fixed pure part M_0: model number --m0 of the pure part.
FiniteModel choose_m0(const DecoratedSpecification& d, const CarrierSizes& sizes, const Options& o, Output& out) {
  Specification pure = pure_part(d);
  CarrierSizes pure_sizes;
  for (const auto& t : base_types(pure)) pure_sizes[t] = sizes.at(t);
  std::vector<FiniteModel> choices = enumerate_models(pure, pure_sizes, {}, enumeration(o));
  if (o.m0 >= choices.size())
    throw UsageError("--m0 " + std::to_string(o.m0) + " is out of range; the pure part has " +
                     std::to_string(choices.size()) + " models");
  out.text << "pure part model " << o.m0 << " of " << choices.size() << "\n"
           << format::model_table(pure, choices[o.m0], "  ");
  out.fields.add("m0", std::to_string(o.m0));
  out.fields.add("m0_choices", choices.size());
  return choices[o.m0];
}

int terminal_cmd(const Options& o, Output& out) {
  SpecDocument doc = load(o.file);
  DecoratedSpecification d = decorated(doc);
  CarrierSizes sizes = sizes_for(d.base, o);
  out.text << "carriers " << sizes_text(sizes) << "\n";
  out.fields.add("carriers", sizes_text(sizes));
  FiniteModel m0 = choose_m0(d, sizes, o, out);
  TerminalModel tm = terminal_model(d, m0, sizes, enumeration(o));
  const Specification& ps = tm.parameterization.spec.base;
  out.text << "terminal model\n" << format::model_table(ps, tm.model, "  ");
  format::model_fields(out.fields, "terminal", tm.model);
  TerminalityReport rep = is_terminal(d, tm.parameterization, tm.model, m0, o.bound, enumeration(o));
  out.text << "checked " << rep.models_checked << " models with |" << tm.parameterization.spec.parameter_type
           << "| <= " << o.bound << "\n";
  if (!rep.terminal) out.text << "failure: " << rep.failure << "\n";
  out.text << (rep.terminal ? "terminal" : "not terminal") << " at bound " << o.bound << "\n";
  out.fields.add("bound", std::to_string(o.bound));
  out.fields.add("models_checked", rep.models_checked);
  out.fields.add("terminal", rep.terminal ? "true" : "false");
  return rep.terminal ? 0 : 1;
}

int exact_cmd(const Options& o, Output& out) {
  SpecDocument doc = load(o.file);
  DecoratedSpecification d = decorated(doc);
  CarrierSizes sizes = sizes_for(d.base, o);
  out.text << "carriers " << sizes_text(sizes) << "\n";
  out.fields.add("carriers", sizes_text(sizes));
  FiniteModel m0 = choose_m0(d, sizes, o, out);
  ExactnessReport rep = exactness_check(d, m0, sizes, enumeration(o));
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& [a, i] : rep.table)
    rows.emplace_back(a, i < rep.extending_models ? std::to_string(i) : std::string("none"));
  out.text << format::two_columns(rows, {"alpha", "model"});
  out.text << "models extending the pure part are counted over the carriers above only\n";
  out.text << rep.parameters << " = " << rep.extending_models << " "
           << (rep.bijection() ? "bijection" : "not a bijection") << "\n";
  out.fields.add("parameters", rep.parameters);
  out.fields.add("extending_models", rep.extending_models);
  out.fields.add("injective", rep.injective ? "true" : "false");
  out.fields.add("surjective", rep.surjective ? "true" : "false");
  for (const auto& [a, m] : rows) out.fields.add("alpha." + a, m);
  out.fields.add("bijection", rep.bijection() ? "true" : "false");
  return rep.bijection() ? 0 : 1;
}

// Reads --T=k carrier sizes from the arguments CLI11 did not recognize.
CarrierSizes parse_carriers(const std::vector<std::string>& extras) {
  CarrierSizes out;
  for (const auto& arg : extras) {
    auto eq = arg.find('=');
    if (arg.rfind("--", 0) != 0 || eq == std::string::npos || eq == 2)
      throw UsageError("unexpected argument " + arg);
    std::string type = arg.substr(2, eq - 2), value = arg.substr(eq + 1);
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("carrier size for " + type + " must be a number");
    out[type] = std::stoul(value);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for finite-product specifications"};
  app.require_subcommand(1, 1);
  Options o;
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "machine"}))
      ->capture_default_str();

  using Handler = int (*)(const Options&, Output&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto command = [&](const char* name, const char* help, Handler h, bool carriers = false) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", o.file, "Specification file")->required();
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "machine"}));
    if (carriers) {
      sub->allow_extras();
      sub->add_option("--size", o.size, "Carrier size for base types without --T=k")->capture_default_str();
      sub->add_option("--cap", o.cap, "Maximal number of candidate assignments");
    }
    commands.emplace_back(sub, h);
    return sub;
  };

  command("meta-check", "Encode as a realization of the meta-sketch and decode again", meta_check);
  command("validate", "Check the structural invariants", validate_cmd);
  auto* sat = command("saturate", "Close under the structural rules", saturate_cmd);
  sat->add_option("--depth", o.depth, "Maximal structural depth (default 2)");
  sat->add_option("--cap", o.cap, "Maximal number of terms");
  sat->add_flag("--trace", o.trace, "Print the rule applications");
  auto* ent = command("entail", "Decide whether the goals are derivable", entail_cmd);
  ent->add_option("--depth", o.depth, "Congruence rounds (default 3)");
  ent->add_flag("--trace", o.trace, "Print the goal construction and the status of each goal");
  command("param", "Parameterize a decorated specification", param_cmd);
  command("ell", "Parameter passing morphism", ell_cmd);
  command("models", "Enumerate finite models", models_cmd, true);
  auto* pass = command("pass", "Pass a parameter value to a model of the parameterization", pass_cmd, true);
  pass->add_option("--model", o.model, "Index of the parameterized model")->capture_default_str();
  pass->add_option("--alpha", o.alpha, "Index of the parameter value")->capture_default_str();
  auto* term = command("terminal", "Build the terminal parameterized model", terminal_cmd, true);
  term->add_option("--m0", o.m0, "Index of the pure part model")->capture_default_str();
  term->add_option("--bound", o.bound, "Largest parameter carrier checked")->capture_default_str();
  auto* ex = command("exact", "Check the exactness bijection", exact_cmd, true);
  ex->add_option("--m0", o.m0, "Index of the pure part model")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (const auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    Output out;
    int code = 0;
    try {
      o.carriers = parse_carriers(sub->remaining());
      code = handler(o, out);
    } catch (const UsageError& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return 2;
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      return e.is_budget() ? 3 : 1;
    }
    std::cout << (o.format == "machine" ? out.fields.str() : out.text.str());
    return code;
  }
  return 2;
}
