#include <gtest/gtest.h>

#include <cctype>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "dialog/dsl.hpp"
#include "dialog/format.hpp"
#include "dialog/parameterize.hpp"

using namespace dialog;

namespace {

std::string read_sample(const std::string& name) {
  std::ifstream in(std::string(DIALOG_SAMPLES_DIR) + "/" + name);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Position prefix "line:col" of the error thrown while parsing `text`.
std::string error_at(const std::string& text, ErrorKind kind) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
    return e.message().substr(0, e.message().find(": "));
  }
  ADD_FAILURE() << "no error for: " << text;
  return {};
}

}  // namespace

TEST(Parse, EmptyInput) {
  SpecDocument d = parse_document("");
  EXPECT_EQ(d.base(), Specification{});
  EXPECT_FALSE(d.decorated);
  EXPECT_TRUE(d.goals.empty());
  EXPECT_EQ(parse_document("  # only a comment\n\n").base(), Specification{});
}

TEST(Parse, EndofunctionFixture) {
  SpecDocument d = parse_document(read_sample("endo.spec"));
  const Specification& s = d.base();
  // One declared type besides the unit.
  EXPECT_EQ(s.types.size() - (s.terminal ? 1 : 0), 1u);
  EXPECT_EQ(s.terms.size(), 2u);
  EXPECT_TRUE(d.decorated);
  EXPECT_EQ(d.spec.pure_terms, std::set<std::string>{"e"});
  EXPECT_EQ(d.spec, corpus::decorated(corpus::endo(), {"e"}));
}

TEST(Parse, MalformedEquation) {
  EXPECT_EQ(error_at("type X\nterm f : X -> X\neq f\ntype Y\n", ErrorKind::syntax_error), "4:1");
  EXPECT_EQ(error_at("type X\nterm f : X -> X\neq f", ErrorKind::syntax_error), "3:5");
  EXPECT_EQ(error_at("type X term f : X -> X eq f f", ErrorKind::syntax_error), "1:29");
}

TEST(Parse, DuplicateNames) {
  EXPECT_EQ(error_at("type X\ntype X", ErrorKind::duplicate_name), "2:6");
  EXPECT_EQ(error_at("type X, Y, X", ErrorKind::duplicate_name), "1:12");
  EXPECT_EQ(error_at("type X\nterm f : X -> X\nterm f : X -> X", ErrorKind::duplicate_name), "3:6");
  EXPECT_EQ(error_at("type X\nterm X : X -> X", ErrorKind::duplicate_name), "2:6");
}

TEST(Parse, OtherDiagnostics) {
  EXPECT_EQ(error_at("type X\nterm f : X -> Y", ErrorKind::invalid_spec), "2:15");
  EXPECT_EQ(error_at("type X\nterm f : X -> X\neq f = g", ErrorKind::invalid_spec), "3:8");
  EXPECT_EQ(error_at("type X, Y\nterm f : X -> Y\neq f = id[X]", ErrorKind::not_parallel), "3:4");
  EXPECT_EQ(error_at("type X\n  $", ErrorKind::syntax_error), "2:3");
  EXPECT_EQ(error_at("type \"X", ErrorKind::syntax_error), "1:8");
  EXPECT_EQ(error_at("X", ErrorKind::syntax_error), "1:1");
  EXPECT_EQ(error_at("frobnicate X", ErrorKind::syntax_error), "1:1");
  EXPECT_EQ(error_at("type X, Y\nterm f : X -> Y\nterm g : X -> Y\ncompose h = g . f", ErrorKind::invalid_spec),
            "4:9");
  // A parameter constant must be a term 1 -> A.
  EXPECT_THROW(parse_document("type A, X\nunit 1\nterm a : X -> A\nparameter type A\nparameter const a"), Error);
}

TEST(Parse, WhitespaceInsensitive) {
  SpecDocument a = parse_document(read_sample("idem.spec"));
  SpecDocument b = parse_document("type X unit 1 term pure e:1->X term s:X->X eq s.s=s");
  EXPECT_TRUE(a.same_content(b));
}

TEST(Parse, TupleExpressionNeedsProduct) {
  EXPECT_THROW(parse_document("type X\nterm f : X -> X\nterm g : X -> X\ngoal f = <f, g> . f"), Error);
}

TEST(Parse, CompositeEquation) {
  SpecDocument d = parse_document("type X\nterm f : X -> X\nterm g : X -> X\neq g . f . f = f");
  const Specification& s = d.base();
  ASSERT_TRUE(s.composite_of("f", "f"));
  std::string ff = *s.composite_of("f", "f");
  ASSERT_TRUE(s.composite_of(ff, "g"));
  EXPECT_TRUE(s.has_equation(*s.composite_of(ff, "g"), "f"));
  EXPECT_EQ(s.equations.size(), 1u);
}

TEST(Parse, MarksReuseDeclaredTerms) {
  SpecDocument d = parse_document(
      "type X\nterm f : X -> X\nterm ff : X -> X\ncompose ff = f . f\nidentity i : X\neq f . f = ff");
  const Specification& s = d.base();
  EXPECT_EQ(s.composite_of("f", "f"), std::optional<std::string>("ff"));
  EXPECT_EQ(s.identities.at("X"), "i");
  EXPECT_TRUE(s.equations.empty());  // the sides elaborate to the same term
  EXPECT_EQ(s.terms.size(), 3u);
}

TEST(Parse, TupleNeedsProduct) {
  EXPECT_THROW(parse_document("type X\nterm f : X -> X\ntuple t = <f, f>"), Error);
  SpecDocument d = parse_document("type X\nproduct P = X * X with l r\nterm f : X -> X\ntuple t = <f, f>");
  EXPECT_EQ(d.base().tuple_of("f", "f"), std::optional<std::string>("t"));
  EXPECT_EQ(d.base().sig("t"), (TermSig{"X", "P"}));
}

TEST(Parse, Goals) {
  SpecDocument d = parse_document(read_sample("entail.spec"));
  ASSERT_EQ(d.goals.size(), 2u);
  EXPECT_EQ(d.goals[0].first, Expr::atom("f"));
  EXPECT_EQ(d.goals[1].first, Expr::compose(Expr::identity("X"), Expr::atom("g")));
  // Goals do not enter the specification.
  EXPECT_FALSE(d.base().identities.count("X"));
}

TEST(Parse, Parameters) {
  SpecDocument d = parse_document(read_sample("constant.spec"));
  EXPECT_EQ(d.parameter_type, std::optional<std::string>("A"));
  EXPECT_EQ(d.parameter_constant, std::optional<std::string>("a"));
  EXPECT_TRUE(validate_parameterized(ParameterizedSpecificationWithConstant{
                                         ParameterizedSpecification{d.base(), *d.parameter_type}, "a"})
                  .empty());
}

TEST(Parse, SamplesMatchCorpus) {
  EXPECT_EQ(parse_document(read_sample("idem.spec")).spec, corpus::decorated(corpus::idem(), {"e"}));
  EXPECT_EQ(parse_document(read_sample("two_ops.spec")).spec, corpus::decorated(corpus::two_ops(), {"e"}));
  EXPECT_EQ(parse_document(read_sample("monoid.spec")).spec, corpus::decorated(corpus::monoid(), {"e"}));
  EXPECT_EQ(parse_document(read_sample("diagonal.spec")).base(), corpus::diagonal());
  EXPECT_EQ(parse_document(read_sample("incl.spec")).base(), corpus::parallel_pair());
  EXPECT_EQ(parse_document(read_sample("entail.spec")).base(), corpus::entail_positive());
  EXPECT_TRUE(iso_search(parse_document(read_sample("ok.spec")).base(), corpus::product_heavy()).found());
}

TEST(Dump, RoundTripCorpus) {
  for (const auto& [name, s] : corpus::all()) {
    std::string text = dump(s);
    SpecDocument d = parse_document(text);
    EXPECT_EQ(d.base(), s) << name;
    EXPECT_EQ(dump(d), text) << name;
  }
}

TEST(Dump, RoundTripDecorated) {
  for (const auto& [name, d] : corpus::decorated_all()) {
    std::string text = dump(d);
    SpecDocument back = parse_document(text);
    EXPECT_EQ(back.spec, d) << name;
    EXPECT_EQ(dump(back), text) << name;
  }
}

TEST(Dump, RoundTripSamples) {
  for (const char* f : {"endo.spec", "idem.spec", "two_ops.spec", "monoid.spec", "ok.spec", "incl.spec",
                        "entail.spec", "diagonal.spec", "chain.spec", "constant.spec"}) {
    SpecDocument d = parse_document(read_sample(f));
    std::string text = dump(d);
    SpecDocument back = parse_document(text);
    EXPECT_TRUE(back.same_content(d)) << f;
    EXPECT_EQ(dump(back), text) << f;
  }
}

TEST(Dump, AwkwardNames) {
  Specification s;
  s.add_type("type");
  s.add_type("a b");
  s.add_type("1");
  s.terminal = "1";
  s.add_term("pure", "type", "a b");
  s.add_term("q\"uote", "a b", "type");
  s.add_term("'x", "type", "type");
  materialize(s, Expr::compose(Expr::atom("pure"), Expr::atom("q\"uote")));
  materialize(s, Expr::collapse("a b"));
  SpecDocument d;
  d.spec = {s, {"pure"}};
  d.decorated = true;
  d.goals.emplace_back(Expr::compose(Expr::atom("'x"), Expr::compose(Expr::atom("pure"), Expr::atom("q\"uote"))),
                       Expr::compose(Expr::compose(Expr::atom("'x"), Expr::atom("pure")), Expr::atom("q\"uote")));
  d.spec = decoration_closure(d.spec).spec;
  SpecDocument back = parse_document(dump(d));
  EXPECT_TRUE(back.same_content(d)) << dump(d);
}

TEST(Dump, CanonicalOrderIgnoresDeclarationOrder) {
  SpecDocument a = parse_document("type Y\ntype X\nterm g : X -> Y\nterm f : X -> Y\neq g = f");
  SpecDocument b = parse_document("type X, Y\nterm f : X -> Y\nterm g : X -> Y\neq f = g");
  EXPECT_EQ(dump(a), dump(b));
  EXPECT_EQ(dump(a), "type X\ntype Y\nterm f : X -> Y\nterm g : X -> Y\neq f = g\n");
}

TEST(Goals, ExtensionTraceReplays) {
  SpecDocument d = parse_document(read_sample("entail.spec"));
  GoalExtension g = goal_extension(d);
  EXPECT_TRUE(validate_morphism(g.inclusion).empty());
  ASSERT_EQ(g.trace.size(), 2u);
  EXPECT_EQ(g.trace[0].rule, "identity");
  EXPECT_EQ(g.trace[1].rule, "composition");
  // Replaying the trace with the rule engine gives the same terms.
  Specification s = d.base();
  for (const auto& t : g.trace) {
    NameMap types, terms;
    for (const auto& [k, v] : t.match) (s.has_type(v) && k.size() <= 2 && std::isupper(k[0]) ? types : terms)[k] = v;
    RuleTag tag = t.rule == "identity" ? RuleTag::identity : RuleTag::composition;
    s = apply_rule(tag, s, types, terms).result;
    for (const auto& n : t.generated) EXPECT_TRUE(s.has_term(n)) << n;
  }
  for (const auto& [a, b] : g.equations) EXPECT_TRUE(g.inclusion.target.has_term(a) && g.inclusion.target.has_term(b));
  EXPECT_EQ(is_entailment(g.inclusion, 2).state, TriState::equal);
}

TEST(Goals, NegativeHasCountermodel) {
  SpecDocument d = parse_document(read_sample("incl.spec"));
  EntailmentVerdict v = is_entailment(goal_extension(d).inclusion, 3);
  EXPECT_EQ(v.state, TriState::distinct_at_bound);
  ASSERT_TRUE(v.countermodel);
  EXPECT_TRUE(check_model(d.base(), *v.countermodel).empty());
  EXPECT_NE(evaluate(d.base(), *v.countermodel, Expr::atom("f")),
            evaluate(d.base(), *v.countermodel, Expr::atom("g")));
}

TEST(Format, TwoColumns) {
  EXPECT_EQ(format::two_columns({{"a", "1"}, {"long", "2"}}, {"k", "v"}), "k     v\na     1\nlong  2\n");
}

TEST(Format, ModelTable) {
  Specification s = corpus::single_term();
  FiniteModel m{{{"X", {"0", "1"}}, {"Y", {"a"}}}, {{"f", {0, 0}}}};
  EXPECT_EQ(format::model_table(s, m),
            "carrier X = {0, 1}\ncarrier Y = {a}\nf : X -> Y\n  0 |-> a\n  1 |-> a\n");
  format::Fields f;
  format::model_fields(f, "m", m);
  EXPECT_EQ(f.str(), "m.carrier.X: 0 1\nm.carrier.Y: a\nm.term.f: 0 0\n");
}
