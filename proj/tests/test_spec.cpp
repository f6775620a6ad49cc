#include <gtest/gtest.h>

#include "corpus.hpp"
#include "dialog/elementary.hpp"
#include "dialog/morphism.hpp"

using namespace dialog;

TEST(Validate, EmptyIsValid) { EXPECT_TRUE(validate(Specification{}).empty()); }

TEST(Validate, EquationBetweenNonParallelTerms) {
  Specification s;
  for (const char* t : {"X", "Y", "Z"}) s.add_type(t);
  s.add_term("f", "X", "Y");
  s.add_term("g", "X", "Z");
  s.add_equation("f", "g");
  EXPECT_EQ(validate(s).size(), 1u);
}

TEST(Validate, CorpusIsValid) {
  for (const auto& [name, s] : corpus::all()) EXPECT_TRUE(validate(s).empty()) << name;
}

TEST(Validate, IdentityWithWrongCodomain) {
  Specification s;
  s.add_type("X");
  s.add_type("Y");
  s.add_term("i", "X", "Y");
  s.identities["X"] = "i";
  EXPECT_EQ(validate(s).size(), 1u);
}

TEST(Elementary, TypeIsOneType) {
  Specification s = yoneda_elementary(ElementaryPoint::type);
  EXPECT_EQ(s.types, (std::set<std::string>{"X"}));
  EXPECT_TRUE(s.terms.empty());
}

TEST(Elementary, CompositionShape) {
  Specification s = yoneda_elementary(ElementaryPoint::comp);
  EXPECT_EQ(s.types.size(), 3u);
  EXPECT_EQ(s.terms.size(), 3u);
  EXPECT_EQ(s.compositions.size(), 1u);
  EXPECT_TRUE(s.equations.empty());
  EXPECT_EQ(s.composite_of("f", "g"), std::optional<std::string>("g.f"));
}

TEST(Elementary, PairingHasProjectionEquations) {
  Specification s = yoneda_elementary(ElementaryPoint::binary_tuple);
  ASSERT_TRUE(s.tuple_of("f1", "f2"));
  std::string t = *s.tuple_of("f1", "f2");
  auto c1 = s.composite_of(t, "p1");
  auto c2 = s.composite_of(t, "p2");
  ASSERT_TRUE(c1 && c2);
  EXPECT_TRUE(s.has_equation(*c1, "f1"));
  EXPECT_TRUE(s.has_equation(*c2, "f2"));
  EXPECT_EQ(s.equations.size(), 2u);
}

TEST(Elementary, AllValidate) {
  for (auto p : all_elementary_points) EXPECT_TRUE(validate(yoneda_elementary(p)).empty()) << point_name(p);
}

TEST(Morphism, IdentityIsUnit) {
  Specification s = corpus::monoid();
  SpecMorphism m = rename(s, {{"M", "N"}}, {{"m", "mul"}});
  EXPECT_TRUE(validate_morphism(m).empty());
  EXPECT_EQ(compose(identity_morphism(s), m), m);
  EXPECT_EQ(compose(m, identity_morphism(m.target)), m);
}

TEST(Morphism, RenameChainEqualsCompositeRename) {
  Specification s = corpus::endo();
  SpecMorphism a = rename(s, {{"X", "Y"}}, {{"s", "t"}});
  SpecMorphism b = rename(a.target, {{"Y", "Z"}}, {{"t", "u"}});
  SpecMorphism direct = rename(s, {{"X", "Z"}}, {{"s", "u"}});
  EXPECT_EQ(compose(a, b), direct);
}

TEST(Morphism, ComposeMismatchThrows) {
  SpecMorphism a = identity_morphism(corpus::endo());
  SpecMorphism b = identity_morphism(corpus::monoid());
  try {
    compose(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::source_target_mismatch);
  }
}

TEST(Morphism, DetectsBrokenEquation) {
  Specification s = corpus::parallel_pair();
  Specification t = s;
  s.add_equation("f", "g");
  SpecMorphism m = identity_morphism(s);
  m.target = t;
  EXPECT_EQ(validate_morphism(m).size(), 1u);
}

namespace {

// Counts mediating morphisms out of the pushout by brute force.
std::size_t count_mediating(const PushoutResult& po, const SpecMorphism& h1, const SpecMorphism& h2) {
  std::size_t n = 0;
  for (const auto& m : enumerate_morphisms(po.object, h1.target)) {
    SpecMorphism a = compose(po.in1, m), b = compose(po.in2, m);
    if (a.types == h1.types && a.terms == h1.terms && b.types == h2.types && b.terms == h2.terms) ++n;
  }
  return n;
}

void expect_universal(const SpecMorphism& f, const SpecMorphism& g, const Specification& test_target) {
  PushoutResult po = pushout(f, g);
  ASSERT_TRUE(validate(po.object).empty());
  ASSERT_TRUE(validate_morphism(po.in1).empty());
  ASSERT_TRUE(validate_morphism(po.in2).empty());
  SpecMorphism l = compose(f, po.in1), r = compose(g, po.in2);
  EXPECT_EQ(l.types, r.types);
  EXPECT_EQ(l.terms, r.terms);
  std::size_t cospans = 0;
  for (const auto& h1 : enumerate_morphisms(f.target, test_target))
    for (const auto& h2 : enumerate_morphisms(g.target, test_target)) {
      SpecMorphism a = compose(f, h1), b = compose(g, h2);
      if (a.types != b.types || a.terms != b.terms) continue;
      ++cospans;
      EXPECT_EQ(count_mediating(po, h1, h2), 1u);
      EXPECT_TRUE(mediating_morphism(po, h1, h2).has_value());
    }
  EXPECT_GT(cospans, 0u);
}

Specification small_target() {
  Specification t;
  t.add_type("U");
  t.add_type("V");
  t.add_term("u", "U", "V");
  t.add_term("v", "U", "V");
  t.add_term("w", "V", "V");
  return t;
}

}  // namespace

TEST(Pushout, EmptyApexGivesDisjointUnion) {
  Specification a = corpus::single_term(), b = corpus::endo();
  PushoutResult po = pushout(inclusion({}, a), inclusion({}, b));
  EXPECT_EQ(po.object.types.size(), a.types.size() + b.types.size());
  EXPECT_EQ(po.object.terms.size(), a.terms.size() + b.terms.size());
}

TEST(Pushout, AlongIdentitiesIsTheApex) {
  Specification s = corpus::monoid();
  PushoutResult po = pushout(identity_morphism(s), identity_morphism(s));
  EXPECT_TRUE(iso_search(po.object, s).found());
}

TEST(Pushout, GlueTwoTermsAlongCodomain) {
  Specification term = yoneda_elementary(ElementaryPoint::term);
  Specification apex;
  apex.add_type("Y");
  PushoutResult po = pushout(inclusion(apex, term), inclusion(apex, term));
  EXPECT_EQ(po.object.types.size(), 3u);
  EXPECT_EQ(po.object.terms.size(), 2u);
}

TEST(Pushout, UniversalPropertyOnSmallInstances) {
  Specification term = yoneda_elementary(ElementaryPoint::term);
  Specification apex;
  apex.add_type("Y");
  expect_universal(inclusion(apex, term), inclusion(apex, term), small_target());

  Specification x;
  x.add_type("X");
  expect_universal(inclusion(x, term), inclusion(x, yoneda_elementary(ElementaryPoint::type)), small_target());
}

TEST(Pushout, ClashingCompositesAreIdentified) {
  Specification cons = yoneda_elementary(ElementaryPoint::cons);
  Specification comp = yoneda_elementary(ElementaryPoint::comp);
  SpecMorphism other = rename(comp, {}, {{"g.f", "h"}});
  PushoutResult po = pushout(inclusion(cons, comp), compose(inclusion(cons, comp), other));
  EXPECT_EQ(po.object.terms.size(), 3u);
  EXPECT_EQ(po.object.compositions.size(), 1u);
  EXPECT_FALSE(po.merged_features.empty());
  EXPECT_TRUE(validate_morphism(po.in2).empty());
}

TEST(Pushout, SymmetricUpToIso) {
  Specification cons = yoneda_elementary(ElementaryPoint::cons);
  Specification comp = yoneda_elementary(ElementaryPoint::comp);
  Specification t;
  t.add_type("Y");
  Specification a = pushout(inclusion(t, cons), inclusion(t, comp)).object;
  Specification b = pushout(inclusion(t, comp), inclusion(t, cons)).object;
  EXPECT_TRUE(iso_search(a, b).found());
}

TEST(Iso, SelfIsIdentity) {
  Specification s = corpus::monoid();
  IsoResult r = iso_search(s, s);
  ASSERT_TRUE(r.found());
  EXPECT_TRUE(validate_morphism(*r.forward).empty());
  EXPECT_TRUE(validate_morphism(*r.backward).empty());
}

TEST(Iso, RenamedCopy) {
  Specification s = corpus::product_heavy();
  SpecMorphism ren = rename(s, {{"A", "A0"}, {"B", "B0"}}, {{"pa", "x"}, {"pb", "y"}});
  IsoResult r = iso_search(s, ren.target);
  ASSERT_TRUE(r.found());
  EXPECT_TRUE(validate_morphism(*r.forward).empty());
}

TEST(Iso, DifferentTermCountsAreDefinitive) {
  IsoResult r = iso_search(corpus::endo(), corpus::two_ops());
  EXPECT_EQ(r.status, IsoResult::Status::not_isomorphic);
}

TEST(Iso, StructureDifferenceIsDetected) {
  // Same counts: f: X -> Y, g: X -> Y versus f: X -> Y, g: Y -> X.
  Specification a = corpus::parallel_pair();
  Specification b;
  b.add_type("X");
  b.add_type("Y");
  b.add_term("f", "X", "Y");
  b.add_term("g", "Y", "X");
  EXPECT_EQ(iso_search(a, b).status, IsoResult::Status::not_isomorphic);
}

TEST(Iso, ExhaustedBudgetIsUnknown) {
  Specification a;
  for (int i = 0; i < 6; ++i) a.add_type("T" + std::to_string(i));
  EXPECT_EQ(iso_search(a, a, 2).status, IsoResult::Status::unknown);
}
