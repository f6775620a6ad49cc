#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "dialog/decorate.hpp"

using namespace dialog;

TEST(Decorate, AllPureIsValid) {
  for (const auto& [name, s] : corpus::all()) EXPECT_TRUE(validate_decorated(purify(s)).empty()) << name;
}

TEST(Decorate, GeneralIdentityIsRejected) {
  Specification s;
  s.add_type("X");
  materialize(s, Expr::identity("X"));
  DecoratedSpecification d{s, {}};
  EXPECT_EQ(validate_decorated(d).size(), 1u);
}

TEST(Decorate, ClosureFixesGeneralCompositeOfPureTerms) {
  DecoratedSpecification d{corpus::comp_chain(), {"f", "g"}};
  EXPECT_EQ(validate_decorated(d).size(), 1u);
  DecorationClosure c = decoration_closure(d);
  EXPECT_EQ(c.added, std::vector<std::string>{"g.f"});
  EXPECT_TRUE(validate_decorated(c.spec).empty());
  // With h pure as well, the whole chain becomes pure.
  DecorationClosure all = decoration_closure({corpus::comp_chain(), {"f", "g", "h"}});
  EXPECT_EQ(all.spec.pure_terms.size(), all.spec.base.terms.size());
}

TEST(Decorate, UnknownPureMark) {
  DecoratedSpecification d{corpus::single_term(), {"nope"}};
  EXPECT_FALSE(validate_decorated(d).empty());
}

TEST(Decorate, UndecorateAfterPurifyIsIdentity) {
  for (const auto& [name, s] : corpus::all()) EXPECT_EQ(undecorate(purify(s)), s) << name;
  EXPECT_EQ(purify(Specification{}), (DecoratedSpecification{}));
}

TEST(Decorate, PurePartOfEndofunction) {
  DecoratedSpecification d = corpus::decorated(corpus::idem(), {"e"});
  Specification p = pure_part(d);
  EXPECT_EQ(p.types, d.base.types);
  EXPECT_EQ(p.terms.size(), 1u);
  EXPECT_TRUE(p.has_term("e"));
  EXPECT_TRUE(p.equations.empty());
  EXPECT_TRUE(p.compositions.empty());
}

TEST(Decorate, PurePartOfAllPureIsBase) {
  for (const auto& [name, s] : corpus::all()) EXPECT_EQ(pure_part(purify(s)), s) << name;
}

TEST(Decorate, PurePartEmbedsWidely) {
  for (const auto& [name, d] : corpus::decorated_all()) {
    Specification p = pure_part(d);
    EXPECT_TRUE(validate(p).empty()) << name;
    EXPECT_EQ(p.types, d.base.types) << name;
    EXPECT_TRUE(validate_morphism(inclusion(p, d.base)).empty()) << name;
    EXPECT_TRUE(validate_decorated(d).empty()) << name;
  }
}

TEST(Decorate, ClosureIsAClosureOperator) {
  std::mt19937 rng(11);
  for (const auto& [name, s] : corpus::all()) {
    std::vector<std::string> terms;
    for (const auto& [f, _] : s.terms) terms.push_back(f);
    for (int trial = 0; trial < 20; ++trial) {
      std::set<std::string> small, big;
      for (const auto& f : terms) {
        unsigned r = rng() % 3;
        if (r == 0) small.insert(f);
        if (r <= 1) big.insert(f);
      }
      auto cs = decoration_closure({s, small}).spec;
      auto cb = decoration_closure({s, big}).spec;
      // extensive
      EXPECT_TRUE(std::includes(cs.pure_terms.begin(), cs.pure_terms.end(), small.begin(), small.end())) << name;
      // idempotent
      EXPECT_EQ(decoration_closure(cs).spec, cs) << name;
      EXPECT_TRUE(decoration_closure(cs).added.empty()) << name;
      // monotone
      EXPECT_TRUE(std::includes(cb.pure_terms.begin(), cb.pure_terms.end(), cs.pure_terms.begin(),
                                cs.pure_terms.end()))
          << name;
    }
  }
}

TEST(Decorate, MorphismsMustPreservePurity) {
  DecoratedSpecification general = corpus::decorated(corpus::single_term(), {});
  DecoratedSpecification pure = purify(corpus::single_term());
  SpecMorphism id = identity_morphism(corpus::single_term());
  // A general term may become pure, not the other way round.
  EXPECT_TRUE(validate_decorated_morphism(id, general, pure).empty());
  EXPECT_FALSE(validate_decorated_morphism(id, pure, general).empty());
  EXPECT_EQ(undecorate(general), undecorate(pure));
}
