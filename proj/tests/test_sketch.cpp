#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "dialog/equational_sketch.hpp"
#include "dialog/morphism.hpp"

using namespace dialog;

TEST(Sketch, EmptyIsValid) { EXPECT_TRUE(validate_sketch(LimitSketch{}).empty()); }

TEST(Sketch, IdentityWithWrongTarget) {
  LimitSketch sk;
  sk.points = {"X", "Y"};
  sk.add_arrow("e", "X", "Y");
  sk.identities["X"] = "e";
  EXPECT_EQ(validate_sketch(sk).size(), 1u);
}

TEST(Sketch, EquationalSketchShape) {
  LimitSketch sk = equational_sketch();
  EXPECT_EQ(sk.points, (std::set<std::string>{"Type", "Term", "Cons", "Comp", "Selid", "2-Prod", "2-Cone", "Type2",
                                              "Tuple2", "Unit", "0-Prod", "Tuple0"}));
  EXPECT_EQ(sk.arrows.size(), 25u);
  EXPECT_EQ(sk.arrows.at("comp"), (SketchArrow{"Comp", "Term"}));
  EXPECT_EQ(sk.monos, (std::set<std::string>{"i", "i0", "j", "j0", "k", "k0"}));
  EXPECT_TRUE(validate_sketch(sk).empty());
  EXPECT_TRUE(validate_sketch(equational_sketch_with_equations()).empty());
  EXPECT_TRUE(validate_sketch_morphism(equational_sketch_inclusion()).empty());
}

namespace {

LimitSketch one_point_with_identity() {
  LimitSketch sk;
  sk.points = {"X"};
  sk.add_arrow("e", "X", "X");
  sk.identities["X"] = "e";
  return sk;
}

}  // namespace

TEST(Realization, IdentityRealizedAsIdentity) {
  FiniteRealization r;
  r.sets["X"] = {"0", "1"};
  r.maps["e"] = {0, 1};
  EXPECT_TRUE(check_realization(one_point_with_identity(), r).empty());
  r.maps["e"] = {0, 0};
  EXPECT_EQ(check_realization(one_point_with_identity(), r).size(), 1u);
}

TEST(Realization, PartialRealizationThrows) {
  FiniteRealization r;
  r.sets["X"] = {"0"};
  try {
    check_realization(one_point_with_identity(), r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unassigned_arrow);
  }
  try {
    check_realization(one_point_with_identity(), FiniteRealization{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unassigned_point);
  }
}

TEST(Realization, ConesAgreeWithBruteForcePullback) {
  // P is a potential pullback of f: A -> C and g: B -> C.
  LimitSketch sk;
  sk.points = {"A", "B", "C", "P"};
  sk.add_arrow("f", "A", "C");
  sk.add_arrow("g", "B", "C");
  sk.add_arrow("p", "P", "A");
  sk.add_arrow("q", "P", "B");
  sk.cones["P"] = {{"A", "B", "C"}, {{0, 2, {"f"}}, {1, 2, {"g"}}}, {{"p"}, {"q"}, {"p", "f"}}};
  ASSERT_TRUE(validate_sketch(sk).empty());

  std::mt19937 rng(7);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::size_t accepted = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    std::size_t na = 1 + pick(4), nb = 1 + pick(4), nc = 1 + pick(4), np = pick(5);
    FiniteRealization r;
    auto labels = [](std::size_t n) {
      std::vector<std::string> v;
      for (std::size_t i = 0; i < n; ++i) v.push_back(std::to_string(i));
      return v;
    };
    r.sets = {{"A", labels(na)}, {"B", labels(nb)}, {"C", labels(nc)}, {"P", labels(np)}};
    // Small codomains make pullbacks tiny often enough to hit both outcomes.
    for (std::size_t i = 0; i < na; ++i) r.maps["f"].push_back(pick(nc));
    for (std::size_t i = 0; i < nb; ++i) r.maps["g"].push_back(pick(nc));
    r.maps["p"];
    r.maps["q"];
    for (std::size_t i = 0; i < np; ++i) {
      r.maps["p"].push_back(pick(na));
      r.maps["q"].push_back(pick(nb));
    }
    // Oracle: pairs (p x, q x) are distinct, all satisfy f a = g b, and cover every such pair.
    std::set<std::pair<std::size_t, std::size_t>> image;
    bool commutes = true;
    for (std::size_t x = 0; x < np; ++x) {
      image.insert({r.maps["p"][x], r.maps["q"][x]});
      if (r.maps["f"][r.maps["p"][x]] != r.maps["g"][r.maps["q"][x]]) commutes = false;
    }
    std::size_t pullback = 0;
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b) pullback += r.maps["f"][a] == r.maps["g"][b];
    bool expected = commutes && image.size() == np && np == pullback;
    bool got = check_realization(sk, r).empty();
    EXPECT_EQ(got, expected);
    accepted += got;
  }
  EXPECT_GT(accepted, 0u);
}

TEST(RoundTrip, HandBuiltSingleEndomorphism) {
  Specification s;
  s.add_type("X");
  s.add_term("f", "X", "X");
  FiniteRealization r = spec_to_realization(s);
  EXPECT_EQ(r.sets.at("Type"), std::vector<std::string>{"X"});
  EXPECT_EQ(r.sets.at("Term"), std::vector<std::string>{"f"});
  EXPECT_EQ(r.maps.at("dom"), std::vector<std::size_t>{0});
  EXPECT_EQ(r.maps.at("codom"), std::vector<std::size_t>{0});
  EXPECT_EQ(r.sets.at("Cons").size(), 1u);
  EXPECT_EQ(realization_to_spec(r), s);
}

TEST(RoundTrip, Corpus) {
  LimitSketch plain = equational_sketch();
  LimitSketch full = equational_sketch_with_equations();
  SketchMorphism inc = equational_sketch_inclusion();
  for (const auto& [name, s] : corpus::all()) {
    FiniteRealization r = spec_to_realization(s);
    EXPECT_TRUE(check_realization(full, r).empty()) << name;
    EXPECT_TRUE(check_realization(plain, restrict_realization(inc, r)).empty()) << name;
    Specification back = realization_to_spec(r);
    EXPECT_TRUE(iso_search(back, s).found()) << name;
    EXPECT_EQ(spec_to_realization(back), r) << name;
  }
}

TEST(RoundTrip, BrokenRealizationIsRejected) {
  FiniteRealization r = spec_to_realization(corpus::comp_chain());
  r.maps.at("comp").at(0) = (r.maps.at("comp").at(0) + 1) % r.size("Term");
  try {
    realization_to_spec(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_realization);
  }
}
