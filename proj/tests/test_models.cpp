#include <gtest/gtest.h>

#include "corpus.hpp"
#include "dialog/models.hpp"
#include "dialog/morphism.hpp"

using namespace dialog;
using corpus::at;
using corpus::dot;

namespace {

Specification endo_only() {
  Specification s;
  s.add_type("X");
  s.add_term("f", "X", "X");
  return s;
}

// All functions n -> k as tables.
std::vector<std::vector<std::size_t>> all_functions(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& t : out)
      for (std::size_t v = 0; v < k; ++v) {
        auto u = t;
        u.push_back(v);
        next.push_back(u);
      }
    out = next;
  }
  return out;
}

}  // namespace

TEST(Models, EndomorphismOnTwoPoints) {
  auto ms = enumerate_models(endo_only(), {{"X", 2}});
  ASSERT_EQ(ms.size(), 4u);
  EXPECT_EQ(ms[0].functions.at("f"), (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(ms[1].functions.at("f"), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(ms[3].functions.at("f"), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(ms[0].carriers.at("X"), (std::vector<std::string>{"0", "1"}));
}

TEST(Models, IdempotentsMatchBruteForce) {
  Specification s = endo_only();
  corpus::equate(s, dot(at("f"), at("f")), at("f"));
  for (std::size_t n = 1; n <= 4; ++n) {
    std::size_t expected = 0;
    for (const auto& f : all_functions(n, n)) {
      bool idem = true;
      for (std::size_t x = 0; x < n; ++x) idem = idem && f[f[x]] == f[x];
      expected += idem;
    }
    auto ms = enumerate_models(s, {{"X", n}});
    EXPECT_EQ(ms.size(), expected) << n;
    for (const auto& m : ms) EXPECT_TRUE(check_model(s, m).empty());
  }
  EXPECT_EQ(enumerate_models(s, {{"X", 2}}).size(), 3u);
}

TEST(Models, ProductCarriersAreLexicographicPairs) {
  Specification s = corpus::diagonal();
  auto ms = enumerate_models(s, {{"X", 2}});
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms[0].carriers.at("XX"), (std::vector<std::string>{"(0,0)", "(0,1)", "(1,0)", "(1,1)"}));
  EXPECT_EQ(ms[0].functions.at("l"), (std::vector<std::size_t>{0, 0, 1, 1}));
  EXPECT_EQ(ms[0].functions.at("r"), (std::vector<std::size_t>{0, 1, 0, 1}));
  EXPECT_EQ(ms[0].functions.at("d"), (std::vector<std::size_t>{0, 3}));
}

TEST(Models, MonoidsOnTwoElementsMatchBruteForce) {
  Specification s = corpus::monoid();
  std::size_t expected = 0;
  for (const auto& mul : all_functions(4, 2))
    for (std::size_t e = 0; e < 2; ++e) {
      auto m = [&](std::size_t a, std::size_t b) { return mul[a * 2 + b]; };
      bool ok = true;
      for (std::size_t a = 0; a < 2; ++a) {
        ok = ok && m(e, a) == a && m(a, e) == a;
        for (std::size_t b = 0; b < 2; ++b)
          for (std::size_t c = 0; c < 2; ++c) ok = ok && m(m(a, b), c) == m(a, m(b, c));
      }
      expected += ok;
    }
  auto ms = enumerate_models(s, {{"M", 2}});
  EXPECT_EQ(ms.size(), expected);
  EXPECT_EQ(expected, 4u);  // a group and a semilattice for each choice of unit
  // Z/2 with unit 0 is among them.
  bool found = false;
  for (const auto& m : ms)
    found = found || (m.functions.at("m") == std::vector<std::size_t>{0, 1, 1, 0} &&
                      m.functions.at("e") == std::vector<std::size_t>{0});
  EXPECT_TRUE(found);
}

TEST(Models, CheckRejectsBrokenModel) {
  Specification s = corpus::idem();
  FiniteModel m = enumerate_models(s, {{"X", 2}}).front();
  m.functions.at("s") = {1, 0};
  EXPECT_FALSE(check_model(s, m).empty());
  FiniteModel partial = m;
  partial.functions.erase("e");
  try {
    check_model(s, partial);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unassigned);
  }
}

TEST(Models, EvaluateComposites) {
  Specification s = corpus::endo();
  FiniteModel m = enumerate_models(s, {{"X", 3}}, {}, {}).at(5);
  auto sv = m.functions.at("s");
  auto ss = evaluate(s, m, dot(at("s"), at("s")));
  for (std::size_t x = 0; x < 3; ++x) EXPECT_EQ(ss[x], sv[sv[x]]);
  EXPECT_EQ(evaluate(s, m, Expr::collapse("X")), (std::vector<std::size_t>{0, 0, 0}));
}

TEST(Models, SearchSpaceCap) {
  Specification s = corpus::two_ops();
  try {
    enumerate_models(s, {{"X", 5}}, {}, {1000});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::search_space_too_large);
  }
}

TEST(Models, FixedPartIsRespected) {
  Specification s = corpus::two_ops();
  FiniteModel fixed;
  fixed.carriers["X"] = numbered_labels(2);
  fixed.functions["s"] = {1, 0};
  auto ms = enumerate_models(s, {}, fixed);
  EXPECT_EQ(ms.size(), 2u * 4u);
  for (const auto& m : ms) EXPECT_EQ(m.functions.at("s"), (std::vector<std::size_t>{1, 0}));
}

TEST(Homs, CountsMatchBruteForce) {
  Specification s = endo_only();
  auto models = enumerate_models(s, {{"X", 2}});
  auto more = enumerate_models(s, {{"X", 3}});
  for (const auto& a : models)
    for (const auto& b : more) {
      std::size_t expected = 0;
      for (const auto& h : all_functions(2, 3)) {
        bool ok = true;
        for (std::size_t x = 0; x < 2; ++x) ok = ok && h[a.functions.at("f")[x]] == b.functions.at("f")[h[x]];
        expected += ok;
      }
      EXPECT_EQ(hom_search(s, a, b).size(), expected);
    }
}

TEST(Homs, ProductComponentsAreForced) {
  Specification s = corpus::diagonal();
  auto a = enumerate_models(s, {{"X", 2}}).front();
  auto b = enumerate_models(s, {{"X", 3}}).front();
  auto homs = hom_search(s, a, b);
  EXPECT_EQ(homs.size(), 9u);
  for (const auto& h : homs) {
    const auto& hx = h.components.at("X");
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(h.components.at("XX")[i], hx[i / 2] * 3 + hx[i % 2]);
  }
}

TEST(Models, RestrictionAlongInclusion) {
  Specification big = corpus::idem();
  Specification small = corpus::endo();
  for (const auto& m : enumerate_models(big, {{"X", 2}})) {
    FiniteModel r = restrict_model(small, m);
    EXPECT_TRUE(check_model(small, r).empty());
    EXPECT_EQ(restrict_model(inclusion(small, big), m), r);
  }
}

TEST(Models, CompleteModelComputesMarks) {
  Specification s = corpus::comp_chain();
  FiniteModel m;
  m.carriers = derive_carriers(s, CarrierSizes{{"A", 2}, {"B", 2}, {"C", 2}, {"D", 2}});
  m.functions["f"] = {1, 0};
  m.functions["g"] = {1, 1};
  m.functions["h"] = {0, 1};
  FiniteModel full = complete_model(s, m);
  EXPECT_TRUE(check_model(s, full).empty());
  EXPECT_EQ(full.functions.size(), s.terms.size());
}
