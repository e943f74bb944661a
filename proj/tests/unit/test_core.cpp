#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "pcforge/element.hpp"
#include "pcforge/subgroup.hpp"

using namespace pcforge;

namespace {

  GroupElement el(PcHandle const& g, Exponents e) {
    return GroupElement(g, std::move(e));
  }

  GroupElement random_element(PcHandle const& g, std::mt19937_64& rng) {
    Exponents e(g->size());
    for (auto& x : e) {
      x = static_cast<std::uint32_t>(rng() % g->prime());
    }
    return GroupElement(g, e);
  }

  // closure of {x, y} by repeated right multiplication
  std::size_t closure_size(GroupElement const& x, GroupElement const& y) {
    std::set<Exponents>       seen{GroupElement::identity(x.presentation()).exponents()};
    std::vector<GroupElement> todo{GroupElement::identity(x.presentation())};
    while (!todo.empty()) {
      auto g = todo.back();
      todo.pop_back();
      for (auto const& s : {x, y}) {
        auto h = g * s;
        if (seen.insert(h.exponents()).second) {
          todo.push_back(h);
        }
      }
    }
    return seen.size();
  }

}  // namespace

TEST_CASE("collect: empty word is the identity") {
  auto h = fixtures::h_group();
  CHECK(collect({}, h).is_identity());
}

TEST_CASE("collect: b*a = a*b*c in H") {
  auto h = fixtures::h_group();
  auto x = collect({{1, 1}, {0, 1}}, h);
  CHECK(x.exponents() == Exponents{1, 1, 1, 0, 0});
}

TEST_CASE("collect: g*g^-1 cancels") {
  auto h = fixtures::h_group();
  for (std::uint32_t g = 0; g < 5; ++g) {
    CHECK(collect({{g, 1}, {g, -1}}, h).is_identity());
    CHECK(collect({{g, -2}, {g, 2}}, h).is_identity());
  }
}

TEST_CASE("collect: budget exhaustion raises CollectionError") {
  auto          h = fixtures::h_group();
  LeftCollector tiny(3);
  Exponents     x{0, 1, 0, 0, 0};
  CHECK_THROWS_AS(tiny.multiply(*h, x, Exponents{2, 0, 0, 0, 0}), CollectionError);
}

TEST_CASE("element arithmetic in H") {
  auto h = fixtures::h_group();
  auto a = GroupElement::generator(h, 0);
  auto b = GroupElement::generator(h, 1);
  CHECK(power(a, 3).is_identity());
  CHECK(conjugate(b, a) == el(h, {0, 1, 1, 0, 0}));
  CHECK(commutator(b, a) == GroupElement::generator(h, 2));
  CHECK(a * GroupElement::identity(h) == a);
  CHECK(conjugate(a, GroupElement::identity(h)) == a);
  auto d = GroupElement::generator(h, 3);
  CHECK(conjugate(d, b) == d);
  CHECK(order(GroupElement::identity(h)) == 1);
  CHECK(order(a * b) == 9);
  CHECK(order(b) == 3);
  CHECK(power(a, -1) == inverse(a));
}

TEST_CASE("mixed presentations are rejected") {
  auto h = fixtures::h_group();
  auto e = fixtures::elementary(3, 2);
  CHECK_THROWS_AS(GroupElement::generator(h, 0) * GroupElement::generator(e, 0),
                  PresentationMismatch);
}

TEST_CASE("consistency") {
  CHECK(is_consistent(fixtures::h_presentation()));
  CHECK(is_consistent(PcPresentation(3, 2)));
  CHECK(is_consistent(PcPresentation(5, 0)));
  // g1^3 = g2 with [g2,g1] = g3: g1 cannot commute with its own cube
  PcPresentation bad(3, 3);
  bad.set_weight(1, 2);
  bad.set_weight(2, 3);
  bad.set_power(0, {0, 1, 0});
  bad.set_commutator(1, 0, {0, 0, 1});
  bad.finalize();
  auto rep = check_consistency(bad);
  CHECK_FALSE(rep.consistent);
  CHECK(rep.failing_test == "(g1^p) g1 != g1 (g1^p)");
}

TEST_CASE("consistency: H with [c,a] = 1 is still a group") {
  // C_3 x (order 81); the Vaughan-Lee words and brute-force associativity
  // on generator triples both accept it.
  auto broken = std::make_shared<PcPresentation const>(fixtures::h_presentation(true));
  CHECK(is_consistent(*broken));
  bool found = false;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      for (std::size_t k = 0; k < 5; ++k) {
        auto x = GroupElement::generator(broken, i);
        auto y = GroupElement::generator(broken, j);
        auto z = GroupElement::generator(broken, k);
        found  = found || !((x * y) * z == x * (y * z));
      }
    }
  }
  CHECK_FALSE(found);
}

TEST_CASE("consistency: the inconsistent presentation breaks associativity") {
  PcPresentation bad(3, 3);
  bad.set_weight(1, 2);
  bad.set_weight(2, 3);
  bad.set_power(0, {0, 1, 0});
  bad.set_commutator(1, 0, {0, 0, 1});
  bad.finalize();
  auto g  = std::make_shared<PcPresentation const>(bad);
  auto g1 = GroupElement::generator(g, 0);
  auto g1sq = g1 * g1;
  CHECK_FALSE((g1 * g1sq) * g1 == g1 * (g1sq * g1));
}

TEST_CASE("enumeration") {
  CHECK(enumerate_elements(fixtures::elementary(3, 2)).size() == 9);
  auto all = enumerate_elements(fixtures::h_group());
  CHECK(all.size() == 243);
  CHECK(std::set<GroupElement>(all.begin(), all.end()).size() == 243);
  CHECK(std::is_sorted(all.begin(), all.end()));
  CHECK(enumerate_elements(fixtures::elementary(2, 0)).size() == 1);
  CHECK_THROWS_AS(enumerate_elements(fixtures::h_group(), 100), BoundExceeded);
}

TEST_CASE("associativity on random triples") {
  auto            h = fixtures::h_group();
  std::mt19937_64 rng(7);
  for (int r = 0; r < 10000; ++r) {
    auto x = random_element(h, rng);
    auto y = random_element(h, rng);
    auto z = random_element(h, rng);
    REQUIRE((x * y) * z == x * (y * z));
  }
}

TEST_CASE("inverses are two-sided in H") {
  auto h = fixtures::h_group();
  for (auto const& x : enumerate_elements(h)) {
    REQUIRE((x * inverse(x)).is_identity());
    REQUIRE((inverse(x) * x).is_identity());
  }
}

TEST_CASE("order properties in H") {
  auto h = fixtures::h_group();
  for (auto const& x : enumerate_elements(h)) {
    auto o = order(x);
    REQUIRE(27 % o == 0);
    if (o > 1) {
      REQUIRE(order(power(x, 3)) == o / 3);
    }
  }
}

TEST_CASE("inserting g*g^-1 leaves the normal form unchanged") {
  auto            h = fixtures::h_group();
  std::mt19937_64 rng(11);
  for (int r = 0; r < 500; ++r) {
    Word w;
    for (int i = 0; i < 8; ++i) {
      w.push_back({static_cast<std::uint32_t>(rng() % 5), static_cast<std::int32_t>(rng() % 5) - 2});
    }
    auto base = collect(w, h);
    auto pos  = rng() % (w.size() + 1);
    auto g    = static_cast<std::uint32_t>(rng() % 5);
    Word w2(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
    w2.push_back({g, 1});
    w2.push_back({g, -1});
    w2.insert(w2.end(), w.begin() + static_cast<std::ptrdiff_t>(pos), w.end());
    REQUIRE(collect(w2, h) == base);
  }
}

TEST_CASE("generates agrees with brute-force closure in H") {
  auto h   = fixtures::h_group();
  auto all = enumerate_elements(h);
  std::mt19937_64 rng(3);
  for (int r = 0; r < 300; ++r) {
    auto const& x = all[rng() % all.size()];
    auto const& y = all[rng() % all.size()];
    REQUIRE(generates(x, y) == (closure_size(x, y) == 243));
  }
}

TEST_CASE("generates on small examples") {
  auto h = fixtures::h_group();
  auto a = GroupElement::generator(h, 0);
  auto b = GroupElement::generator(h, 1);
  auto c = GroupElement::generator(h, 2);
  CHECK(generates(a, b));
  CHECK_FALSE(generates(a, a * c));
  CHECK(frattini_image(GroupElement::identity(h)) == gfp::Vec{0, 0});
  CHECK(frattini_image(a * b) == gfp::Vec{1, 1});
  // (uv^2, uv^4): determinant 4 - 2 = 2 is a unit mod 3 and mod 5
  CHECK(generates(a * power(b, 2), a * power(b, 4)));
}

TEST_CASE("weight subgroups of H") {
  auto h = fixtures::h_group();
  CHECK(weight_subgroup(h, 1).log_order() == 5);
  CHECK(weight_subgroup(h, 2).log_order() == 3);
  CHECK(weight_subgroup(h, 4).log_order() == 0);
  CHECK_THROWS(weight_subgroup(h, 0));
  for (unsigned n = 1; n <= 4; ++n) {
    auto s = weight_subgroup(h, n);
    CHECK(s.is_normal());
    CHECK(weight_subgroup(h, n + 1).is_subgroup_of(s));
  }
  CHECK(weight_subgroup(h, 3).is_central_elementary());
  CHECK_FALSE(weight_subgroup(h, 2).is_central_elementary());
}

TEST_CASE("subgroup closure and membership") {
  auto h = fixtures::h_group();
  auto a = GroupElement::generator(h, 0);
  auto b = GroupElement::generator(h, 1);
  auto s = SubgroupBasis::generated_by(h, {a, b});
  CHECK(s.log_order() == 5);
  auto n = SubgroupBasis::normal_closure(h, {b});
  CHECK(n.log_order() == 4);
  auto c = SubgroupBasis::generated_by(h, {a});
  CHECK(c.log_order() == 1);
  CHECK_FALSE(c.is_normal());
  CHECK(c.elements().size() == 3);
  CHECK(lower_central_term(h, 2).log_order() == 3);
  CHECK(lower_central_term(h, 3).log_order() == 2);
  CHECK(lower_central_term(h, 4).log_order() == 0);
}

TEST_CASE("text format round trip") {
  auto pcp  = fixtures::h_presentation();
  auto text = pcp.to_text();
  auto back = PcPresentation::parse(text);
  CHECK(back == pcp);
  CHECK(back.to_text() == text);
  CHECK(PcPresentation::parse(PcPresentation(2, 0).to_text()) == PcPresentation(2, 0));
  CHECK_THROWS(PcPresentation::parse("pcp p=3 n=2\npow 1 = g1^1\n"));
}
