#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "pcforge/pcgroup.hpp"
#include "pcforge/pquotient.hpp"

using namespace pcforge;

namespace {

  std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e-- > 0) {
      r *= b;
    }
    return r;
  }

  Stage free_stage(std::uint32_t p, unsigned n) {
    return p_quotient(FpPresentation::free_group(), p, n);
  }

  Stage freeprod_stage(std::uint32_t p, unsigned n) {
    return p_quotient(FpPresentation::free_product(p), p, n);
  }

  // 2-generated groups whose lambda-quotients are maximal, found by hand:
  // x = 1 + E12, y = 1 + E23 in UT_3(Z/q).
  oracles::MatrixGroup unitriangular(std::uint32_t q) {
    using M = oracles::MatrixGroup;
    return M(q, {M::unitriangular(1, 0, 0), M::unitriangular(0, 0, 1)});
  }

}  // namespace

TEST_CASE("free group, n = 2: elementary abelian of order p^2") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    auto s = free_stage(p, 2);
    CHECK(s.pcp->size() == 2);
    CHECK(s.pcp->power(0) == Exponents{0, 0});
    CHECK(s.pcp->commutator(1, 0) == Exponents{0, 0});
  }
}

TEST_CASE("free product, p = 3, n = 4 is H") {
  auto s = freeprod_stage(3, 4);
  CHECK(s.pcp->size() == 5);
  CHECK(*s.pcp == fixtures::h_presentation());
}

TEST_CASE("orders agree with concrete lambda-quotients") {
  // UT_3(F_3) has exponent 3 and class 2; it is the largest such 2-generator group.
  CHECK(oracles::lambda_quotient_order(unitriangular(3), 3, 3) == 27);
  CHECK(freeprod_stage(3, 3).pcp->size() == 3);
  CHECK(oracles::lambda_quotient_order(unitriangular(5), 5, 3) == 125);
  CHECK(freeprod_stage(5, 3).pcp->size() == 3);
  // x^p, y^p, [x,y] span lambda_2/lambda_3 of UT_3(Z/p^2): rank 3
  CHECK(oracles::lambda_quotient_order(unitriangular(9), 3, 3) == ipow(3, 5));
  CHECK(free_stage(3, 3).pcp->size() == 5);
  CHECK(oracles::lambda_quotient_order(unitriangular(25), 5, 3) == ipow(5, 5));
  CHECK(free_stage(5, 3).pcp->size() == 5);
}

TEST_CASE("weight subgroups of the free p=5, n=3 stage") {
  auto s = free_stage(5, 3);
  CHECK(weight_subgroup(s.pcp, 1).log_order() == 5);
  CHECK(weight_subgroup(s.pcp, 2).log_order() == 3);
  CHECK(weight_subgroup(s.pcp, 3).log_order() == 0);
  auto x = s.x, y = s.y;
  auto l2 = weight_subgroup(s.pcp, 2);
  CHECK(l2.contains(power(x, 5)));
  CHECK(l2.contains(power(y, 5)));
  CHECK(l2.contains(commutator(x, y)));
  CHECK(SubgroupBasis::generated_by(s.pcp, {power(x, 5), power(y, 5), commutator(x, y)}) == l2);
}

TEST_CASE("p_cover tail counts") {
  CHECK(p_cover(PcPresentation(5, 2)).pcp.size() == 5);
  CHECK(p_cover(PcPresentation(3, 2)).pcp.size() == 5);
  CHECK(p_cover(PcPresentation(3, 0)).pcp.size() == 0);
  auto c = p_cover(PcPresentation(5, 2));
  CHECK(c.first_tail == 2);
  CHECK(enforce_consistency(c).pcp.size() == 5);
}

TEST_CASE("impose_relations kills the power tails of the free product") {
  for (std::uint32_t p : {3u, 5u}) {
    Cover  cover = p_cover(PcPresentation(p, 2));
    auto   mid   = std::make_shared<PcPresentation const>(enforce_consistency(cover).pcp);
    auto   x     = GroupElement::generator(mid, 0);
    auto   y     = GroupElement::generator(mid, 1);
    auto   q     = impose_relations(*mid, cover.first_tail, x, y, FpPresentation::free_product(p));
    CHECK(q.pcp.size() == 3);
    auto same = impose_relations(*mid, cover.first_tail, x, y, FpPresentation::free_group());
    CHECK(same.pcp.size() == 5);
  }
}

TEST_CASE("impose_relations rejects relators outside the tail layer") {
  Cover cover = p_cover(PcPresentation(3, 2));
  auto  mid   = std::make_shared<PcPresentation const>(enforce_consistency(cover).pcp);
  auto  x     = GroupElement::generator(mid, 0);
  auto  y     = GroupElement::generator(mid, 1);
  FpPresentation fp{{{{0, 1}}}};
  CHECK_THROWS_AS(impose_relations(*mid, cover.first_tail, x, y, fp), QuotientError);
}

TEST_CASE("every stage is consistent and weighted; truncations are epimorphisms") {
  struct Case {
    FpPresentation fp;
    std::uint32_t  p;
    unsigned       n;
  };
  for (auto const& c : {Case{FpPresentation::free_product(3), 3, 6},
                        Case{FpPresentation::free_product(2), 2, 5},
                        Case{FpPresentation::free_product(5), 5, 4},
                        Case{FpPresentation::free_group(), 3, 4},
                        Case{FpPresentation::free_group(), 2, 4},
                        Case{FpPresentation::free_group(), 5, 3}}) {
    auto tower = p_quotient_tower(c.fp, c.p, c.n);
    REQUIRE(tower.stages.size() == c.n - 1);
    for (std::size_t k = 0; k < tower.stages.size(); ++k) {
      auto const& s = tower.stages[k];
      CHECK(is_consistent(*s.pcp));
      CHECK(s.pcp->is_weighted());
      CHECK(weight_subgroup(s.pcp, s.n).log_order() == 0);
      CHECK(weight_subgroup(s.pcp, s.n - 1).log_order() > 0);
      CHECK(generates(s.x, s.y));
      if (k > 0) {
        auto h = truncation(s, tower.stages[k - 1]);
        CHECK(h.is_surjective());
      }
    }
  }
}

TEST_CASE("weight-k generator counts are the lambda-layer ranks") {
  for (auto const& s : {free_stage(3, 4), freeprod_stage(3, 5), free_stage(2, 4)}) {
    PcGroup     g(s.pcp);
    auto        series = lambda_series(g, s.pcp->prime());
    std::size_t prev   = g.order();
    for (unsigned k = 1; k < s.n; ++k) {
      std::size_t count = 0;
      for (auto w : s.pcp->weights()) {
        count += w == k;
      }
      std::size_t next = k < series.size() ? series[k].size() : 1;
      CHECK(prev / next == ipow(s.pcp->prime(), count));
      prev = next;
    }
  }
}

TEST_CASE("orders of x and y in the stages") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (unsigned n = 2; n <= 4; ++n) {
      if (p == 5 && n == 4) {
        continue;
      }
      auto f = free_stage(p, n);
      CHECK(order(f.x) == ipow(p, n - 1));
      CHECK(order(f.y) == ipow(p, n - 1));
      auto g = freeprod_stage(p, n);
      CHECK(order(g.x) == p);
      CHECK(order(g.y) == p);
    }
  }
}

TEST_CASE("free product stages: lambda_n equals gamma_n") {
  auto s = freeprod_stage(3, 6);
  for (unsigned k = 1; k <= 6; ++k) {
    CHECK(lower_central_term(s.pcp, k) == weight_subgroup(s.pcp, k));
    // p-th powers of weight-k generators fall in weight k+1 or deeper
  }
  for (std::size_t i = 0; i < s.pcp->size(); ++i) {
    for (auto const& l : to_sparse(s.pcp->power(i))) {
      CHECK(s.pcp->weight(l.gen) >= s.pcp->weight(i) + 1);
    }
  }
}

TEST_CASE("homomorphisms") {
  auto s = freeprod_stage(3, 4);
  SUBCASE("identity") {
    auto h = stage_homomorphism(s, s.pcp, s.x, s.y);
    CHECK(h.is_surjective());
    CHECK(kernel_meet_layer(h, 4).log_order() == 0);
  }
  SUBCASE("onto the trivial group") {
    auto triv = std::make_shared<PcPresentation const>(PcPresentation(3, 0));
    auto h    = stage_homomorphism(s, triv, GroupElement::identity(triv),
                                   GroupElement::identity(triv));
    CHECK(h.is_surjective());
    CHECK(kernel_meet_layer(h, 4) == weight_subgroup(s.pcp, 3));
  }
  SUBCASE("both generators to the same element") {
    auto e = fixtures::elementary(3, 2);
    auto a = GroupElement::generator(e, 0);
    auto h = stage_homomorphism(s, e, a, a);
    CHECK_FALSE(h.is_surjective());
  }
  SUBCASE("a relation violation is reported") {
    // x of order 3 cannot go to an element of order 9
    auto f = free_stage(3, 3);
    CHECK_THROWS_AS(stage_homomorphism(s, f.pcp, f.x, f.y), HomomorphismError);
  }
}

TEST_CASE("tower text round trip") {
  auto tower = p_quotient_tower(FpPresentation::free_product(3), 3, 5);
  auto text  = format_tower(tower);
  auto back  = parse_tower(text);
  REQUIRE(back.stages.size() == tower.stages.size());
  for (std::size_t k = 0; k < back.stages.size(); ++k) {
    CHECK(*back.stages[k].pcp == *tower.stages[k].pcp);
    CHECK(back.stages[k].x.exponents() == tower.stages[k].x.exponents());
    CHECK(back.stages[k].n == tower.stages[k].n);
  }
  CHECK(format_tower(back) == text);
}

TEST_CASE("p_quotient argument checks") {
  CHECK_THROWS(p_quotient(FpPresentation::free_group(), 4, 3));
  CHECK_THROWS(p_quotient(FpPresentation::free_group(), 3, 1));
  QuotientOptions tight;
  tight.max_generators = 6;
  CHECK_THROWS_AS(p_quotient(FpPresentation::free_group(), 3, 4, tight), QuotientError);
}
