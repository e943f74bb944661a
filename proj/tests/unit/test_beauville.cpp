#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "pcforge/certificate.hpp"
#include "pcforge/maxclass.hpp"
#include "pcforge/pc_model.hpp"
#include "pcforge/pquotient.hpp"

using namespace pcforge;

namespace {

  PcHandle c9_squared() {
    PcPresentation pcp(3, 4);
    pcp.set_weight(2, 2);
    pcp.set_weight(3, 2);
    pcp.set_power(0, {0, 0, 1, 0});
    pcp.set_power(1, {0, 0, 0, 1});
    pcp.finalize();
    return std::make_shared<PcPresentation const>(std::move(pcp));
  }

  SearchResult search_stage(FpPresentation const& fp, std::uint32_t p, unsigned n) {
    PcGroup g(p_quotient(fp, p, n).pcp);
    return exhaustive_beauville_search(g, p, default_max_order);
  }

  bool certify(PcGroup const& g, std::array<GroupElement, 4> const& s) {
    return beauville_check(g, s[0], s[1], s[2], s[3]).verdict;
  }

}  // namespace

TEST_CASE("C_n x C_n: Beauville exactly when gcd(n, 6) = 1") {
  for (std::uint32_t n : {2u, 3u, 4u, 5u, 6u, 7u}) {
    CyclicSquare c(n);
    std::optional<std::uint32_t> p;
    if (n == 2 || n == 4) {
      p = 2;
    } else if (n == 3 || n == 5 || n == 7) {
      p = n;
    }
    auto r = exhaustive_beauville_search(c, p, default_max_order);
    CAPTURE(n);
    CHECK(r.exhaustive);
    CHECK(r.found == (n == 5 || n == 7));
    CHECK(r.stats.obstruction_confirmed);
  }
}

TEST_CASE("C_5 x C_5: the line triples of (1,0),(0,1) and (1,2),(1,4) are disjoint") {
  CyclicSquare c(5);
  auto a = sigma(c, c.make(1, 0), c.make(0, 1));
  auto b = sigma(c, c.make(1, 2), c.make(1, 4));
  CHECK(a.socle_orbit.size() == 3);
  CHECK(sigma_disjoint(a, b));
}

TEST_CASE("C_3 x C_3: any two generating pairs overlap") {
  CyclicSquare c(3);
  std::vector<SigmaSet> all;
  for (Index x = 1; x < c.order(); ++x) {
    for (Index y = 1; y < c.order(); ++y) {
      if (generates_by_closure(c, x, y)) {
        all.push_back(sigma(c, x, y));
      }
    }
  }
  for (auto const& a : all) {
    for (auto const& b : all) {
      CHECK_FALSE(sigma_disjoint(a, b));
    }
  }
}

TEST_CASE("sigma(x, x) records only the socle class of <x>") {
  PcGroup g(fixtures::h_group());
  for (Index x : {g.generator(0), g.generator(1), g.generator(2)}) {
    auto s  = sigma(g, x, x);
    auto cl = conjugacy_class(g, minimal_subgroups_of_cyclic(g, x).front());
    std::set<Index> expect;
    for (Index c : cl) {
      expect.insert(canonical_cyclic(g, c));
    }
    CHECK(s.socle_orbit == std::vector<Index>(expect.begin(), expect.end()));
  }
}

TEST_CASE("socle-orbit disjointness agrees with element-level Sigma") {
  std::mt19937_64 rng(7);
  std::vector<PcHandle> groups{fixtures::h_group(),
                               p_quotient(FpPresentation::free_product(3), 3, 3).pcp,
                               p_quotient(FpPresentation::free_group(), 3, 2).pcp, c9_squared()};
  for (auto const& h : groups) {
    PcGroup g(h);
    std::uniform_int_distribution<Index> pick(0, static_cast<Index>(g.order() - 1));
    for (int t = 0; t < 60; ++t) {
      Index x1 = pick(rng), y1 = pick(rng), x2 = pick(rng), y2 = pick(rng);
      bool  fast = sigma_disjoint(sigma(g, x1, y1), sigma(g, x2, y2));
      bool  slow = sigma_elements_meet_trivially(g, sigma_elements(g, x1, y1),
                                                 sigma_elements(g, x2, y2));
      CHECK(fast == slow);
    }
  }
}

TEST_CASE("sigma is invariant under simultaneous conjugation") {
  PcGroup         g(fixtures::h_group());
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Index> pick(0, static_cast<Index>(g.order() - 1));
  for (int t = 0; t < 100; ++t) {
    Index x = pick(rng), y = pick(rng), h = pick(rng);
    CHECK(sigma(g, x, y).socle_orbit ==
          sigma(g, conj(g, x, h), conj(g, y, h)).socle_orbit);
  }
}

TEST_CASE("free-group stages: Beauville iff p >= 5") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{
           {2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}}) {
    auto r = search_stage(FpPresentation::free_group(), p, n);
    CAPTURE(p);
    CAPTURE(n);
    CHECK(r.exhaustive);
    CHECK_FALSE(r.found);
    CHECK(r.stats.sharing_pairs == r.stats.refuted_by_obstruction);
    CHECK(r.stats.obstruction_confirmed);
  }
  for (unsigned n : {2u, 3u}) {
    auto s = p_quotient(FpPresentation::free_group(), 5, n);
    PcGroup g(s.pcp);
    CHECK(certify(g, paper_structure_p_ge_5(s.x, s.y)));
  }
  CHECK(search_stage(FpPresentation::free_group(), 5, 2).found);
}

TEST_CASE("free-product stages at p = 3") {
  CHECK_FALSE(search_stage(FpPresentation::free_product(3), 3, 2).found);
  auto r3 = search_stage(FpPresentation::free_product(3), 3, 3);
  CHECK(r3.exhaustive);
  CHECK_FALSE(r3.found);
  CHECK(search_stage(FpPresentation::free_product(3), 3, 4).found);
  for (unsigned n : {4u, 5u}) {
    auto    s = p_quotient(FpPresentation::free_product(3), 3, n);
    PcGroup g(s.pcp);
    CHECK(certify(g, paper_structure_p3(g, s.x, s.y)));
  }
}

TEST_CASE("free-product stages at p = 5 via ({u,v}, {uv^2, uv^4})") {
  for (unsigned n : {2u, 3u, 4u}) {
    auto    s = p_quotient(FpPresentation::free_product(5), 5, n);
    PcGroup g(s.pcp);
    CHECK(certify(g, paper_structure_p_ge_5(s.x, s.y)));
  }
}

TEST_CASE("certificate text round trip and re-verification") {
  auto    s = p_quotient(FpPresentation::free_product(3), 3, 4);
  PcGroup g(s.pcp);
  auto    pr   = paper_structure_p3(g, s.x, s.y);
  auto    c    = beauville_check(g, pr[0], pr[1], pr[2], pr[3]);
  auto    text = format_certificate(c);
  auto    back = parse_certificate(text);
  CHECK(format_certificate(back) == text);
  CHECK(back.verdict);
  auto rv = reverify(back);
  CHECK(rv.ok);

  // tamper with the verdict
  auto bad = text;
  bad.replace(bad.find("verdict = beauville"), 19, "verdict = not-beauville");
  CHECK_FALSE(reverify(parse_certificate(bad)).ok);
}

TEST_CASE("certificate for an overlapping pair says not-beauville") {
  auto    s = p_quotient(FpPresentation::free_product(3), 3, 4);
  PcGroup g(s.pcp);
  auto    c = beauville_check(g, s.x, s.y, s.y, s.x);
  CHECK_FALSE(c.verdict);
  CHECK(reverify(parse_certificate(format_certificate(c))).ok);
}

TEST_CASE("xy words parse back") {
  Word w{{0, 2}, {1, -1}, {0, 1}};
  CHECK(parse_xy_word(format_xy_word(w)) == w);
  CHECK(format_xy_word({}) == "1");
  CHECK(parse_xy_word("1").empty());
  CHECK(free_reduce({{0, 1}, {1, 1}, {1, -1}, {0, 2}}) == Word{{0, 3}});
}

TEST_CASE("nonconjugate_element") {
  PcGroup a(c9_squared());
  auto    t = nonconjugate_element(a, a.element(a.generator(0)));
  CHECK(t.exponents() == Exponents{0, 0, 0, 1});

  MaxClassGroup p(3, 4);
  auto          m = pc_model(p, 3);
  PcGroup       pm(m.pcp);
  CHECK_THROWS(nonconjugate_element(pm, pm.element(pm.generator(0))));
}

TEST_CASE("lemma34_check on H") {
  PcGroup g(fixtures::h_group());
  auto    x = g.element(g.generator(0));
  auto    t = nonconjugate_element(g, x);
  CHECK(lemma34_check(g, x, t));
  // t = [x, b] makes x t a conjugate of x
  auto c = commutator(x, g.element(g.generator(1)));
  CHECK_FALSE(lemma34_check(g, x, c));
}

TEST_CASE("pc_model reproduces concrete groups") {
  PcGroup h(fixtures::h_group());
  auto    mh = pc_model(h, 3);
  CHECK(verify_pc_model(h, mh));
  CHECK(mh.pcp->size() == 5);

  oracles::MatrixGroup ut(9, {oracles::MatrixGroup::unitriangular(1, 0, 0),
                              oracles::MatrixGroup::unitriangular(0, 0, 1)});
  auto mu = pc_model(ut, 3);
  CHECK(verify_pc_model(ut, mu));
  CHECK(is_consistent(*mu.pcp));
  CHECK(group_order(*mu.pcp).value() == ut.order());

  for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 5}, {5, 3}, {7, 3}}) {
    MaxClassGroup g(p, n);
    auto          m = pc_model(g, p);
    CHECK(verify_pc_model(g, m));
    CHECK(m.pcp->is_weighted());
  }
}
