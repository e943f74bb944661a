#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "pcforge/maxclass.hpp"
#include "pcforge/nottingham.hpp"
#include "pcforge/pquotient.hpp"
#include "pcforge/report.hpp"
#include "pcforge/reproduce.hpp"

using namespace pcforge;

namespace {

  // Reference composition: expand sum_i a_i g(t)^i with plain polynomial
  // products, coefficients 1..k+1 kept as integers until the end.
  std::vector<std::uint32_t> naive_compose(std::uint32_t p, unsigned k,
                                           std::vector<std::uint32_t> const& f,
                                           std::vector<std::uint32_t> const& g) {
    std::vector<std::uint64_t> gp(k + 1, 0), acc(k + 1, 0);
    auto                       full = [&](std::vector<std::uint32_t> const& a) {
      std::vector<std::uint64_t> v(k + 1, 0);
      v[1] = 1;
      for (unsigned i = 2; i <= k; ++i) {
        v[i] = a[i - 2];
      }
      return v;
    };
    auto fv = full(f);
    auto gv = full(g);
    gp      = gv;  // g^1
    for (unsigned i = 1; i <= k; ++i) {
      for (unsigned j = 0; j <= k; ++j) {
        acc[j] = (acc[j] + fv[i] * gp[j]) % p;
      }
      std::vector<std::uint64_t> next(k + 1, 0);
      for (unsigned a = 0; a <= k; ++a) {
        for (unsigned b = 0; a + b <= k; ++b) {
          next[a + b] = (next[a + b] + gp[a] * gv[b]) % p;
        }
      }
      gp = next;
    }
    return {acc.begin() + 2, acc.end()};
  }

  template <FiniteGroup G>
  bool associative(G const& g) {
    for (Index a = 0; a < g.order(); ++a) {
      for (Index b = 0; b < g.order(); ++b) {
        Index ab = g.mul(a, b);
        for (Index c = 0; c < g.order(); ++c) {
          if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) {
            return false;
          }
        }
      }
    }
    return true;
  }

  template <FiniteGroup G>
  std::uint64_t brute_exponent(G const& g, Subgroup const& h) {
    std::uint64_t e = 1;
    for (Index x : h.elements) {
      std::uint64_t o = 1;
      for (Index w = x; w != 0; w = g.mul(w, x)) {
        ++o;
      }
      e = std::max(e, o);
    }
    return e;
  }

}  // namespace

TEST_CASE("series composition") {
  TruncSeries f(3, 4, {1, 0, 0});
  CHECK(compose(f, f) == TruncSeries(3, 4, {2, 2, 1}));
  CHECK(format_series(compose(f, f)) == "t + 2*t^2 + 2*t^3 + t^4 (mod t^5, p=3)");

  std::mt19937 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    unsigned k = 7;
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<std::uint32_t> a(k - 1), b(k - 1);
      for (auto& x : a) x = rng() % p;
      for (auto& x : b) x = rng() % p;
      CHECK(compose(TruncSeries(p, k, a), TruncSeries(p, k, b)).coeffs() ==
            naive_compose(p, k, a, b));
    }
  }
}

TEST_CASE("series inversion matches a brute-force two-sided inverse") {
  std::uint32_t const p = 3;
  unsigned const      k = 4;
  NottinghamGroup     n(p, k);
  TruncSeries const   id(p, k);
  for (Index a = 0; a < n.order(); ++a) {
    auto f = n.series(a);
    std::optional<TruncSeries> found;
    for (Index b = 0; b < n.order(); ++b) {
      auto g = n.series(b);
      if (compose(f, g) == id && compose(g, f) == id) {
        REQUIRE_FALSE(found.has_value());
        found = g;
      }
    }
    REQUIRE(found.has_value());
    CHECK(invert(f) == *found);
  }
  CHECK(invert(TruncSeries(3, 4, {1, 0, 0})) == TruncSeries(3, 4, {2, 2, 1}));
}

TEST_CASE("series text round trip and normal form") {
  NottinghamGroup n(3, 5);
  for (Index a = 0; a < n.order(); ++a) {
    auto f = n.series(a);
    CHECK(parse_series(format_series(f)) == f);
    CHECK(n.index_of(f) == a);
  }
  CHECK(format_series(TruncSeries(3, 4)) == "t (mod t^5, p=3)");
  CHECK_THROWS(parse_series("t + 3*t^2 (mod t^5, p=3)"));
  CHECK_THROWS(parse_series("t + t^7 (mod t^5, p=3)"));
  CHECK_THROWS(parse_series("2*t + t^2 (mod t^5, p=3)"));
}

TEST_CASE("Nottingham quotients are groups of order p^(k-1)") {
  for (unsigned k = 2; k <= 5; ++k) {
    NottinghamGroup n(3, k);
    CHECK(n.order() == static_cast<std::size_t>(std::pow(3, k - 1)));
    CHECK(closure(n, n.generators()).size() == n.order());
    if (k <= 4) {
      CHECK(associative(n));
    }
    for (Index a = 0; a < n.order(); ++a) {
      CHECK(n.mul(a, n.inv(a)) == 0);
    }
  }
  NottinghamGroup n5(5, 4);
  CHECK(associative(n5));
}

TEST_CASE("Nottingham congruence subgroups and r(i)") {
  NottinghamGroup n(3, 7);
  for (unsigned m = 1; m <= 7; ++m) {
    auto s = n.subgroup_Nk(m);
    CHECK(s.size() == static_cast<std::size_t>(std::pow(3, 7 - m)));
    for (Index x : s.elements) {
      CHECK(n.series(x).depth() >= m);
    }
  }
  // r(i) = i + 1 + floor((i - 2)/2) at p = 3
  CHECK(nottingham_r(3, 2) == 3);
  CHECK(nottingham_r(3, 3) == 4);
  CHECK(nottingham_r(3, 4) == 6);
  CHECK(nottingham_r(3, 5) == 7);
  for (auto const& row : lcs_check(3, 8)) {
    if (row.asserted) {
      CHECK(row.equal);
    }
  }
  CHECK(power_subgroup_check(3, 6, 1) == std::optional<bool>(true));
  CHECK_FALSE(power_subgroup_check(3, 5, 2).has_value());
}

TEST_CASE("maximal-class group P(p, n)") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 3}, {3, 4}, {3, 5}, {5, 3}}) {
    MaxClassGroup P(p, n);
    CHECK(P.order() == static_cast<std::size_t>(std::pow(p, n)));
    if (P.order() <= 243) {
      CHECK(associative(P));
    }
    CHECK(closure(P, P.generators()).size() == P.order());
    // centralizer of s, by brute force: order p^2
    std::size_t c = 0;
    for (Index x = 0; x < P.order(); ++x) {
      c += P.mul(x, P.s()) == P.mul(P.s(), x);
    }
    CHECK(c == std::size_t(p) * p);
    for (Index x = 0; x < P.order(); ++x) {
      if (!P.in_p1(x)) {
        CHECK(element_order(P, x) == p);
      }
    }
    auto ser = gamma_series_P(P);
    for (unsigned i = 1; i < ser.size(); ++i) {
      CHECK(brute_exponent(P, ser[i]) == expected_exponent(p, n, i));
    }
  }
  CHECK_THROWS(MaxClassGroup(2, 4));
  CHECK_THROWS(MaxClassGroup(9, 4));
  CHECK_THROWS(MaxClassGroup(3, 2));
}

TEST_CASE("expected_exponent") {
  CHECK(expected_exponent(3, 5, 1) == 9);
  CHECK(expected_exponent(3, 5, 3) == 3);
  CHECK(expected_exponent(5, 4, 1) == 5);
  CHECK(expected_exponent(3, 6, 1) == 27);
}

TEST_CASE("psi is onto P(3, n)") {
  auto fp = FpPresentation::free_product(3);
  for (unsigned n : {3u, 4u, 5u}) {
    MaxClassGroup P(3, n);
    auto          st = p_quotient(fp, 3, n);
    CHECK(psi(st, P).hom.is_surjective());
  }
}

TEST_CASE("iso_search") {
  auto h = std::make_shared<PcPresentation const>(fixtures::h_presentation());
  auto r = iso_search(h, h);
  REQUIRE(r.verdict == IsoResult::Verdict::isomorphic);
  // the map is a bijection
  PcGroup         g(h);
  std::set<Index> img;
  for (Index a = 0; a < g.order(); ++a) {
    img.insert(g.index_of((*r.iso)(g.element(a))));
  }
  CHECK(img.size() == g.order());

  auto n6 = nottingham_pc(3, 6);
  CHECK(iso_search(h, n6).verdict == IsoResult::Verdict::isomorphic);
  auto maxc = pc_model(MaxClassGroup(3, 5), 3).pcp;
  CHECK(iso_search(h, maxc).verdict == IsoResult::Verdict::invariant_differs);
}

TEST_CASE("report formats") {
  Report r;
  r.invocation = "reproduce demo";
  r.add("a.one", true, "fine");
  r.add("a.two", false, "broken");
  r.skip("a.three", "too big");
  CHECK(r.count(CheckStatus::pass) == 1);
  CHECK_FALSE(r.ok());
  CHECK(format_report(r) ==
        "# reproduce demo\n"
        "CHECK a.one PASS fine\n"
        "CHECK a.two FAIL broken\n"
        "CHECK a.three SKIP too big\n"
        "# summary pass=1 fail=1 skip=1\n");
  ReportStyle js;
  js.format = ReportFormat::json_lines;
  std::istringstream in(format_report(r, js));
  std::string        line;
  std::vector<nlohmann::json> objs;
  while (std::getline(in, line)) {
    objs.push_back(nlohmann::json::parse(line));
  }
  REQUIRE(objs.size() == 4);
  CHECK(objs[1]["status"] == "FAIL");
  CHECK(objs[3]["summary"]["skip"] == 1);
}

TEST_CASE("reproduce sections") {
  CHECK_THROWS_AS(reproduce("nope"), std::invalid_argument);
  auto r = reproduce("catanese");
  CHECK(r.ok());
  CHECK(r.lines.size() == 6);
  ReproduceOptions two;
  two.threads = 2;
  CHECK(format_report(reproduce("lemma2.3", two)) == format_report(reproduce("lemma2.3")));
}
