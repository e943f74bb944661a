#include "pcforge/reproduce.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "pcforge/beauville.hpp"
#include "pcforge/certificate.hpp"
#include "pcforge/maxclass.hpp"
#include "pcforge/nottingham.hpp"
#include "pcforge/pc_model.hpp"
#include "pcforge/pcgroup.hpp"
#include "pcforge/pquotient.hpp"
#include "pcforge/subgroup.hpp"

namespace pcforge {

  PcPresentation h_presentation() {
    PcPresentation pcp(3, 5);
    pcp.set_weight(2, 2);
    pcp.set_weight(3, 3);
    pcp.set_weight(4, 3);
    pcp.set_commutator(1, 0, {0, 0, 1, 0, 0});
    pcp.set_commutator(2, 0, {0, 0, 0, 1, 0});
    pcp.set_commutator(2, 1, {0, 0, 0, 0, 1});
    pcp.finalize();
    return pcp;
  }

  namespace {

    using Clock = std::chrono::steady_clock;

    // Checks of one section; each line is charged the time since the
    // previous one.
    class Section {
     public:
      explicit Section(std::string prefix) : prefix_(std::move(prefix)), last_(Clock::now()) {}

      void add(std::string const& id, bool ok, std::string detail) {
        report.add(prefix_ + "." + id, ok, std::move(detail), lap());
      }
      void skip(std::string const& id, std::string reason) {
        report.skip(prefix_ + "." + id, std::move(reason), lap());
      }
      void attach(std::string name, std::string text) {
        report.attachments.push_back({std::move(name), std::move(text)});
      }
      // Runs f, turning an exception into a FAIL line.
      void guard(std::string const& id, std::function<void()> const& f) {
        try {
          f();
        } catch (std::exception const& e) {
          add(id, false, std::string("error: ") + e.what());
        }
      }

      Report finish() {
        report.seconds = 0;
        for (auto const& l : report.lines) {
          report.seconds += l.seconds;
        }
        return std::move(report);
      }

      Report report;

     private:
      double lap() {
        auto   now = Clock::now();
        double s   = std::chrono::duration<double>(now - last_).count();
        last_      = now;
        return s;
      }

      std::string       prefix_;
      Clock::time_point last_;
    };

    std::uint64_t ipow(std::uint64_t b, unsigned e) {
      std::uint64_t r = 1;
      while (e-- > 0) {
        r *= b;
      }
      return r;
    }

    unsigned ceil_div(unsigned a, unsigned b) {
      return (a + b - 1) / b;
    }

    std::string pow_text(std::uint32_t p, std::size_t e) {
      return std::to_string(p) + "^" + std::to_string(e);
    }

    FpPresentation family(bool freeprod, std::uint32_t p) {
      return freeprod ? FpPresentation::free_product(p) : FpPresentation::free_group();
    }

    std::string label(bool freeprod, std::uint32_t p, unsigned n) {
      return std::string(freeprod ? "freeprod" : "free") + ".p" + std::to_string(p) + ".n" +
             std::to_string(n);
    }

    Stage stage(bool freeprod, std::uint32_t p, unsigned n) {
      return p_quotient(family(freeprod, p), p, n);
    }

    // x/y word of an element of a stage
    std::string word(GroupElement const& g) {
      return format_xy_word(free_reduce(element_word(generator_words(*g.presentation()),
                                                     g.exponents())));
    }

    std::string pair_text(std::array<GroupElement, 4> const& s) {
      return "{" + word(s[0]) + ", " + word(s[1]) + "}, {" + word(s[2]) + ", " + word(s[3]) + "}";
    }

    // x and y agree modulo the generators of weight >= w
    bool same_mod_weight(GroupElement const& x, GroupElement const& y, unsigned w) {
      auto const& pcp = *x.presentation();
      for (std::size_t i = 0; i < pcp.size() && pcp.weight(i) < w; ++i) {
        if (x.exponents()[i] != y.exponents()[i]) {
          return false;
        }
      }
      return true;
    }

    unsigned pc_class(PcPresentation const& pcp) {
      return pcp.size() == 0 ? 0 : pcp.weight(pcp.size() - 1);
    }

    GroupElement random_element(PcHandle const& pcp, std::mt19937_64& rng) {
      std::uniform_int_distribution<std::uint32_t> d(0, pcp->prime() - 1);
      Exponents                                     e(pcp->size());
      for (auto& c : e) {
        c = d(rng);
      }
      return GroupElement(pcp, e);
    }

    std::uint64_t seed_for(ReproduceOptions const& opt, std::string const& name) {
      return opt.seed ^ std::hash<std::string>{}(name);
    }

    struct Named {
      std::string name;
      PcHandle    pcp;
    };

    PcHandle model_of(MaxClassGroup const& g) {
      return pc_model(g, g.prime()).pcp;
    }

    // ---------------------------------------------------------------- catanese

    Report catanese(ReproduceOptions const& opt) {
      Section s("catanese");
      for (std::uint32_t n = 2; n <= 7; ++n) {
        CyclicSquare                 c(n);
        std::optional<std::uint32_t> p;
        for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
          std::uint32_t m = n;
          while (m % q == 0) {
            m /= q;
          }
          if (m == 1) {
            p = q;
          }
        }
        auto r      = exhaustive_beauville_search(c, p, opt.max_order);
        bool expect = std::gcd(n, 6u) == 1;
        std::ostringstream d;
        if (r.found) {
          auto pt = [&](Index a) {
            return "(" + std::to_string(a / n) + "," + std::to_string(a % n) + ")";
          };
          d << "Beauville: {" << pt(r.witness[0]) << ", " << pt(r.witness[1]) << "}, {"
            << pt(r.witness[2]) << ", " << pt(r.witness[3]) << "}";
        } else {
          d << "absent (exhaustive, " << r.stats.class_pairs << " class pairs)";
        }
        d << "; expected " << (expect ? "present" : "absent");
        s.add("C" + std::to_string(n) + "xC" + std::to_string(n),
              r.exhaustive && r.found == expect && r.stats.obstruction_confirmed, d.str());
      }
      return s.finish();
    }

    // ---------------------------------------------------------------- free group

    Report thm_a(ReproduceOptions const& opt) {
      Section s("thmA");
      for (unsigned n : {2u, 3u}) {
        std::string id = label(false, 5, n);
        s.guard(id + ".paper", [&] {
          auto    st   = stage(false, 5, n);
          PcGroup g(st.pcp, opt.max_order);
          auto    pr   = paper_structure_p_ge_5(st.x, st.y);
          auto    cert = beauville_check(g, pr[0], pr[1], pr[2], pr[3]);
          auto    text = format_certificate(cert);
          auto    rv   = reverify(parse_certificate(text));
          s.add(id + ".paper", cert.verdict && rv.ok,
                "order " + pow_text(5, st.pcp->size()) + ", " + pair_text(pr) +
                    (cert.verdict ? " certified" : " NOT disjoint") +
                    (rv.ok ? ", re-verified from text" : ", re-verification failed: " + rv.reason));
          s.attach(id, text);
        });
        s.guard(id + ".search", [&] {
          PcGroup g(stage(false, 5, n).pcp, opt.max_order);
          auto    r = exhaustive_beauville_search(g, 5u, opt.max_order);
          s.add(id + ".search", r.found, r.found ? "structure found by search" : "none found");
        });
      }
      for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{
               {2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}}) {
        std::string id = label(false, p, n) + ".absent";
        s.guard(id, [&, p = p, n = n] {
          PcGroup g(stage(false, p, n).pcp, opt.max_order);
          auto    r  = exhaustive_beauville_search(g, p, opt.max_order);
          bool    ok = r.exhaustive && !r.found &&
                    r.stats.sharing_pairs == r.stats.refuted_by_obstruction &&
                    r.stats.obstruction_confirmed;
          std::ostringstream d;
          d << "order " << pow_text(p, g.presentation()->size()) << ", "
            << (r.found ? "structure FOUND" : "absent (exhaustive)") << "; "
            << r.stats.class_pairs << " class pairs, " << r.stats.sharing_pairs
            << " share a maximal subgroup, " << r.stats.refuted_by_obstruction
            << " refuted by its power subgroup"
            << (r.stats.obstruction_confirmed ? " (confirmed)" : " (NOT confirmed)");
          s.add(id, ok, d.str());
        });
      }
      return s.finish();
    }

    // ---------------------------------------------------------------- congruences

    // (xy)^q = x^q y^q and, for y in Phi, (xy)^q = x^q modulo lambda_n, for
    // all 3 <= n <= class + 1 and q = p^(n-2).
    std::string hall_petrescu_exhaustive(PcHandle const& pcp, bool& ok) {
      PcGroup     g(pcp);
      std::size_t pairs = 0;
      unsigned    c     = pc_class(*pcp);
      std::size_t d     = frattini_rank(*pcp);
      std::size_t phi   = g.order() / ipow(pcp->prime(), static_cast<unsigned>(d));
      for (unsigned n = 3; n <= c + 1; ++n) {
        auto const         q = static_cast<std::int64_t>(ipow(pcp->prime(), n - 2));
        std::vector<Index> pw(g.order());
        for (Index x = 0; x < g.order(); ++x) {
          pw[x] = power(g, x, q);
        }
        for (Index x = 0; x < g.order(); ++x) {
          for (Index y = 0; y < g.order(); ++y) {
            ++pairs;
            Index xy = pw[g.mul(x, y)];
            if (!g.congruent_mod_weight(xy, g.mul(pw[x], pw[y]), n)) {
              ok = false;
            }
            // Phi is the initial segment of indices
            if (y < phi && !g.congruent_mod_weight(xy, pw[x], n)) {
              ok = false;
            }
          }
        }
      }
      return std::to_string(pairs) + " (x, y, n) triples";
    }

    std::string hall_petrescu_sampled(PcHandle const& pcp, std::size_t samples,
                                      std::uint64_t seed, bool& ok) {
      std::mt19937_64 rng(seed);
      unsigned        c = pc_class(*pcp);
      for (std::size_t t = 0; t < samples; ++t) {
        auto x = random_element(pcp, rng);
        auto y = random_element(pcp, rng);
        for (unsigned n = 3; n <= c + 1; ++n) {
          auto q  = static_cast<std::int64_t>(ipow(pcp->prime(), n - 2));
          auto xq = power(x, q);
          if (!same_mod_weight(power(x * y, q), xq * power(y, q), n)) {
            ok = false;
          }
          // y pushed into Phi by a commutator
          auto z = commutator(y, x);
          if (!same_mod_weight(power(x * z, q), xq, n)) {
            ok = false;
          }
        }
      }
      return std::to_string(samples) + " sampled pairs";
    }

    Report lemma22(ReproduceOptions const& opt) {
      Section            s("lemma2.2");
      std::vector<Named> small;
      for (std::uint32_t p : {3u, 5u, 7u}) {
        for (bool fp : {false, true}) {
          for (unsigned n = 2;; ++n) {
            auto st = stage(fp, p, n);
            if (ipow(p, static_cast<unsigned>(st.pcp->size())) > 243) {
              break;
            }
            small.push_back({label(fp, p, n), st.pcp});
          }
        }
      }
      for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 3}, {3, 4}, {3, 5}, {5, 3}}) {
        small.push_back({"maxclass.p" + std::to_string(p) + ".n" + std::to_string(n),
                         model_of(MaxClassGroup(p, n))});
      }
      for (auto const& g : small) {
        s.guard(g.name, [&] {
          bool ok     = true;
          auto detail = hall_petrescu_exhaustive(g.pcp, ok);
          s.add(g.name, ok, "exhaustive over " + detail);
        });
      }
      std::vector<Named> large{{label(false, 3, 4), stage(false, 3, 4).pcp},
                               {label(false, 5, 3), stage(false, 5, 3).pcp},
                               {label(false, 7, 3), stage(false, 7, 3).pcp},
                               {label(true, 5, 4), stage(true, 5, 4).pcp}};
      for (unsigned n : {5u, 6u, 7u}) {
        large.push_back({label(true, 3, n), stage(true, 3, n).pcp});
      }
      large.push_back({"maxclass.p3.n6", model_of(MaxClassGroup(3, 6))});
      large.push_back({"maxclass.p3.n7", model_of(MaxClassGroup(3, 7))});
      large.push_back({"maxclass.p5.n4", model_of(MaxClassGroup(5, 4))});
      for (auto const& g : large) {
        s.guard(g.name, [&] {
          bool ok     = true;
          auto detail = hall_petrescu_sampled(g.pcp, opt.samples, seed_for(opt, g.name), ok);
          s.add(g.name, ok, detail + ", order " + pow_text(g.pcp->prime(), g.pcp->size()));
        });
      }
      // p = 2: gamma_2^(2^(n-3)) only lies in lambda_(n-1)
      s.guard("p2-counterexample", [&] {
        auto st = stage(false, 2, 3);
        PcGroup g(st.pcp);
        std::optional<std::pair<Index, Index>> bad;
        for (Index x = 0; x < g.order() && !bad; ++x) {
          for (Index y = 0; y < g.order() && !bad; ++y) {
            if (!g.congruent_mod_weight(power(g, g.mul(x, y), 2),
                                        g.mul(power(g, x, 2), power(g, y, 2)), 3)) {
              bad = std::make_pair(x, y);
            }
          }
        }
        s.add("p2-counterexample", bad.has_value(),
              bad ? "free.p2.n3: (ab)^2 != a^2 b^2 mod lambda_3 for (a, b) = (" +
                        word(g.element(bad->first)) + ", " + word(g.element(bad->second)) +
                        "); the congruence needs p odd"
                  : "no counterexample at p = 2");
      });
      return s.finish();
    }

    // ---------------------------------------------------------------- independent powers

    Report lemma23(ReproduceOptions const&) {
      Section s("lemma2.3");
      for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{
               {3, 2}, {3, 3}, {3, 4}, {5, 2}, {5, 3}}) {
        std::string id = label(false, p, n);
        s.guard(id, [&, p = p, n = n] {
          auto st  = stage(false, p, n);
          auto q   = static_cast<std::int64_t>(ipow(p, n - 2));
          auto a   = power(st.x, q);
          auto b   = power(st.y, q);
          auto lay = weight_subgroup(st.pcp, n - 1);
          auto ca  = lay.coordinates(a);
          auto cb  = lay.coordinates(b);
          bool ok  = ca && cb;
          std::size_t rk = 0;
          if (ok) {
            rk = gfp::rank({*ca, *cb}, ca->size(), p);
          }
          auto ox = order(st.x), oy = order(st.y);
          ok      = ok && rk == 2 && ox == ipow(p, n - 1) && oy == ox;
          s.add(id, ok,
                "x^" + std::to_string(q) + ", y^" + std::to_string(q) + " in lambda_" +
                    std::to_string(n - 1) + "/lambda_" + std::to_string(n) + ": rank " +
                    std::to_string(rk) + "; o(x) = o(y) = " + std::to_string(ox));
        });
      }
      return s.finish();
    }

    // ---------------------------------------------------------------- maximal subgroups

    Report lemma24(ReproduceOptions const& opt) {
      Section s("lemma2.4");
      for (std::uint32_t p : {3u, 5u}) {
        unsigned const n  = 3;
        std::string    id = label(false, p, n);
        s.guard(id, [&] {
          auto    st = stage(false, p, n);
          PcGroup g(st.pcp, opt.max_order);
          auto    fd = frattini_data(g, p);
          auto    q  = static_cast<std::int64_t>(ipow(p, n - 2));
          std::vector<Subgroup> pw(fd.nlines, trivial_subgroup(g));
          bool orders_ok = true;
          for (Index x = 0; x < g.order(); ++x) {
            if (fd.in_phi[x]) {
              continue;
            }
            orders_ok = orders_ok && element_order(g, x) == ipow(p, n - 1);
            extend(g, pw[fd.line[x]], power(g, x, q));
          }
          bool ok = fd.nlines == p + 1 && orders_ok;
          for (std::size_t i = 0; i < pw.size(); ++i) {
            ok = ok && pw[i].size() == p;
            for (Index z : pw[i].elements) {
              ok = ok && g.congruent_mod_weight(z, 0, n - 1);
            }
            for (std::size_t j = 0; j < i; ++j) {
              ok = ok && pw[i].member != pw[j].member;
            }
          }
          s.add(id, ok,
                std::to_string(fd.nlines) + " maximal subgroups M; each M^" + std::to_string(q) +
                    " has order " + std::to_string(pw.front().size()) +
                    ", pairwise distinct, inside lambda_" + std::to_string(n - 1) +
                    "; elements of M outside Phi have order " + std::to_string(ipow(p, n - 1)));
        });
      }
      return s.finish();
    }

    // ---------------------------------------------------------------- easterfield

    template <FiniteGroup G>
    std::pair<bool, std::string> easterfield(G const& g, std::uint32_t p) {
      auto     lcs = lower_central_series(g);
      unsigned c   = static_cast<unsigned>(lcs.size() - 1);
      unsigned k   = std::max(1u, ceil_div(c, p - 1));
      std::vector<std::uint64_t> ord(g.order());
      for (Index x = 0; x < g.order(); ++x) {
        ord[x] = element_order(g, x);
      }
      bool               ok = true;
      std::ostringstream d;
      d << "class " << c << ", k = " << k << ";";
      for (unsigned i = 1;; ++i) {
        std::uint64_t const q  = ipow(p, i);
        Subgroup            om = trivial_subgroup(g);
        for (Index x = 0; x < g.order(); ++x) {
          if (q % ord[x] == 0) {
            extend(g, om, x);
          }
        }
        std::uint64_t e = 1;
        for (Index x : om.elements) {
          e = std::max(e, ord[x]);
        }
        std::uint64_t bound = ipow(p, i + k - 1);
        ok                  = ok && e <= bound;
        d << " exp Omega_" << i << " = " << e << " <= " << bound;
        if (om.size() == g.order()) {
          d << " (Omega_" << i << " = G)";
          break;
        }
        d << ",";
      }
      return {ok, d.str()};
    }

    Report easterfield_section(ReproduceOptions const& opt) {
      Section            s("easterfield");
      std::vector<Named> groups;
      for (std::uint32_t p : {3u, 5u}) {
        std::uint64_t const cap = p == 3 ? ipow(3, 6) : ipow(5, 5);
        for (bool fp : {false, true}) {
          for (unsigned n = 2;; ++n) {
            auto st = stage(fp, p, n);
            if (ipow(p, static_cast<unsigned>(st.pcp->size())) > cap) {
              break;
            }
            groups.push_back({label(fp, p, n), st.pcp});
          }
        }
        for (unsigned n = 3; ipow(p, n) <= cap; ++n) {
          groups.push_back({"maxclass.p" + std::to_string(p) + ".n" + std::to_string(n),
                            model_of(MaxClassGroup(p, n))});
        }
      }
      for (unsigned k = 2; k <= 7; ++k) {
        groups.push_back({"nottingham.p3.k" + std::to_string(k), nottingham_pc(3, k)});
      }
      {
        auto          st5 = stage(true, 3, 5);
        MaxClassGroup P(3, 5);
        auto          ps = psi(st5, P);
        auto          K  = kernel_meet_layer(ps.hom, 5);
        auto          h  = refinement_series(st5, stage(true, 3, 4), K);
        groups.push_back({"freeprod.p3.F/K", h[1].quotient.pcp});
      }
      for (auto const& g : groups) {
        s.guard(g.name, [&] {
          PcGroup pg(g.pcp, opt.max_order);
          auto [ok, detail] = easterfield(pg, g.pcp->prime());
          s.add(g.name, ok, "order " + pow_text(g.pcp->prime(), g.pcp->size()) + ", " + detail);
        });
      }
      return s.finish();
    }

    // ---------------------------------------------------------------- free product, p >= 5

    Report thm32(ReproduceOptions const& opt) {
      Section s("thm3.2");
      for (unsigned n : {2u, 3u, 4u}) {
        std::string id = label(true, 5, n);
        s.guard(id, [&] {
          auto    st   = stage(true, 5, n);
          PcGroup g(st.pcp, opt.max_order);
          auto    pr   = paper_structure_p_ge_5(st.x, st.y);
          auto    cert = beauville_check(g, pr[0], pr[1], pr[2], pr[3]);
          auto    rv   = reverify(parse_certificate(format_certificate(cert)));
          auto    ouv  = order(st.x * st.y);
          auto    want = ipow(5, ceil_div(n - 1, 4));
          bool    ok   = cert.verdict && rv.ok && ouv == want;
          std::ostringstream d;
          d << "order " << pow_text(5, st.pcp->size()) << ", " << pair_text(pr)
            << (cert.verdict ? " certified" : " NOT disjoint") << "; o(uv) = " << ouv
            << " (expected " << want << ")";
          if (n >= 3) {
            MaxClassGroup P(5, n);
            auto          ps = psi(st, P);
            auto          os = element_order(P, P.s1());
            auto          im = order(ps.hom(st.x * st.y));
            ok               = ok && ps.hom.is_surjective() && os == ouv && im == os;
            d << "; psi onto P(5," << n << ") " << (ps.hom.is_surjective() ? "surjective" : "NOT onto")
              << ", o(s_1) = " << os;
          }
          s.add(id, ok, d.str());
          s.attach(id, format_certificate(cert));
        });
      }
      return s.finish();
    }

    // ---------------------------------------------------------------- conjugate cyclic subgroups

    Report lemma33(ReproduceOptions const& opt) {
      Section s("lemma3.3");
      for (unsigned n : {4u, 5u}) {
        std::string id = label(true, 3, n);
        s.guard(id, [&] {
          auto    st = stage(true, 3, n);
          PcGroup g(st.pcp, opt.max_order);
          bool    ok = true;
          std::string d;
          for (auto const& [name, x] : {std::pair{"u", st.x}, std::pair{"v", st.y}}) {
            auto t   = nonconjugate_element(g, x);
            bool lem = lemma34_check(g, x, t);
            ok       = ok && lem;
            d += std::string(d.empty() ? "" : "; ") + name + ": t = " + word(t) +
                 (lem ? ", conjugates of <" : ", OVERLAP of <") + name + "> and <" + name +
                 " t> meet trivially";
          }
          s.add(id, ok, d);
        });
      }
      s.guard("sharpness", [&] {
        auto    st = stage(true, 3, 4);
        PcGroup g(st.pcp, opt.max_order);
        auto    t  = commutator(st.x, st.y);
        bool    l  = lemma34_check(g, st.x, t);
        s.add("sharpness", !l, "t = [u, v]: u t = u^v, so <u t> is conjugate to <u>");
      });
      s.guard("maxclass-precondition", [&] {
        MaxClassGroup P(3, 5);
        PcGroup       g(model_of(P));
        bool          threw = false;
        try {
          nonconjugate_element(g, g.element(g.generator(0)));
        } catch (std::invalid_argument const&) {
          threw = true;
        }
        s.add("maxclass-precondition", threw, "P(3,5) rejected as being of maximal class");
      });
      return s.finish();
    }

    // ---------------------------------------------------------------- free product, p = 3

    Report thm34(ReproduceOptions const& opt) {
      Section s("thm3.4");
      auto    tower = p_quotient_tower(FpPresentation::free_product(3), 3, 7);
      auto    st    = [&](unsigned n) -> Stage const& { return tower.stages.at(n - 2); };

      for (unsigned n : {2u, 3u}) {
        std::string id = label(true, 3, n) + ".absent";
        s.guard(id, [&] {
          PcGroup g(st(n).pcp, opt.max_order);
          auto    r = exhaustive_beauville_search(g, 3u, opt.max_order);
          s.add(id, r.exhaustive && !r.found,
                "order " + pow_text(3, st(n).pcp->size()) + ", absent (exhaustive, " +
                    std::to_string(r.stats.class_pairs) + " class pairs)");
        });
      }
      s.guard("freeprod.p3.n4.is-H", [&] {
        auto h = std::make_shared<PcPresentation const>(h_presentation());
        auto r = iso_search(st(4).pcp, h);
        s.add("freeprod.p3.n4.is-H", r.verdict == IsoResult::Verdict::isomorphic,
              "order " + pow_text(3, st(4).pcp->size()) + ", isomorphism onto H: " + r.detail);
      });
      s.guard("freeprod.p3.n4.search", [&] {
        PcGroup g(st(4).pcp, opt.max_order);
        auto    r = exhaustive_beauville_search(g, 3u, opt.max_order);
        s.add("freeprod.p3.n4.search", r.found, r.found ? "structure found by search" : "none");
      });
      for (unsigned n : {4u, 5u}) {
        std::string id = label(true, 3, n) + ".paper";
        s.guard(id, [&] {
          PcGroup g(st(n).pcp, opt.max_order);
          auto    pr   = paper_structure_p3(g, st(n).x, st(n).y);
          auto    cert = beauville_check(g, pr[0], pr[1], pr[2], pr[3]);
          auto    rv   = reverify(parse_certificate(format_certificate(cert)));
          s.add(id, cert.verdict && rv.ok,
                "order " + pow_text(3, st(n).pcp->size()) + ", {u, v}, {(uz)^-1, vt} = " +
                    pair_text(pr) + (cert.verdict ? " certified" : " NOT disjoint"));
          s.attach(label(true, 3, n), format_certificate(cert));
        });
      }
      for (unsigned n : {4u, 5u}) {
        std::string id = label(true, 3, n) + ".not-maximal-class";
        s.guard(id, [&] {
          PcGroup g(st(n).pcp, opt.max_order);
          s.add(id, !is_maximal_class(g, 3), "no centralizer of order 9");
        });
      }
      {
        bool        ok = true;
        std::string d;
        for (unsigned n = 2; n <= 7; ++n) {
          auto k  = ceil_div(n - 1, 2);
          auto uv = st(n).x * st(n).y;
          bool e  = order(uv) == ipow(3, k) && !power(uv, static_cast<std::int64_t>(ipow(3, k - 1))).is_identity();
          ok      = ok && e;
          d += (d.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + ": " +
               std::to_string(order(uv));
        }
        s.add("order-uv", ok, "o(uv) = 3^ceil((n-1)/2): " + d);
      }
      {
        bool ok = true;
        for (unsigned n = 2; n <= 7; ++n) {
          for (unsigned k = 1; k <= n; ++k) {
            ok = ok && lower_central_term(st(n).pcp, k) == weight_subgroup(st(n).pcp, k);
          }
        }
        s.add("lambda-is-gamma", ok, "lambda_k = gamma_k in every stage n <= 7");
      }

      // refinement at n = 5
      s.guard("ii.n5.kernels", [&] {
        MaxClassGroup P(3, 5);
        auto          fam   = psi_kernel_family(st(5), P);
        auto          layer = weight_subgroup(st(5).pcp, 4);
        bool          ok    = !fam.kernels.empty();
        for (auto const& k : fam.kernels) {
          ok = ok && k.log_order() + 1 == layer.log_order() && k.is_subgroup_of(layer);
        }
        s.add("ii.n5.kernels", ok,
              std::to_string(fam.maps) + " choices of (s, s_1), " + std::to_string(fam.kernels.size()) +
                  " distinct Ker(psi) meet lambda_4, each of index 3 in lambda_4 (order " +
                  pow_text(3, layer.log_order()) + ")");
        for (std::size_t j = 0; j < fam.kernels.size(); ++j) {
          std::string id = "ii.n5.K" + std::to_string(j + 1);
          auto        chain = refinement_series(st(5), st(4), fam.kernels[j]);
          bool        good  = true;
          std::string d;
          for (std::size_t t = 0; t < chain.size(); ++t) {
            good = good && chain[t].cert.verdict;
            if (t > 0) {
              good = good && chain[t - 1].quotient.pcp->size() == chain[t].quotient.pcp->size() + 1;
            }
            d += (t ? " > " : "") + std::string("F/") + chain[t].label + " (" +
                 pow_text(3, chain[t].quotient.pcp->size()) + ")";
          }
          s.add(id, good, d + "; index 3 steps, every quotient certified Beauville");
          for (std::size_t t = 1; t + 1 < chain.size(); ++t) {
            s.attach(id + "." + chain[t].label, format_certificate(chain[t].cert));
          }
        }
      });
      return s.finish();
    }

    // ---------------------------------------------------------------- Nottingham comparison

    // Images f, g in N/N_k of x, y defining an isomorphism from the PC group
    // q, found by brute force and checked on every PC relation of q.
    std::optional<std::pair<std::string, std::string>> series_images(PcPresentation const& q,
                                                                     NottinghamGroup const& n) {
      if (ipow(q.prime(), static_cast<unsigned>(q.size())) != n.order()) {
        return std::nullopt;
      }
      auto const  words = generator_words(q);
      std::size_t const m = q.size();
      auto eval_word = [&](Word const& w, Index f, Index g) {
        Index r = 0;
        for (auto const& [gen, e] : w) {
          Index b = power(n, gen == 0 ? f : g, e);
          r       = n.mul(r, b);
        }
        return r;
      };
      std::vector<Index> ord3;
      for (Index a = 0; a < n.order(); ++a) {
        auto f = n.series(a);
        if (f.coeff(2) != 0 || (n.level() >= 3 && f.coeff(3) != 0)) {
          if (power(n, a, 3) == 0) {
            ord3.push_back(a);
          }
        }
      }
      std::vector<Index> img(m);
      for (Index f : ord3) {
        for (Index g : ord3) {
          auto sf = n.series(f), sg = n.series(g);
          // independent modulo N_3
          std::int64_t det = std::int64_t(sf.coeff(2)) * sg.coeff(3) - std::int64_t(sf.coeff(3)) * sg.coeff(2);
          if (det % 3 == 0) {
            continue;
          }
          for (std::size_t i = 0; i < m; ++i) {
            img[i] = eval_word(words[i], f, g);
          }
          auto value = [&](Exponents const& e) {
            Index r = 0;
            for (std::size_t l = 0; l < m; ++l) {
              r = n.mul(r, power(n, img[l], e[l]));
            }
            return r;
          };
          bool hom = true;
          for (std::size_t i = 0; i < m && hom; ++i) {
            hom = power(n, img[i], q.prime()) == value(q.power(i));
            for (std::size_t j = i + 1; j < m && hom; ++j) {
              hom = comm(n, img[j], img[i]) == value(q.commutator(j, i));
            }
          }
          if (hom && closure(n, {f, g}).size() == n.order()) {
            return std::make_pair(format_series(sf), format_series(sg));
          }
        }
      }
      return std::nullopt;
    }

    Report thm35(ReproduceOptions const& opt) {
      Section s("thm3.5");
      auto    tower = p_quotient_tower(FpPresentation::free_product(3), 3, 5);
      auto const& st4 = tower.stages.at(2);
      auto const& st5 = tower.stages.at(3);

      s.guard("order3^5.iso", [&] {
        auto n6 = nottingham_pc(3, 6);
        auto r  = iso_search(st4.pcp, n6);
        s.add("order3^5.iso", r.verdict == IsoResult::Verdict::isomorphic,
              "F/gamma_4(F) ~ N/N_6 = N/gamma_4(N): " + r.detail);
      });
      s.guard("nottingham.series", [&] {
        auto rows = lcs_check(3, 10);
        bool g4 = false, g5 = false;
        for (auto const& r : rows) {
          g4 = g4 || (r.i == 4 && r.r == 6 && r.equal);
          g5 = g5 || (r.i == 5 && r.r == 7 && r.equal);
        }
        NottinghamGroup n7(3, 7);
        auto            e = derived_exponent(n7);
        s.add("nottingham.series", g4 && g5 && e == 3,
              "gamma_4(N) = N_6, gamma_5(N) = N_7, exp gamma_2(N/gamma_5(N)) = " + std::to_string(e));
      });
      s.guard("maxclass.exp-derived", [&] {
        MaxClassGroup P(3, 5);
        auto          e = derived_exponent(P);
        s.add("maxclass.exp-derived", e == 9, "exp P' = " + std::to_string(e) + " for P of order 3^5");
      });
      s.guard("n5.hyperplanes", [&] {
        auto const& pcp   = *st5.pcp;
        std::size_t first = 0;
        while (pcp.weight(first) < 4) {
          ++first;
        }
        std::size_t const dim = pcp.size() - first;
        MaxClassGroup     P(3, 5);
        auto              fam  = psi_kernel_family(st5, P);
        auto              n7   = nottingham_pc(3, 7);
        // hyperplanes as kernels of normalized functionals
        std::vector<gfp::Vec> funcs;
        for (std::uint64_t code = 1; code < ipow(3, static_cast<unsigned>(dim)); ++code) {
          gfp::Vec f(dim);
          auto     c = code;
          for (std::size_t i = dim; i-- > 0;) {
            f[i] = static_cast<std::uint32_t>(c % 3);
            c /= 3;
          }
          std::size_t lead = 0;
          while (f[lead] == 0) {
            ++lead;
          }
          if (f[lead] == 1) {
            funcs.push_back(f);
          }
        }
        std::size_t valid = 0;
        for (std::size_t h = 0; h < funcs.size(); ++h) {
          auto const& f    = funcs[h];
          std::size_t lead = 0;
          while (f[lead] == 0) {
            ++lead;
          }
          std::vector<gfp::Vec> rows;
          for (std::size_t j = 0; j < dim; ++j) {
            if (j == lead) {
              continue;
            }
            gfp::Vec v(dim, 0);
            v[j]    = 1;
            v[lead] = (3 - f[j]) % 3;
            rows.push_back(v);
          }
          auto lq = quotient_by_central_layer(pcp, first, rows);
          auto q  = std::make_shared<PcPresentation const>(lq.pcp);
          PcGroup g(q, opt.max_order);
          auto    r  = exhaustive_beauville_search(g, 3u, opt.max_order);
          auto    eg = derived_exponent(g);
          bool    is_kernel = false;
          for (auto const& k : fam.kernels) {
            bool all = true;
            for (auto const& v : rows) {
              Exponents e(pcp.size(), 0);
              std::copy(v.begin(), v.end(), e.begin() + static_cast<std::ptrdiff_t>(first));
              all = all && k.contains(GroupElement(st5.pcp, e));
            }
            is_kernel = is_kernel || all;
          }
          auto iso = iso_search(q, n7, opt.max_order);
          std::string id = "n5.N" + std::to_string(h + 1);
          std::ostringstream d;
          d << "F/N order " << pow_text(3, q->size()) << (is_kernel ? ", N <= Ker psi" : "")
            << ", " << (r.found ? "Beauville" : "not Beauville (exhaustive)") << ", exp gamma_2 = " << eg
            << "; vs N/gamma_5(N): ";
          switch (iso.verdict) {
            case IsoResult::Verdict::isomorphic:
              d << "ISOMORPHIC";
              break;
            case IsoResult::Verdict::invariant_differs:
              d << "non-isomorphic by invariant (" << iso.detail << ")";
              break;
            case IsoResult::Verdict::exhaustive_absence:
              d << "non-isomorphic by exhaustive search";
              break;
            case IsoResult::Verdict::too_large:
              d << "not compared: " << iso.detail;
              break;
          }
          if (is_kernel) {
            ++valid;
            s.add(id, r.found && eg == 9 && iso.verdict == IsoResult::Verdict::invariant_differs,
                  d.str());
          } else {
            s.add(id, true, d.str() + " (outside the Ker psi family)");
          }
          if (r.found && iso.verdict == IsoResult::Verdict::isomorphic) {
            // confirm in power-series arithmetic, without the PC model of N
            auto w = series_images(*q, NottinghamGroup(3, 7));
            PcGroup qg(q);
            auto    pr   = paper_structure_p3(qg, GroupElement(q, lq.map(st5.x.exponents())),
                                              GroupElement(q, lq.map(st5.y.exponents())));
            auto    cert = beauville_check(qg, pr[0], pr[1], pr[2], pr[3]);
            std::string wid = id + ".isomorphic";
            s.add(wid, w.has_value(),
                  "F/N is Beauville (" + std::string(cert.verdict ? "certified by {u,v}, {(uz)^-1, vt}"
                                                                 : "by search") +
                      ") and x, y -> " + (w ? w->first + ", " + w->second : std::string("?")) +
                      " is an isomorphism onto N/N_7; the exp gamma_2 argument needs N <= Ker psi");
            if (cert.verdict) {
              s.attach(wid, format_certificate(cert));
            }
          }
        }
        s.add("n5.valid", valid > 0,
              std::to_string(valid) + " of " + std::to_string(funcs.size()) +
                  " hyperplanes of lambda_4 lie in Ker psi; each gives a Beauville F/N not "
                  "isomorphic to N/gamma_5(N) (exp gamma_2 9 vs 3)");
      });
      return s.finish();
    }

    // ---------------------------------------------------------------- maxclass

    Report maxclass(ReproduceOptions const&) {
      Section s("maxclass");
      for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{
               {3, 4}, {3, 5}, {3, 6}, {5, 3}, {5, 4}}) {
        std::string id = "p" + std::to_string(p) + ".n" + std::to_string(n);
        s.guard(id, [&, p = p, n = n] {
          MaxClassGroup P(p, n);
          bool          outside = true;
          for (Index x = static_cast<Index>(P.abelian_order()); x < P.order(); ++x) {
            outside = outside && power(P, x, p) == 0;
          }
          auto ser = gamma_series_P(P);
          bool exps = ser.size() == n + 1;
          std::string d;
          for (unsigned i = 1; i < n && exps; ++i) {
            auto want = expected_exponent(p, n, i);
            exps      = exps && ser[i].size() == ipow(p, n - i);
            for (Index x : ser[i].elements) {
              if (!ser[i + 1].contains(x)) {
                exps = exps && element_order(P, x) == want;
              } else {
                exps = exps && want % element_order(P, x) == 0;
              }
            }
            d += (i > 1 ? "," : "") + std::string(" P_") + std::to_string(i) + ": " + std::to_string(want);
          }
          bool mc  = is_maximal_class(P, p);
          auto sst = stage(true, p, n);
          auto ps  = psi(sst, P);
          bool ok  = outside && exps && mc && ps.hom.is_surjective();
          s.add(id, ok,
                std::string("order ") + pow_text(p, n) + ", elements outside P_1 of order p" +
                    (outside ? "" : " FAILS") + "; exp (attained)" + d + "; maximal class" +
                    (mc ? "" : " FAILS") + "; psi from freeprod stage " + std::to_string(n) +
                    (ps.hom.is_surjective() ? " surjective" : " NOT onto"));
        });
      }
      s.guard("psi-degenerate", [&] {
        MaxClassGroup P(3, 5);
        auto          sst   = stage(true, 3, 5);
        auto          model = pc_model(P, 3);
        auto          ser   = gamma_series_P(P);
        Index         s1    = ser[2].elements.at(1);
        auto          h     = psi(sst, model, P.s(), s1);
        s.add("psi-degenerate", !h.is_surjective(), "s_1 in P' gives a map that is not onto");
      });
      s.guard("theta-annihilation", [&] {
        bool ok = true;
        for (std::uint32_t p : {3u, 5u, 7u}) {
          MaxClassGroup P(p, 4);
          for (std::size_t j = 0; j + 1 < p; ++j) {
            std::vector<std::int64_t> e(p - 1, 0), sum(p - 1, 0);
            e[j] = 1;
            for (std::uint32_t k = 0; k < p; ++k) {
              for (std::size_t i = 0; i + 1 < p; ++i) {
                sum[i] += e[i];
              }
              e = P.theta(e);
            }
            for (auto c : P.reduce(sum)) {
              ok = ok && c == 0;
            }
          }
        }
        s.add("theta-annihilation", ok, "1 + T + ... + T^(p-1) kills A for p = 3, 5, 7");
      });
      return s.finish();
    }

    // ---------------------------------------------------------------- nottingham

    Report nottingham(ReproduceOptions const&) {
      Section s("nottingham");
      {
        bool        ok = true;
        std::string d;
        for (unsigned k = 2; k <= 10; ++k) {
          NottinghamGroup g(3, k);
          auto            w = whole_group(g).size();
          ok                = ok && w == ipow(3, k - 1);
          d += (k > 2 ? ", " : "") + std::to_string(w);
        }
        s.add("orders", ok, "|N/N_k| for k = 2..10 (generated by t+t^2, t+t^3): " + d);
      }
      {
        auto        rows = lcs_check(3, 10);
        bool        ok   = true;
        std::string d;
        for (auto const& r : rows) {
          if (r.asserted) {
            ok = ok && r.equal;
            d += (d.empty() ? "" : ", ") + std::string("gamma_") + std::to_string(r.i) + " = N_" +
                 std::to_string(r.r);
          }
        }
        s.add("lcs.k10", ok, d);
      }
      for (auto [m, k] : std::vector<std::pair<unsigned, unsigned>>{{1, 6}, {2, 9}, {3, 12}}) {
        auto     r  = power_subgroup_check(3, k, m);
        unsigned tg = 3 * m + m % 3;
        s.add("power.m" + std::to_string(m), r.value_or(false),
              "N_" + std::to_string(m) + "^3 = N_" + std::to_string(tg) + " in N/N_" + std::to_string(k));
      }
      {
        NottinghamGroup g(3, 7);
        auto            e = derived_exponent(g);
        s.add("exp-gamma2.k7", e == 3, "exp gamma_2(N/N_7) = " + std::to_string(e));
      }
      {
        auto z = excluded_levels(3, 3);
        s.add("excluded-levels", z == std::vector<std::uint64_t>{5, 14, 41},
              "z_1, z_2, z_3 = " + std::to_string(z[0]) + ", " + std::to_string(z[1]) + ", " +
                  std::to_string(z[2]));
      }
      return s.finish();
    }

    // ---------------------------------------------------------------- infrastructure

    Report infra(ReproduceOptions const& opt) {
      Section            s("infra");
      std::vector<Named> all;
      std::vector<QuotientTower> towers;
      for (auto [fp, p, n] : std::vector<std::tuple<bool, std::uint32_t, unsigned>>{
               {false, 2, 5}, {false, 3, 4}, {false, 5, 3}, {true, 2, 6}, {true, 3, 7}, {true, 5, 4}}) {
        towers.push_back(p_quotient_tower(family(fp, p), p, n));
        for (auto const& st : towers.back().stages) {
          all.push_back({label(fp, p, st.n), st.pcp});
        }
      }
      for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 5}, {3, 7}, {5, 4}}) {
        all.push_back({"maxclass", model_of(MaxClassGroup(p, n))});
      }
      for (unsigned k = 3; k <= 8; ++k) {
        all.push_back({"nottingham", nottingham_pc(3, k)});
      }
      {
        bool ok = true;
        for (auto const& g : all) {
          ok = ok && is_consistent(*g.pcp);
        }
        s.add("consistency", ok, std::to_string(all.size()) + " presentations pass the test words");
      }
      {
        bool ok = true;
        for (auto const& g : all) {
          auto text = g.pcp->to_text();
          auto back = PcPresentation::parse(text);
          ok        = ok && back == *g.pcp && back.to_text() == text;
        }
        for (auto const& t : towers) {
          auto text = format_tower(t);
          ok        = ok && format_tower(parse_tower(text)) == text;
        }
        s.add("roundtrip.presentations", ok,
              std::to_string(all.size()) + " presentations and " + std::to_string(towers.size()) +
                  " towers");
      }
      {
        bool              ok = true;
        std::size_t       n  = 0;
        NottinghamGroup   g(3, 6);
        for (Index a = 0; a < g.order(); ++a) {
          auto f = g.series(a);
          ok     = ok && parse_series(format_series(f)) == f;
          ++n;
        }
        s.add("roundtrip.series", ok, std::to_string(n) + " series of N/N_6");
      }
      {
        bool        ok = true;
        std::size_t n  = 0;
        for (auto [fp, p, nn] : std::vector<std::tuple<bool, std::uint32_t, unsigned>>{
                 {false, 5, 2}, {false, 5, 3}, {true, 5, 4}, {true, 3, 4}, {true, 3, 5}}) {
          auto    st = stage(fp, p, nn);
          PcGroup g(st.pcp, opt.max_order);
          auto    pr = p >= 5 ? paper_structure_p_ge_5(st.x, st.y) : paper_structure_p3(g, st.x, st.y);
          for (auto const& q : {pr, std::array<GroupElement, 4>{st.x, st.y, st.y, st.x}}) {
            auto c    = beauville_check(g, q[0], q[1], q[2], q[3]);
            auto text = format_certificate(c);
            auto back = parse_certificate(text);
            ok        = ok && format_certificate(back) == text && reverify(back).ok;
            ++n;
          }
        }
        s.add("roundtrip.certificates", ok,
              std::to_string(n) + " certificates re-verified from their text form");
      }
      return s.finish();
    }

    using SectionFn = Report (*)(ReproduceOptions const&);

    std::vector<std::pair<std::string, SectionFn>> const& table() {
      static std::vector<std::pair<std::string, SectionFn>> const t{
          {"catanese", catanese},        {"thmA", thm_a},       {"lemma2.2", lemma22},
          {"lemma2.3", lemma23},         {"lemma2.4", lemma24}, {"easterfield", easterfield_section},
          {"thm3.2", thm32},             {"lemma3.3", lemma33}, {"thm3.4", thm34},
          {"thm3.5", thm35},             {"maxclass", maxclass}, {"nottingham", nottingham},
          {"infra", infra}};
      return t;
    }

  }  // namespace

  std::vector<std::string> reproduce_sections() {
    std::vector<std::string> out;
    for (auto const& [name, fn] : table()) {
      out.push_back(name);
    }
    return out;
  }

  Report reproduce(std::string const& section, ReproduceOptions const& opt) {
    std::vector<std::pair<std::string, SectionFn>> todo;
    for (auto const& e : table()) {
      if (section == "all" || section == e.first) {
        todo.push_back(e);
      }
    }
    if (todo.empty()) {
      throw std::invalid_argument("unknown section '" + section + "'");
    }
    Report out;
    out.invocation = "reproduce " + section + " seed=" + std::to_string(opt.seed) +
                     " samples=" + std::to_string(opt.samples);
    if (opt.threads <= 1 || todo.size() == 1) {
      for (auto const& [name, fn] : todo) {
        out.append(fn(opt));
      }
      return out;
    }
    // independent sections, merged back in table order
    std::vector<std::future<Report>> pending(todo.size());
    std::size_t                      next = 0;
    std::vector<Report>              done(todo.size());
    while (next < todo.size()) {
      std::vector<std::size_t> batch;
      for (unsigned t = 0; t < opt.threads && next < todo.size(); ++t, ++next) {
        pending[next] = std::async(std::launch::async, todo[next].second, std::cref(opt));
        batch.push_back(next);
      }
      for (auto i : batch) {
        done[i] = pending[i].get();
      }
    }
    for (auto const& r : done) {
      out.append(r);
    }
    return out;
  }

}  // namespace pcforge
