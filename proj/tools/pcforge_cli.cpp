#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pcforge/beauville.hpp"
#include "pcforge/certificate.hpp"
#include "pcforge/maxclass.hpp"
#include "pcforge/nottingham.hpp"
#include "pcforge/pcgroup.hpp"
#include "pcforge/pquotient.hpp"
#include "pcforge/reproduce.hpp"
#include "pcforge/subgroup.hpp"

using namespace pcforge;

namespace {

  std::string read_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void write_output(std::string const& path, std::string const& text) {
    if (path.empty() || path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) {
      throw std::runtime_error("cannot write " + path);
    }
    out << text;
  }

  // A group file holds either a tower (the top stage is used, with its x, y)
  // or a single presentation (x, y = its first two defining generators).
  Stage load_group(std::string const& path) {
    auto text = read_file(path);
    if (text.find("# stage") != std::string::npos) {
      return parse_tower(text).top();
    }
    auto h    = std::make_shared<PcPresentation const>(PcPresentation::parse(text));
    auto defs = h->defining_generators();
    if (defs.size() != 2) {
      throw std::runtime_error("group is not 2-generated");
    }
    Exponents ex(h->size(), 0), ey(h->size(), 0);
    ex[defs[0]] = 1;
    ey[defs[1]] = 1;
    return Stage{0, h, GroupElement(h, ex), GroupElement(h, ey)};
  }

  // "uv2" = u v^2; letters u, v (or x, y) with optional ^ and sign.
  GroupElement parse_pair_word(std::string const& w, Stage const& g) {
    static std::regex const tok(R"(([uvxy])\^?(-?\d+)?)");
    GroupElement            r   = GroupElement::identity(g.pcp);
    std::size_t             pos = 0;
    for (std::sregex_iterator it(w.begin(), w.end(), tok), end; it != end; ++it) {
      if (static_cast<std::size_t>(it->position()) != pos) {
        throw std::runtime_error("cannot parse word '" + w + "'");
      }
      pos += static_cast<std::size_t>(it->length());
      char         c = (*it)[1].str()[0];
      std::int64_t e = (*it)[2].matched ? std::stoll((*it)[2]) : 1;
      r              = r * power(c == 'u' || c == 'x' ? g.x : g.y, e);
    }
    if (pos != w.size() || w.empty()) {
      throw std::runtime_error("cannot parse word '" + w + "'");
    }
    return r;
  }

  std::array<GroupElement, 4> parse_pairs(std::string spec, Stage const& g) {
    spec.erase(std::remove(spec.begin(), spec.end(), ' '), spec.end());
    std::regex const whole(R"(([^,;]+),([^,;]+);([^,;]+),([^,;]+))");
    std::smatch      m;
    if (!std::regex_match(spec, m, whole)) {
      throw std::runtime_error("pairs must look like \"u,v;uv2,uv4\"");
    }
    return {parse_pair_word(m[1], g), parse_pair_word(m[2], g), parse_pair_word(m[3], g),
            parse_pair_word(m[4], g)};
  }

  std::string pow_text(std::uint32_t p, std::size_t e) {
    return std::to_string(p) + "^" + std::to_string(e);
  }

  template <FiniteGroup G>
  std::string series_line(G const& g, std::vector<Subgroup> const& s) {
    std::string out;
    for (auto const& h : s) {
      out += (out.empty() ? "" : " > ") + std::to_string(h.size());
    }
    (void)g;
    return out;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pcforge: p-quotients, Beauville structures, maximal-class and Nottingham groups"};
  app.require_subcommand(1);
  std::uint64_t max_order = max_order_from_env();
  app.add_option("--max-order", max_order, "enumeration bound in elements (env PCFORGE_MAX_ORDER)");

  // quotient
  auto*         q = app.add_subcommand("quotient", "lambda-quotient tower of the free group or C_p * C_p");
  std::string   q_family;
  std::uint32_t q_p = 0;
  unsigned      q_n = 0;
  std::string   q_out;
  q->add_option("family", q_family, "free | freeprod")->required()->check(CLI::IsMember({"free", "freeprod"}));
  q->add_option("p", q_p, "prime")->required();
  q->add_option("n", q_n, "top stage, F / lambda_n(F)")->required();
  q->add_option("-o,--out", q_out, "write the tower here instead of stdout");

  // beauville
  auto*       b = app.add_subcommand("beauville", "check pairs or search for a Beauville structure");
  std::string b_group, b_pairs, b_cert, b_reverify;
  bool        b_search = false, b_paper = false;
  b->add_option("group", b_group, "tower or presentation file, or CnxCn");
  b->add_option("--pairs", b_pairs, "\"x1,y1;x2,y2\" as words in u, v");
  b->add_flag("--search", b_search, "exhaustive search");
  b->add_flag("--paper-construction", b_paper, "{u,v},{uv^2,uv^4} for p >= 5, {u,v},{(uz)^-1,vt} for p = 3");
  b->add_option("--certificate", b_cert, "write the certificate to this file");
  b->add_option("--reverify", b_reverify, "re-verify a certificate file");

  // maxclass
  auto*         mc = app.add_subcommand("maxclass", "the maximal-class group <s> x| A of order p^n");
  std::uint32_t mc_p = 0;
  unsigned      mc_n = 0;
  bool          mc_psi = false;
  std::string   mc_out;
  mc->add_option("p", mc_p, "odd prime")->required();
  mc->add_option("n", mc_n, "log_p of the order, >= 3")->required();
  mc->add_flag("--psi", mc_psi, "check psi from the free-product stage n");
  mc->add_option("-o,--out", mc_out, "write a PC presentation");

  // nottingham
  auto*         nt = app.add_subcommand("nottingham", "the Nottingham quotient N/N_k");
  std::uint32_t nt_p = 3;
  unsigned      nt_k = 0;
  bool          nt_lcs = false;
  unsigned      nt_power = 0;
  std::vector<std::string> nt_compose;
  std::string              nt_invert, nt_out;
  nt->add_option("p", nt_p, "prime")->required();
  nt->add_option("k", nt_k, "level")->required();
  nt->add_flag("--lcs", nt_lcs, "compare gamma_i with N_r(i)");
  nt->add_option("--power", nt_power, "check N_m^p = N_(mp + m mod p) for this m");
  nt->add_option("--compose", nt_compose, "two series f g; prints f(g(t))")->expected(2);
  nt->add_option("--invert", nt_invert, "series to invert");
  nt->add_option("-o,--out", nt_out, "write a PC presentation");

  // series
  auto*       se = app.add_subcommand("series", "lambda- and lower central series of a group file");
  std::string se_group;
  se->add_option("group", se_group, "tower or presentation file")->required();

  // reproduce
  auto*       rp = app.add_subcommand("reproduce", "run the checks of one section, or all");
  std::string rp_section = "all";
  std::string rp_format  = "text";
  bool        rp_timing = false, rp_certs = false;
  ReproduceOptions rp_opt;
  std::vector<std::string> sections = reproduce_sections();
  sections.push_back("all");
  rp->add_option("section", rp_section, "section")->check(CLI::IsMember(sections));
  rp->add_option("--format", rp_format, "text | json-lines")->check(CLI::IsMember({"text", "json-lines"}));
  rp->add_option("--seed", rp_opt.seed, "seed for sampled checks");
  rp->add_option("--samples", rp_opt.samples, "sampled pairs per large group");
  rp->add_option("--threads", rp_opt.threads, "sections run in parallel");
  rp->add_flag("--timing", rp_timing, "print wall-clock per check");
  rp->add_flag("--certificates", rp_certs, "append certificates");

  CLI11_PARSE(app, argc, argv);

  try {
    if (q->parsed()) {
      auto fp = q_family == "free" ? FpPresentation::free_group() : FpPresentation::free_product(q_p);
      auto t  = p_quotient_tower(fp, q_p, q_n);
      write_output(q_out, format_tower(t));
      if (!q_out.empty() && q_out != "-") {
        for (auto const& s : t.stages) {
          std::cout << "n=" << s.n << " order " << pow_text(q_p, s.pcp->size()) << '\n';
        }
        if (t.stabilized) {
          std::cout << "series stopped growing\n";
        }
      }
      return 0;
    }

    if (b->parsed()) {
      if (!b_reverify.empty()) {
        auto c  = parse_certificate(read_file(b_reverify));
        auto rv = reverify(c);
        std::cout << "CHECK beauville.reverify " << (rv.ok ? "PASS" : "FAIL") << ' '
                  << (rv.ok ? (c.verdict ? "verdict beauville confirmed" : "verdict not-beauville confirmed")
                            : rv.reason)
                  << '\n';
        return rv.ok ? 0 : 1;
      }
      if (b_group.empty()) {
        throw std::runtime_error("beauville: give a group or --reverify");
      }
      std::smatch m;
      std::regex  cyc(R"(C(\d+)xC(\d+))");
      if (std::regex_match(b_group, m, cyc) && m[1] == m[2]) {
        auto         n = static_cast<std::uint32_t>(std::stoul(m[1]));
        CyclicSquare c(n);
        auto         r = exhaustive_beauville_search(c, std::nullopt, max_order);
        std::cout << "CHECK beauville.search " << (r.exhaustive ? "PASS" : "SKIP") << ' '
                  << (r.found ? "BEAUVILLE" : (r.exhaustive ? "ABSENT" : r.note)) << '\n';
        return 0;
      }
      Stage   st = load_group(b_group);
      PcGroup g(st.pcp, max_order);
      int     rc = 0;
      if (b_search) {
        auto r = exhaustive_beauville_search(g, st.pcp->prime(), max_order);
        std::cout << "CHECK beauville.search " << (r.exhaustive ? "PASS" : "SKIP") << ' '
                  << (r.found ? "BEAUVILLE" : (r.exhaustive ? "ABSENT" : r.note)) << " ("
                  << r.stats.class_pairs << " class pairs, " << r.stats.refuted_by_obstruction
                  << " refuted by the power-subgroup obstruction)\n";
        if (r.found && !b_cert.empty()) {
          auto c = beauville_check(g, g.element(r.witness[0]), g.element(r.witness[1]),
                                   g.element(r.witness[2]), g.element(r.witness[3]));
          write_output(b_cert, format_certificate(c));
        }
      }
      if (b_paper || !b_pairs.empty()) {
        std::array<GroupElement, 4> pr;
        if (!b_pairs.empty()) {
          pr = parse_pairs(b_pairs, st);
        } else if (st.pcp->prime() >= 5) {
          pr = paper_structure_p_ge_5(st.x, st.y);
        } else {
          pr = paper_structure_p3(g, st.x, st.y);
        }
        auto c = beauville_check(g, pr[0], pr[1], pr[2], pr[3]);
        std::cout << "CHECK beauville.pairs " << (c.verdict ? "PASS" : "FAIL") << ' '
                  << (c.verdict ? "Sigma sets meet trivially" : "Sigma sets overlap") << '\n';
        if (!b_cert.empty()) {
          write_output(b_cert, format_certificate(c));
        }
        rc = c.verdict ? 0 : 1;
      }
      if (!b_search && !b_paper && b_pairs.empty()) {
        throw std::runtime_error("beauville: give --pairs, --search or --paper-construction");
      }
      return rc;
    }

    if (mc->parsed()) {
      MaxClassGroup P(mc_p, mc_n);
      auto          ser = gamma_series_P(P);
      std::cout << "order " << pow_text(mc_p, mc_n) << '\n';
      for (unsigned i = 1; i < ser.size(); ++i) {
        std::cout << "P_" << i << ": order " << ser[i].size() << ", exponent "
                  << exponent(P, ser[i]) << " (formula " << expected_exponent(mc_p, mc_n, i) << ")\n";
      }
      std::cout << "maximal class: " << (is_maximal_class(P, mc_p) ? "yes" : "no") << '\n';
      if (mc_psi) {
        auto st = p_quotient(FpPresentation::free_product(mc_p), mc_p, mc_n);
        auto ps = psi(st, P);
        std::cout << "psi from the free-product stage " << mc_n << ": "
                  << (ps.hom.is_surjective() ? "surjective" : "not onto") << '\n';
      }
      if (!mc_out.empty()) {
        write_output(mc_out, pc_model(P, mc_p).pcp->to_text());
      }
      return 0;
    }

    if (nt->parsed()) {
      if (nt_compose.size() == 2) {
        std::cout << format_series(compose(parse_series(nt_compose[0]), parse_series(nt_compose[1])))
                  << '\n';
      }
      if (!nt_invert.empty()) {
        std::cout << format_series(invert(parse_series(nt_invert))) << '\n';
      }
      NottinghamGroup g(nt_p, nt_k);
      std::cout << "order " << pow_text(nt_p, nt_k - 1) << '\n';
      if (nt_lcs) {
        for (auto const& r : lcs_check(nt_p, nt_k)) {
          std::cout << "gamma_" << r.i << " = N_" << r.r << ": " << (r.equal ? "yes" : "no")
                    << (r.asserted ? "" : " (beyond the level)") << '\n';
        }
      }
      if (nt_power > 0) {
        auto r = power_subgroup_check(nt_p, nt_k, nt_power);
        std::cout << "N_" << nt_power << "^" << nt_p << " = N_" << nt_power * nt_p + nt_power % nt_p
                  << ": " << (r ? (*r ? "yes" : "no") : "level too small to observe") << '\n';
      }
      if (!nt_out.empty()) {
        write_output(nt_out, nottingham_pc(nt_p, nt_k)->to_text());
      }
      return 0;
    }

    if (se->parsed()) {
      Stage   st = load_group(se_group);
      PcGroup g(st.pcp, max_order);
      auto    p  = st.pcp->prime();
      std::cout << "order " << pow_text(p, st.pcp->size()) << '\n';
      std::cout << "lambda: " << series_line(g, lambda_series(g, p)) << '\n';
      std::cout << "gamma:  " << series_line(g, lower_central_series(g)) << '\n';
      std::cout << "exp gamma_2: " << derived_exponent(g) << '\n';
      return 0;
    }

    if (rp->parsed()) {
      rp_opt.max_order = max_order;
      auto        r = reproduce(rp_section, rp_opt);
      ReportStyle style;
      style.format      = rp_format == "json-lines" ? ReportFormat::json_lines : ReportFormat::text;
      style.timing      = rp_timing;
      style.attachments = rp_certs;
      std::cout << format_report(r, style);
      return r.ok() ? 0 : 1;
    }
  } catch (BoundExceeded const& e) {
    std::cerr << "bound exceeded: " << e.what() << '\n';
    return 3;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
