#include "pcforge/certificate.hpp"

#include <sstream>
#include <stdexcept>

namespace pcforge {

  namespace {

    Word inverse_word(Word const& w) {
      Word out;
      for (auto it = w.rbegin(); it != w.rend(); ++it) {
        out.push_back({it->gen, -it->exp});
      }
      return out;
    }

    void append(Word& w, Word const& v, std::int64_t times = 1) {
      Word const& src = v;
      Word        inv;
      if (times < 0) {
        inv   = inverse_word(v);
        times = -times;
      }
      for (std::int64_t r = 0; r < times; ++r) {
        for (auto const& l : (inv.empty() ? src : inv)) {
          w.push_back(l);
        }
      }
    }

    std::string trim(std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
      }
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
      }
      return std::string(s);
    }

    std::uint32_t det2(gfp::Vec const& a, gfp::Vec const& b, std::uint32_t p) {
      if (a.size() != 2 || b.size() != 2) {
        return 0;
      }
      std::uint64_t d = (std::uint64_t(a[0]) * b[1] + std::uint64_t(p - a[1]) * b[0]) % p;
      return static_cast<std::uint32_t>(d);
    }

  }  // namespace

  Word free_reduce(Word w) {
    Word out;
    for (auto const& l : w) {
      if (l.exp == 0) {
        continue;
      }
      if (!out.empty() && out.back().gen == l.gen) {
        out.back().exp += l.exp;
        if (out.back().exp == 0) {
          out.pop_back();
        }
      } else {
        out.push_back(l);
      }
    }
    return out;
  }

  std::vector<Word> generator_words(PcPresentation const& pcp) {
    std::size_t const m = pcp.size();
    std::vector<Word> words(m);
    std::uint32_t     next = 0;
    auto prefix_word = [&](Exponents const& e, std::size_t below) {
      Word w;
      for (std::size_t i = 0; i < below; ++i) {
        append(w, words[i], e[i]);
      }
      return w;
    };
    for (std::size_t k = 0; k < m; ++k) {
      auto const& d = pcp.definition(k);
      Word        w;
      if (d.kind == Definition::Kind::none) {
        w = {{next++, 1}};
      } else if (d.kind == Definition::Kind::power) {
        w = inverse_word(prefix_word(pcp.power(d.a), k));
        append(w, words[d.a], pcp.prime());
      } else {
        w = inverse_word(prefix_word(pcp.commutator(d.a, d.b), k));
        append(w, inverse_word(words[d.a]));
        append(w, inverse_word(words[d.b]));
        append(w, words[d.a]);
        append(w, words[d.b]);
      }
      words[k] = free_reduce(std::move(w));
    }
    return words;
  }

  Word element_word(std::vector<Word> const& gens, Exponents const& e) {
    Word w;
    for (std::size_t i = 0; i < e.size(); ++i) {
      append(w, gens[i], e[i]);
    }
    return free_reduce(std::move(w));
  }

  std::string format_xy_word(Word const& w) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (auto const& l : w) {
      if (!out.empty()) {
        out += '*';
      }
      out += l.gen == 0 ? 'x' : 'y';
      if (l.exp != 1) {
        out += '^' + std::to_string(l.exp);
      }
    }
    return out;
  }

  Word parse_xy_word(std::string_view text) {
    std::string s = trim(text);
    Word        w;
    if (s == "1") {
      return w;
    }
    std::size_t i = 0;
    while (i < s.size()) {
      char c = s[i];
      if (c != 'x' && c != 'y') {
        throw std::invalid_argument("bad word '" + s + "'");
      }
      ++i;
      std::int32_t e = 1;
      if (i < s.size() && s[i] == '^') {
        std::size_t j = ++i;
        if (j < s.size() && s[j] == '-') {
          ++j;
        }
        while (j < s.size() && s[j] >= '0' && s[j] <= '9') {
          ++j;
        }
        if (j == i) {
          throw std::invalid_argument("bad exponent in '" + s + "'");
        }
        e = std::stoi(s.substr(i, j - i));
        i = j;
      }
      w.push_back({static_cast<std::uint32_t>(c == 'x' ? 0 : 1), e});
      if (i < s.size()) {
        if (s[i] != '*') {
          throw std::invalid_argument("bad word '" + s + "'");
        }
        ++i;
      }
    }
    return w;
  }

  BeauvilleCertificate beauville_check(PcGroup const& g, GroupElement const& x1,
                                       GroupElement const& y1, GroupElement const& x2,
                                       GroupElement const& y2) {
    BeauvilleCertificate c;
    c.pcp  = g.presentation();
    c.pair = {x1, y1, x2, y2};
    auto const p = g.prime();
    c.det[0] = det2(frattini_image(x1), frattini_image(y1), p);
    c.det[1] = det2(frattini_image(x2), frattini_image(y2), p);
    auto s1  = sigma(g, g.index_of(x1), g.index_of(y1));
    auto s2  = sigma(g, g.index_of(x2), g.index_of(y2));
    for (Index i : s1.socle_orbit) {
      c.orbit1.push_back(g.element(i));
    }
    for (Index i : s2.socle_orbit) {
      c.orbit2.push_back(g.element(i));
    }
    bool const gen = frattini_rank(*c.pcp) == 2 && c.det[0] != 0 && c.det[1] != 0;
    c.verdict      = gen && sigma_disjoint(s1, s2);
    return c;
  }

  std::string format_certificate(BeauvilleCertificate const& c) {
    std::ostringstream os;
    auto const         words = generator_words(*c.pcp);
    os << "beauville-certificate\n";
    os << c.pcp->to_text();
    char const* names[4] = {"x1", "y1", "x2", "y2"};
    for (int i = 0; i < 4; ++i) {
      os << "pair " << names[i] << " = " << format_word(c.pair[i].exponents()) << '\n';
    }
    for (int i = 0; i < 4; ++i) {
      os << "word " << names[i] << " = "
         << format_xy_word(element_word(words, c.pair[i].exponents())) << '\n';
    }
    os << "det 1 = " << c.det[0] << '\n';
    os << "det 2 = " << c.det[1] << '\n';
    for (auto const& z : c.orbit1) {
      os << "orbit 1 = " << format_word(z.exponents()) << '\n';
    }
    for (auto const& z : c.orbit2) {
      os << "orbit 2 = " << format_word(z.exponents()) << '\n';
    }
    os << "verdict = " << (c.verdict ? "beauville" : "not-beauville") << '\n';
    os << "end\n";
    return os.str();
  }

  BeauvilleCertificate parse_certificate(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string        line;
    std::string        pcp_text;
    std::vector<std::string> items;
    bool               started = false;
    bool               ended   = false;
    while (std::getline(in, line)) {
      std::string t = trim(line);
      if (t.empty() || t.front() == '#') {
        continue;
      }
      if (!started) {
        if (t != "beauville-certificate") {
          throw std::invalid_argument("certificate: missing header");
        }
        started = true;
        continue;
      }
      if (t == "end") {
        ended = true;
        break;
      }
      auto head = t.substr(0, t.find(' '));
      if (head == "pair" || head == "word" || head == "det" || head == "orbit"
          || head == "verdict") {
        items.push_back(t);
      } else {
        pcp_text += t + '\n';
      }
    }
    if (!started || !ended) {
      throw std::invalid_argument("certificate: truncated");
    }
    BeauvilleCertificate c;
    c.pcp = std::make_shared<PcPresentation const>(PcPresentation::parse(pcp_text));
    auto const m = c.pcp->size();
    auto const p = c.pcp->prime();
    std::array<bool, 4> have{};
    std::array<Word, 4> words;
    std::array<bool, 4> have_word{};
    bool have_verdict = false;
    for (auto const& t : items) {
      auto eq = t.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("certificate: bad line '" + t + "'");
      }
      std::string lhs = trim(std::string_view(t).substr(0, eq));
      std::string rhs = trim(std::string_view(t).substr(eq + 1));
      std::istringstream ls(lhs);
      std::string        kind, key;
      ls >> kind >> key;
      if (kind == "pair" || kind == "word") {
        int i = key == "x1" ? 0 : key == "y1" ? 1 : key == "x2" ? 2 : key == "y2" ? 3 : -1;
        if (i < 0) {
          throw std::invalid_argument("certificate: bad pair name '" + key + "'");
        }
        if (kind == "pair") {
          c.pair[i] = GroupElement(c.pcp, parse_normal_word(rhs, m, p));
          have[i]   = true;
        } else {
          words[i]     = parse_xy_word(rhs);
          have_word[i] = true;
        }
      } else if (kind == "det") {
        c.det.at(key == "1" ? 0 : 1) = static_cast<std::uint32_t>(std::stoul(rhs));
      } else if (kind == "orbit") {
        (key == "1" ? c.orbit1 : c.orbit2)
            .push_back(GroupElement(c.pcp, parse_normal_word(rhs, m, p)));
      } else if (kind == "verdict") {
        if (rhs != "beauville" && rhs != "not-beauville") {
          throw std::invalid_argument("certificate: bad verdict");
        }
        c.verdict    = rhs == "beauville";
        have_verdict = true;
      }
    }
    for (int i = 0; i < 4; ++i) {
      if (!have[i]) {
        throw std::invalid_argument("certificate: missing pair element");
      }
    }
    if (!have_verdict) {
      throw std::invalid_argument("certificate: missing verdict");
    }
    // x,y words must evaluate to the stated normal forms
    auto const gens = c.pcp->defining_generators();
    for (int i = 0; i < 4; ++i) {
      if (!have_word[i]) {
        continue;
      }
      Word w;
      for (auto const& l : words[i]) {
        if (l.gen >= gens.size()) {
          throw std::invalid_argument("certificate: word uses an unknown generator");
        }
        w.push_back({static_cast<std::uint32_t>(gens[l.gen]), l.exp});
      }
      if (!(collect(w, c.pcp) == c.pair[i])) {
        throw std::invalid_argument("certificate: word does not match its normal form");
      }
    }
    return c;
  }

  Reverification reverify(BeauvilleCertificate const& c, std::uint64_t element_check_bound) {
    Reverification r;
    if (!is_consistent(*c.pcp)) {
      r.reason = "presentation is inconsistent";
      return r;
    }
    PcGroup g(c.pcp);
    auto    fresh = beauville_check(g, c.pair[0], c.pair[1], c.pair[2], c.pair[3]);
    if (fresh.det != c.det) {
      r.reason = "determinants differ";
      return r;
    }
    if (fresh.orbit1 != c.orbit1 || fresh.orbit2 != c.orbit2) {
      r.reason = "socle orbits differ";
      return r;
    }
    if (fresh.verdict != c.verdict) {
      r.reason = "verdict differs";
      return r;
    }
    if (g.order() <= element_check_bound) {
      auto a = sigma_elements(g, g.index_of(c.pair[0]), g.index_of(c.pair[1]));
      auto b = sigma_elements(g, g.index_of(c.pair[2]), g.index_of(c.pair[3]));
      bool const gen = generates_by_closure(g, g.index_of(c.pair[0]), g.index_of(c.pair[1]))
                       && generates_by_closure(g, g.index_of(c.pair[2]), g.index_of(c.pair[3]));
      if ((gen && sigma_elements_meet_trivially(g, a, b)) != c.verdict) {
        r.reason = "element-level check disagrees";
        return r;
      }
    }
    r.ok = true;
    return r;
  }

  std::array<GroupElement, 4> paper_structure_p_ge_5(GroupElement const& u,
                                                     GroupElement const& v) {
    if (u.pcp().prime() < 5) {
      throw std::invalid_argument("paper_structure_p_ge_5: needs p >= 5");
    }
    return {u, v, u * power(v, 2), u * power(v, 4)};
  }

  GroupElement nonconjugate_element(PcGroup const& g, GroupElement const& x) {
    if (is_maximal_class(g, g.prime())) {
      throw std::invalid_argument("nonconjugate_element: group has maximal class");
    }
    std::size_t const d = frattini_rank(*g.presentation());
    if (d != 2) {
      throw std::invalid_argument("nonconjugate_element: needs a 2-generator group");
    }
    Index const       xi = g.index_of(x);
    std::vector<bool> is_comm(g.order(), false);
    for (Index h = 0; h < g.order(); ++h) {
      is_comm[comm(g, xi, h)] = true;
    }
    // Phi is spanned by the generators of weight >= 2: indices below p^(m-2)
    std::size_t phi = g.order() / (std::size_t(g.prime()) * g.prime());
    for (Index t = 0; t < phi; ++t) {
      if (!is_comm[t]) {
        return g.element(t);
      }
    }
    throw std::runtime_error("nonconjugate_element: every element of Phi is a commutator");
  }

  std::array<GroupElement, 4> paper_structure_p3(PcGroup const& g, GroupElement const& u,
                                                 GroupElement const& v) {
    auto z = nonconjugate_element(g, u);
    auto t = nonconjugate_element(g, v);
    return {u, v, inverse(u * z), v * t};
  }

  bool lemma34_check(PcGroup const& g, GroupElement const& x, GroupElement const& t) {
    Index const       a = g.index_of(x);
    Index const       b = g.index_of(x * t);
    std::vector<bool> ua(g.order(), false);
    std::vector<bool> ub(g.order(), false);
    for (Index h = 0; h < g.order(); ++h) {
      for (auto [z, u] : {std::pair{a, &ua}, std::pair{b, &ub}}) {
        Index c = conj(g, z, h);
        for (Index w = c; w != 0; w = g.mul(w, c)) {
          (*u)[w] = true;
        }
      }
    }
    return sigma_elements_meet_trivially(g, ua, ub);
  }

}  // namespace pcforge
