#include "pcforge/pcp.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace pcforge {

  namespace {

    std::string_view trim(std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
      }
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
      }
      return s;
    }

    std::vector<std::string_view> split_ws(std::string_view s) {
      std::vector<std::string_view> out;
      std::size_t                   i = 0;
      while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
          ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') {
          ++j;
        }
        if (j > i) {
          out.push_back(s.substr(i, j - i));
        }
        i = j;
      }
      return out;
    }

    std::size_t parse_uint(std::string_view s, char const* what) {
      std::size_t v   = 0;
      auto        res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument(std::string("pcp parse: bad ") + what + " '"
                                    + std::string(s) + "'");
      }
      return v;
    }

    std::size_t parse_keyed(std::string_view tok, std::string_view key) {
      if (tok.substr(0, key.size()) != key) {
        throw std::invalid_argument("pcp parse: expected " + std::string(key));
      }
      return parse_uint(tok.substr(key.size()), key.data());
    }

    std::vector<std::string_view> lines_of(std::string_view text) {
      std::vector<std::string_view> out;
      std::size_t                   start = 0;
      while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
          end = text.size();
        }
        out.push_back(trim(text.substr(start, end - start)));
        start = end + 1;
      }
      return out;
    }

  }  // namespace

  PcPresentation::PcPresentation(std::uint32_t p, std::size_t ngens)
      : p_(p),
        m_(ngens),
        weight_(ngens, 1),
        power_(ngens, Exponents(ngens, 0)),
        comm_(ngens * ngens, Exponents()),
        definition_(ngens) {
    if (p < 2) {
      throw std::invalid_argument("PcPresentation: prime must be >= 2");
    }
    for (std::size_t j = 0; j < m_; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        comm_[j * m_ + i] = Exponents(m_, 0);
      }
    }
    finalize();
  }

  unsigned PcPresentation::pc_class() const noexcept {
    unsigned c = 0;
    for (auto w : weight_) {
      c = std::max(c, w);
    }
    return c;
  }

  Exponents const& PcPresentation::commutator(std::size_t j, std::size_t i) const {
    if (j >= m_ || i >= j) {
      throw std::out_of_range("PcPresentation::commutator: need j > i");
    }
    return comm_[j * m_ + i];
  }

  std::vector<std::size_t> PcPresentation::defining_generators() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m_; ++i) {
      if (definition_[i].kind == Definition::Kind::none) {
        out.push_back(i);
      }
    }
    return out;
  }

  void PcPresentation::set_weight(std::size_t i, unsigned w) {
    if (w == 0) {
      throw std::invalid_argument("PcPresentation: weights are positive");
    }
    weight_.at(i) = w;
  }

  void PcPresentation::set_power(std::size_t i, Exponents rhs) {
    if (rhs.size() != m_) {
      throw std::invalid_argument("PcPresentation::set_power: length mismatch");
    }
    power_.at(i) = std::move(rhs);
  }

  void PcPresentation::set_commutator(std::size_t j, std::size_t i, Exponents rhs) {
    if (j >= m_ || i >= j) {
      throw std::out_of_range("PcPresentation::set_commutator: need j > i");
    }
    if (rhs.size() != m_) {
      throw std::invalid_argument("PcPresentation::set_commutator: length mismatch");
    }
    comm_[j * m_ + i] = std::move(rhs);
  }

  void PcPresentation::set_definition(std::size_t i, Definition d) {
    definition_.at(i) = d;
  }

  void PcPresentation::finalize() {
    for (std::size_t i = 1; i < m_; ++i) {
      if (weight_[i] < weight_[i - 1]) {
        throw std::invalid_argument("PcPresentation: weights must be nondecreasing");
      }
    }
    auto check_word = [&](Exponents const& e, std::size_t above, char const* what) {
      for (std::size_t k = 0; k < m_; ++k) {
        if (e[k] >= p_) {
          throw std::invalid_argument(std::string("PcPresentation: exponent out of range in ")
                                      + what);
        }
        if (e[k] != 0 && k <= above) {
          throw std::invalid_argument(std::string("PcPresentation: ") + what
                                      + " must involve later generators only");
        }
      }
    };
    power_sparse_.assign(m_, {});
    comm_sparse_.assign(m_ * m_, {});
    noncommuting_.assign(m_, {});
    for (std::size_t i = 0; i < m_; ++i) {
      check_word(power_[i], i, "power relation");
      power_sparse_[i] = to_sparse(power_[i]);
    }
    for (std::size_t j = 0; j < m_; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        auto const& c = comm_[j * m_ + i];
        check_word(c, j, "commutator relation");
        comm_sparse_[j * m_ + i] = to_sparse(c);
        if (!comm_sparse_[j * m_ + i].empty()) {
          noncommuting_[i].push_back(static_cast<std::uint32_t>(j));
        }
      }
    }

    auto ends_in = [&](Exponents const& e, std::size_t k) {
      if (e[k] != 1) {
        return false;
      }
      for (std::size_t l = k + 1; l < m_; ++l) {
        if (e[l] != 0) {
          return false;
        }
      }
      return true;
    };
    for (std::size_t k = 0; k < m_; ++k) {
      auto& d = definition_[k];
      if (d.kind == Definition::Kind::power) {
        if (d.a >= k || !ends_in(power_[d.a], k)) {
          throw std::invalid_argument("PcPresentation: invalid power definition");
        }
        continue;
      }
      if (d.kind == Definition::Kind::commutator) {
        if (d.a >= k || d.b >= d.a || !ends_in(comm_[d.a * m_ + d.b], k)) {
          throw std::invalid_argument("PcPresentation: invalid commutator definition");
        }
        continue;
      }
      if (weight_[k] == 1) {
        continue;
      }
      bool found = false;
      for (std::size_t j = 0; j < k && !found; ++j) {
        for (std::size_t i = 0; i < j && !found; ++i) {
          if (ends_in(comm_[j * m_ + i], k)) {
            d     = {Definition::Kind::commutator, j, i};
            found = true;
          }
        }
      }
      for (std::size_t i = 0; i < k && !found; ++i) {
        if (ends_in(power_[i], k)) {
          d     = {Definition::Kind::power, i, 0};
          found = true;
        }
      }
    }
  }

  bool PcPresentation::is_weighted() const {
    for (std::size_t i = 0; i < m_; ++i) {
      for (auto const& l : power_sparse_[i]) {
        if (weight_[l.gen] <= weight_[i]) {
          return false;
        }
      }
      for (std::size_t j = i + 1; j < m_; ++j) {
        for (auto const& l : comm_sparse_[j * m_ + i]) {
          if (weight_[l.gen] < weight_[i] + weight_[j]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  bool PcPresentation::operator==(PcPresentation const& other) const {
    return p_ == other.p_ && m_ == other.m_ && weight_ == other.weight_
           && power_ == other.power_ && comm_ == other.comm_
           && definition_ == other.definition_;
  }

  SparseWord to_sparse(Exponents const& e) {
    SparseWord w;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] != 0) {
        w.push_back({static_cast<std::uint32_t>(k), static_cast<std::int32_t>(e[k])});
      }
    }
    return w;
  }

  Exponents from_sparse(SparseWord const& w, std::size_t m) {
    Exponents e(m, 0);
    for (auto const& l : w) {
      e.at(l.gen) = static_cast<std::uint32_t>(l.exp);
    }
    return e;
  }

  std::string format_word(Exponents const& e) {
    std::string out;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) {
        continue;
      }
      if (!out.empty()) {
        out += '*';
      }
      out += 'g' + std::to_string(k + 1) + '^' + std::to_string(e[k]);
    }
    return out.empty() ? std::string("1") : out;
  }

  Exponents parse_normal_word(std::string_view text, std::size_t m, std::uint32_t p) {
    text = trim(text);
    Exponents e(m, 0);
    if (text == "1") {
      return e;
    }
    std::size_t last = 0;
    bool        any  = false;
    std::size_t pos  = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('*', pos);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      auto factor = trim(text.substr(pos, end - pos));
      if (factor.empty() || factor.front() != 'g') {
        throw std::invalid_argument("pcp parse: bad factor '" + std::string(factor) + "'");
      }
      factor.remove_prefix(1);
      std::size_t   caret = factor.find('^');
      std::size_t   gen   = parse_uint(factor.substr(0, caret), "generator");
      std::uint32_t ex    = 1;
      if (caret != std::string_view::npos) {
        ex = static_cast<std::uint32_t>(parse_uint(factor.substr(caret + 1), "exponent"));
      }
      if (gen == 0 || gen > m) {
        throw std::invalid_argument("pcp parse: generator index out of range");
      }
      if (ex == 0 || ex >= p) {
        throw std::invalid_argument("pcp parse: exponent must lie in 1..p-1");
      }
      if (any && gen <= last) {
        throw std::invalid_argument("pcp parse: normal word must be increasing");
      }
      e[gen - 1] = ex;
      last       = gen;
      any        = true;
      pos        = end + 1;
    }
    return e;
  }

  std::string PcPresentation::to_text() const {
    std::ostringstream os;
    os << "pcp p=" << p_ << " n=" << m_ << '\n';
    for (std::size_t i = 0; i < m_; ++i) {
      os << "w " << i + 1 << ' ' << weight_[i] << '\n';
    }
    for (std::size_t i = 0; i < m_; ++i) {
      auto const& d = definition_[i];
      if (d.kind == Definition::Kind::power) {
        os << "def " << i + 1 << " = pow " << d.a + 1 << '\n';
      } else if (d.kind == Definition::Kind::commutator) {
        os << "def " << i + 1 << " = comm " << d.a + 1 << ' ' << d.b + 1 << '\n';
      }
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (!power_sparse_[i].empty()) {
        os << "pow " << i + 1 << " = " << format_word(power_[i]) << '\n';
      }
    }
    for (std::size_t j = 0; j < m_; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (!comm_sparse_[j * m_ + i].empty()) {
          os << "comm " << j + 1 << ' ' << i + 1 << " = " << format_word(comm_[j * m_ + i])
             << '\n';
        }
      }
    }
    return os.str();
  }

  namespace {

    // Parses one presentation block (header line first). Lines that are
    // not presentation items are left to the caller via `rest`.
    PcPresentation parse_block(std::vector<std::string_view> const& lines,
                               std::size_t&                         idx,
                               StageText*                           stage) {
      while (idx < lines.size() && (lines[idx].empty() || lines[idx].front() == '#')) {
        ++idx;
      }
      if (idx >= lines.size()) {
        throw std::invalid_argument("pcp parse: missing header");
      }
      auto head = split_ws(lines[idx]);
      if (head.size() != 3 || head[0] != "pcp") {
        throw std::invalid_argument("pcp parse: header must be 'pcp p=<p> n=<n>'");
      }
      auto           p = static_cast<std::uint32_t>(parse_keyed(head[1], "p="));
      std::size_t    m = parse_keyed(head[2], "n=");
      PcPresentation pcp(p, m);
      int            img_seen = 0;
      ++idx;
      for (; idx < lines.size(); ++idx) {
        auto line = lines[idx];
        if (line.empty() || line.front() == '#') {
          continue;
        }
        auto toks = split_ws(line);
        if (toks[0] == "pcp") {
          break;
        }
        auto eq = line.find('=');
        if (toks[0] == "w") {
          if (toks.size() != 3) {
            throw std::invalid_argument("pcp parse: bad weight line");
          }
          std::size_t i = parse_uint(toks[1], "generator");
          if (i == 0 || i > m) {
            throw std::invalid_argument("pcp parse: generator index out of range");
          }
          pcp.set_weight(i - 1, static_cast<unsigned>(parse_uint(toks[2], "weight")));
        } else if (toks[0] == "pow") {
          if (toks.size() < 4 || toks[2] != "=") {
            throw std::invalid_argument("pcp parse: bad pow line");
          }
          std::size_t i = parse_uint(toks[1], "generator");
          if (i == 0 || i > m) {
            throw std::invalid_argument("pcp parse: generator index out of range");
          }
          pcp.set_power(i - 1, parse_normal_word(line.substr(eq + 1), m, p));
        } else if (toks[0] == "comm") {
          if (toks.size() < 5 || toks[3] != "=") {
            throw std::invalid_argument("pcp parse: bad comm line");
          }
          std::size_t j = parse_uint(toks[1], "generator");
          std::size_t i = parse_uint(toks[2], "generator");
          if (i == 0 || j > m || i >= j) {
            throw std::invalid_argument("pcp parse: comm needs j > i");
          }
          pcp.set_commutator(j - 1, i - 1, parse_normal_word(line.substr(eq + 1), m, p));
        } else if (toks[0] == "def") {
          if (toks.size() < 5 || toks[2] != "=") {
            throw std::invalid_argument("pcp parse: bad def line");
          }
          std::size_t k = parse_uint(toks[1], "generator");
          if (k == 0 || k > m) {
            throw std::invalid_argument("pcp parse: generator index out of range");
          }
          if (toks[3] == "pow" && toks.size() == 5) {
            std::size_t a = parse_uint(toks[4], "generator");
            if (a == 0) {
              throw std::invalid_argument("pcp parse: bad def");
            }
            pcp.set_definition(k - 1, {Definition::Kind::power, a - 1, 0});
          } else if (toks[3] == "comm" && toks.size() == 6) {
            std::size_t a = parse_uint(toks[4], "generator");
            std::size_t b = parse_uint(toks[5], "generator");
            if (a == 0 || b == 0) {
              throw std::invalid_argument("pcp parse: bad def");
            }
            pcp.set_definition(k - 1, {Definition::Kind::commutator, a - 1, b - 1});
          } else {
            throw std::invalid_argument("pcp parse: bad def line");
          }
        } else if (toks[0] == "img" && stage != nullptr) {
          if (toks.size() < 4 || toks[2] != "=") {
            throw std::invalid_argument("pcp parse: bad img line");
          }
          auto e = parse_normal_word(line.substr(eq + 1), m, p);
          if (toks[1] == "x") {
            stage->img_x = std::move(e);
            img_seen |= 1;
          } else if (toks[1] == "y") {
            stage->img_y = std::move(e);
            img_seen |= 2;
          } else {
            throw std::invalid_argument("pcp parse: img must name x or y");
          }
          stage->has_images = true;
        } else {
          throw std::invalid_argument("pcp parse: unknown item '" + std::string(toks[0]) + "'");
        }
      }
      if (stage != nullptr && stage->has_images && img_seen != 3) {
        throw std::invalid_argument("pcp parse: stage needs both img x and img y");
      }
      pcp.finalize();
      return pcp;
    }

  }  // namespace

  PcPresentation PcPresentation::parse(std::string_view text) {
    auto        lines = lines_of(text);
    std::size_t idx   = 0;
    auto        pcp   = parse_block(lines, idx, nullptr);
    for (; idx < lines.size(); ++idx) {
      if (!lines[idx].empty() && lines[idx].front() != '#') {
        throw std::invalid_argument("pcp parse: trailing content after presentation");
      }
    }
    return pcp;
  }

  std::vector<StageText> parse_stages(std::string_view text) {
    auto                   lines = lines_of(text);
    std::vector<StageText> out;
    std::size_t            idx = 0;
    while (true) {
      while (idx < lines.size() && (lines[idx].empty() || lines[idx].front() == '#')) {
        ++idx;
      }
      if (idx >= lines.size()) {
        break;
      }
      StageText st;
      st.pcp = parse_block(lines, idx, &st);
      out.push_back(std::move(st));
    }
    return out;
  }

  std::string format_stage(StageText const& stage) {
    std::string out = stage.pcp.to_text();
    if (stage.has_images) {
      out += "img x = " + format_word(stage.img_x) + '\n';
      out += "img y = " + format_word(stage.img_y) + '\n';
    }
    return out;
  }

}  // namespace pcforge
