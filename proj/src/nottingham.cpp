#include "pcforge/nottingham.hpp"

#include <regex>
#include <sstream>
#include <stdexcept>

#include "pcforge/pc_model.hpp"
#include "pcforge/pcgroup.hpp"

namespace pcforge {

  namespace {

    using Poly = std::vector<std::uint32_t>;  // by degree, truncated at k

    Poly multiply(Poly const& a, Poly const& b, std::uint32_t p) {
      std::size_t const k = a.size() - 1;
      std::vector<std::uint64_t> c(k + 1, 0);
      for (std::size_t i = 0; i <= k; ++i) {
        if (a[i] == 0) {
          continue;
        }
        for (std::size_t j = 0; i + j <= k; ++j) {
          c[i + j] += std::uint64_t(a[i]) * b[j];
        }
      }
      Poly out(k + 1);
      for (std::size_t i = 0; i <= k; ++i) {
        out[i] = static_cast<std::uint32_t>(c[i] % p);
      }
      return out;
    }

    Poly as_poly(TruncSeries const& f) {
      Poly q(f.level() + 1, 0);
      q[1] = 1;
      for (unsigned i = 2; i <= f.level(); ++i) {
        q[i] = f.coeff(i);
      }
      return q;
    }

  }  // namespace

  TruncSeries::TruncSeries(std::uint32_t p, unsigned k)
      : TruncSeries(p, k, std::vector<std::uint32_t>(k >= 2 ? k - 1 : 0, 0)) {}

  TruncSeries::TruncSeries(std::uint32_t p, unsigned k, std::vector<std::uint32_t> coeffs)
      : p_(p), k_(k), a_(std::move(coeffs)) {
    if (p < 2 || k < 1) {
      throw std::invalid_argument("series: need p >= 2 and k >= 1");
    }
    if (a_.size() != k - 1) {
      throw std::invalid_argument("series: expected coefficients a_2..a_k");
    }
    for (auto& c : a_) {
      c %= p;
    }
  }

  bool TruncSeries::is_identity() const {
    for (auto c : a_) {
      if (c != 0) {
        return false;
      }
    }
    return true;
  }

  unsigned TruncSeries::depth() const {
    for (unsigned i = 2; i <= k_; ++i) {
      if (coeff(i) != 0) {
        return i;
      }
    }
    return k_ + 1;
  }

  TruncSeries TruncSeries::truncate(unsigned m) const {
    if (m > k_ || m < 1) {
      throw std::invalid_argument("series: bad truncation level");
    }
    return TruncSeries(p_, m, std::vector<std::uint32_t>(a_.begin(), a_.begin() + (m - 1)));
  }

  TruncSeries compose(TruncSeries const& f, TruncSeries const& g) {
    if (f.prime() != g.prime() || f.level() != g.level()) {
      throw std::invalid_argument("compose: series of different level or prime");
    }
    std::uint32_t const p = f.prime();
    unsigned const      k = f.level();
    Poly const          s = as_poly(g);
    // Horner: f(s) = s (1 + s (a_2 + s (a_3 + ...)))
    Poly h(k + 1, 0);
    for (unsigned i = k; i >= 2; --i) {
      h    = multiply(h, s, p);
      h[0] = (h[0] + f.coeff(i)) % p;
    }
    h    = multiply(h, s, p);
    h[0] = (h[0] + 1) % p;
    h    = multiply(h, s, p);
    return TruncSeries(p, k, Poly(h.begin() + 2, h.end()));
  }

  TruncSeries invert(TruncSeries const& f) {
    std::uint32_t const p = f.prime();
    unsigned const      k = f.level();
    std::vector<std::uint32_t> b(k - 1, 0);
    for (unsigned i = 2; i <= k; ++i) {
      // coefficient i of f(h) is b_i plus terms in b_2..b_{i-1}
      auto c = compose(f, TruncSeries(p, k, b)).coeff(i);
      b[i - 2] = (p - c) % p;
    }
    return TruncSeries(p, k, b);
  }

  std::string format_series(TruncSeries const& f) {
    std::ostringstream os;
    os << "t";
    for (unsigned i = 2; i <= f.level(); ++i) {
      auto c = f.coeff(i);
      if (c == 0) {
        continue;
      }
      os << " + ";
      if (c != 1) {
        os << c << "*";
      }
      os << "t^" << i;
    }
    os << " (mod t^" << f.level() + 1 << ", p=" << f.prime() << ")";
    return os.str();
  }

  TruncSeries parse_series(std::string_view text) {
    static std::regex const whole(R"(^\s*t((?:\s*\+\s*(?:\d+\*)?t\^\d+)*)\s*\(mod t\^(\d+), p=(\d+)\)\s*$)");
    static std::regex const term(R"(\+\s*(?:(\d+)\*)?t\^(\d+))");
    std::string const s(text);
    std::smatch       m;
    if (!std::regex_match(s, m, whole)) {
      throw std::invalid_argument("series: cannot parse '" + s + "'");
    }
    unsigned const      k = static_cast<unsigned>(std::stoul(m[2])) - 1;
    std::uint32_t const p = static_cast<std::uint32_t>(std::stoul(m[3]));
    std::vector<std::uint32_t> a(k - 1, 0);
    std::string const terms = m[1];
    for (std::sregex_iterator it(terms.begin(), terms.end(), term), end; it != end; ++it) {
      unsigned i = static_cast<unsigned>(std::stoul((*it)[2]));
      if (i < 2 || i > k) {
        throw std::invalid_argument("series: degree out of range");
      }
      std::uint32_t c = (*it)[1].matched ? static_cast<std::uint32_t>(std::stoul((*it)[1])) : 1;
      if (c == 0 || c >= p || a[i - 2] != 0) {
        throw std::invalid_argument("series: coefficient not in normal form");
      }
      a[i - 2] = c;
    }
    return TruncSeries(p, k, a);
  }

  NottinghamGroup::NottinghamGroup(std::uint32_t p, unsigned k) : p_(p), k_(k), n_(1) {
    if (k < 2) {
      throw std::invalid_argument("nottingham: level must be at least 2");
    }
    for (unsigned i = 2; i <= k; ++i) {
      if (n_ > default_max_order) {
        throw BoundExceeded("nottingham: level too large");
      }
      n_ *= p;
    }
    if (n_ <= 2187) {
      table_.resize(n_ * n_);
      inv_.resize(n_);
      std::vector<TruncSeries> all;
      all.reserve(n_);
      for (Index a = 0; a < n_; ++a) {
        all.push_back(series(a));
      }
      for (Index a = 0; a < n_; ++a) {
        for (Index b = 0; b < n_; ++b) {
          Index c             = index_of(compose(all[a], all[b]));
          table_[a * n_ + b] = c;
          if (c == 0) {
            inv_[a] = b;
          }
        }
      }
    }
  }

  Index NottinghamGroup::mul(Index a, Index b) const {
    if (!table_.empty()) {
      return table_[std::size_t(a) * n_ + b];
    }
    return index_of(compose(series(a), series(b)));
  }

  Index NottinghamGroup::inv(Index a) const {
    if (!inv_.empty()) {
      return inv_[a];
    }
    return index_of(invert(series(a)));
  }

  std::vector<Index> NottinghamGroup::generators() const {
    std::vector<std::uint32_t> a(k_ - 1, 0), b(k_ - 1, 0);
    a[0] = 1;
    if (k_ >= 3) {
      b[1] = 1;
    }
    std::vector<Index> g{index_of(TruncSeries(p_, k_, a))};
    if (k_ >= 3) {
      g.push_back(index_of(TruncSeries(p_, k_, b)));
    }
    return g;
  }

  TruncSeries NottinghamGroup::series(Index a) const {
    std::vector<std::uint32_t> c(k_ - 1);
    for (unsigned i = k_; i >= 2; --i) {
      c[i - 2] = a % p_;
      a /= p_;
    }
    return TruncSeries(p_, k_, std::move(c));
  }

  Index NottinghamGroup::index_of(TruncSeries const& f) const {
    std::size_t idx = 0;
    for (unsigned i = 2; i <= k_; ++i) {
      idx = idx * p_ + f.coeff(i);
    }
    return static_cast<Index>(idx);
  }

  Subgroup NottinghamGroup::subgroup_Nk(unsigned m) const {
    if (m < 1 || m > k_) {
      throw std::invalid_argument("subgroup_Nk: level out of range");
    }
    std::size_t size = 1;
    for (unsigned i = m + 1; i <= k_; ++i) {
      size *= p_;
    }
    Subgroup h;
    h.member.assign(n_, false);
    for (Index a = 0; a < size; ++a) {
      h.member[a] = true;
      h.elements.push_back(a);
    }
    // t + t^i for i > m generate N_m / N_k
    for (unsigned i = m + 1; i <= k_; ++i) {
      std::vector<std::uint32_t> c(k_ - 1, 0);
      c[i - 2] = 1;
      h.gens.push_back(index_of(TruncSeries(p_, k_, c)));
    }
    return h;
  }

  unsigned nottingham_r(std::uint32_t p, unsigned i) {
    return i + 1 + (i - 2) / (p - 1);
  }

  std::vector<LcsRow> lcs_check(std::uint32_t p, unsigned k) {
    NottinghamGroup g(p, k);
    auto            s = lower_central_series(g);
    std::vector<LcsRow> out;
    for (unsigned i = 2;; ++i) {
      unsigned r = nottingham_r(p, i);
      if (r > k && i > s.size()) {
        break;
      }
      LcsRow row;
      row.i        = i;
      row.r        = r;
      row.asserted = r <= k;
      std::size_t gsize = i <= s.size() ? s[i - 1].size() : 1;
      if (r <= k) {
        auto nr   = g.subgroup_Nk(r);
        row.equal = gsize == nr.size();
        if (row.equal && i <= s.size()) {
          for (Index x : s[i - 1].elements) {
            row.equal = row.equal && nr.contains(x);
          }
        }
      } else {
        row.equal = gsize == 1;
      }
      out.push_back(row);
    }
    return out;
  }

  std::optional<bool> power_subgroup_check(std::uint32_t p, unsigned k, unsigned m) {
    if (m * p + p > k) {
      return std::nullopt;
    }
    NottinghamGroup g(p, k);
    auto const      nm     = g.subgroup_Nk(m);
    unsigned const  target = m * p + m % p;
    auto const      nt     = g.subgroup_Nk(target);
    Subgroup        pw     = trivial_subgroup(g);
    for (Index x : nm.elements) {
      Index y = power(g, x, p);
      if (!nt.contains(y)) {
        return false;
      }
      extend(g, pw, y);
    }
    return pw.size() == nt.size();
  }

  std::vector<std::uint64_t> excluded_levels(std::uint32_t p, unsigned max_m) {
    std::vector<std::uint64_t> z;
    std::uint64_t              pk = 1, sum = 0;
    for (unsigned m = 1; m <= max_m; ++m) {
      pk *= p;
      sum += pk;
      z.push_back(sum + 2);
    }
    return z;
  }

  PcHandle nottingham_pc(std::uint32_t p, unsigned k) {
    NottinghamGroup g(p, k);
    return pc_model(g, p).pcp;
  }

  namespace {

    std::vector<std::size_t> lcs_sizes(PcGroup const& g) {
      std::vector<std::size_t> out;
      for (auto const& s : lower_central_series(g)) {
        out.push_back(s.size());
      }
      return out;
    }

    // Images of all PC generators of src from those of the defining ones,
    // or nothing if a relation fails.
    bool extend_images(PcPresentation const& src, PcGroup const& dst, std::vector<Index>& img) {
      std::size_t const m = src.size();
      std::uint32_t const p = src.prime();
      for (std::size_t i = 0; i < m; ++i) {
        auto const& d = src.definition(i);
        if (d.kind == Definition::Kind::power) {
          img[i] = power(dst, img[d.a], p);
        } else if (d.kind == Definition::Kind::commutator) {
          img[i] = comm(dst, img[d.a], img[d.b]);
        }
      }
      auto eval = [&](Exponents const& e) {
        Index r = 0;
        for (std::size_t l = 0; l < m; ++l) {
          for (std::uint32_t c = 0; c < e[l]; ++c) {
            r = dst.mul(r, img[l]);
          }
        }
        return r;
      };
      for (std::size_t i = 0; i < m; ++i) {
        if (power(dst, img[i], p) != eval(src.power(i))) {
          return false;
        }
        for (std::size_t j = i + 1; j < m; ++j) {
          if (comm(dst, img[j], img[i]) != eval(src.commutator(j, i))) {
            return false;
          }
        }
      }
      return true;
    }

  }  // namespace

  IsoResult iso_search(PcHandle const& g1, PcHandle const& g2, std::uint64_t max_order) {
    IsoResult res;
    auto      o1 = group_order(*g1);
    auto      o2 = group_order(*g2);
    if (!o1 || !o2 || *o1 != *o2 || g1->prime() != g2->prime()) {
      res.verdict = IsoResult::Verdict::invariant_differs;
      res.detail  = "orders differ";
      return res;
    }
    if (*o1 > max_order) {
      res.detail = "group order exceeds the search bound";
      return res;
    }
    PcGroup a(g1), b(g2);
    auto    la = lcs_sizes(a), lb = lcs_sizes(b);
    if (la != lb) {
      res.verdict = IsoResult::Verdict::invariant_differs;
      res.detail  = "lower central series orders differ";
      return res;
    }
    auto ea = derived_exponent(a), eb = derived_exponent(b);
    if (ea != eb) {
      res.verdict = IsoResult::Verdict::invariant_differs;
      res.detail  = "exp gamma_2: " + std::to_string(ea) + " vs " + std::to_string(eb);
      return res;
    }
    auto xa = exponent(a, whole_group(a)), xb = exponent(b, whole_group(b));
    if (xa != xb) {
      res.verdict = IsoResult::Verdict::invariant_differs;
      res.detail  = "exponents differ: " + std::to_string(xa) + " vs " + std::to_string(xb);
      return res;
    }

    auto const defs = g1->defining_generators();
    if (defs.size() != 2 || frattini_rank(*g2) != 2) {
      throw std::invalid_argument("iso_search: both groups must be 2-generated");
    }
    std::vector<std::uint64_t> ord(b.order());
    for (Index y = 0; y < b.order(); ++y) {
      ord[y] = element_order(b, y);
    }
    auto const o_first  = element_order(a, a.generator(defs[0]));
    auto const o_second = element_order(a, a.generator(defs[1]));
    std::vector<Index> img(g1->size(), 0);
    for (Index y1 = 0; y1 < b.order(); ++y1) {
      if (ord[y1] != o_first || gfp::is_zero(b.frattini_image(y1))) {
        continue;
      }
      for (Index y2 = 0; y2 < b.order(); ++y2) {
        if (ord[y2] != o_second) {
          continue;
        }
        if (!generates(b.element(y1), b.element(y2))) {
          continue;
        }
        ++res.candidates;
        img[defs[0]] = y1;
        img[defs[1]] = y2;
        if (!extend_images(*g1, b, img)) {
          continue;
        }
        res.verdict = IsoResult::Verdict::isomorphic;
        res.iso.emplace(g1, g2, std::vector<GroupElement>{b.element(y1), b.element(y2)});
        std::ostringstream os;
        os << "x -> " << b.element(y1) << ", y -> " << b.element(y2);
        res.detail = os.str();
        return res;
      }
    }
    res.verdict = IsoResult::Verdict::exhaustive_absence;
    res.detail  = "no generating images satisfy the relations";
    return res;
  }

}  // namespace pcforge
