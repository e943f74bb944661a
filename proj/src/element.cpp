#include "pcforge/element.hpp"

#include <cstdlib>
#include <ostream>
#include <string>

namespace pcforge {

  namespace {

    void require_same(GroupElement const& x, GroupElement const& y) {
      if (x.presentation() != y.presentation() && !(x.pcp() == y.pcp())) {
        throw PresentationMismatch("elements belong to different presentations");
      }
    }

    Exponents unit(std::size_t m, std::size_t i, std::uint32_t e = 1) {
      Exponents v(m, 0);
      v[i] = e;
      return v;
    }

  }  // namespace

  GroupElement::GroupElement(PcHandle pcp, Exponents exps)
      : pcp_(std::move(pcp)), exps_(std::move(exps)) {
    if (!pcp_) {
      throw std::invalid_argument("GroupElement: null presentation");
    }
    if (exps_.size() != pcp_->size()) {
      throw std::invalid_argument("GroupElement: exponent vector has wrong length");
    }
    for (auto e : exps_) {
      if (e >= pcp_->prime()) {
        throw std::invalid_argument("GroupElement: exponent out of range");
      }
    }
  }

  GroupElement GroupElement::identity(PcHandle pcp) {
    std::size_t m = pcp->size();
    return GroupElement(std::move(pcp), Exponents(m, 0));
  }

  GroupElement GroupElement::generator(PcHandle pcp, std::size_t i) {
    std::size_t m = pcp->size();
    if (i >= m) {
      throw std::out_of_range("GroupElement::generator: index out of range");
    }
    return GroupElement(std::move(pcp), unit(m, i));
  }

  bool GroupElement::is_identity() const noexcept {
    for (auto e : exps_) {
      if (e != 0) {
        return false;
      }
    }
    return true;
  }

  bool GroupElement::operator==(GroupElement const& other) const {
    return exps_ == other.exps_
           && (pcp_ == other.pcp_ || (pcp_ && other.pcp_ && *pcp_ == *other.pcp_));
  }

  std::ostream& operator<<(std::ostream& os, GroupElement const& x) {
    return os << format_word(x.exponents());
  }

  GroupElement collect(Word const& word, PcHandle const& pcp) {
    return GroupElement(pcp, collect_word(*pcp, word));
  }

  GroupElement operator*(GroupElement const& x, GroupElement const& y) {
    require_same(x, y);
    Exponents z(x.exponents());
    default_collector().multiply(x.pcp(), z, y.exponents());
    return GroupElement(x.presentation(), std::move(z));
  }

  GroupElement inverse(GroupElement const& x) {
    return GroupElement(x.presentation(), inverse_exponents(x.pcp(), x.exponents()));
  }

  GroupElement power(GroupElement const& x, std::int64_t k) {
    GroupElement base = k < 0 ? inverse(x) : x;
    std::uint64_t n   = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : std::uint64_t(k);
    GroupElement result = GroupElement::identity(x.presentation());
    while (n > 0) {
      if (n & 1U) {
        result = result * base;
      }
      n >>= 1U;
      if (n > 0) {
        base = base * base;
      }
    }
    return result;
  }

  GroupElement conjugate(GroupElement const& x, GroupElement const& g) {
    return inverse(g) * x * g;
  }

  GroupElement commutator(GroupElement const& x, GroupElement const& y) {
    return inverse(x) * inverse(y) * x * y;
  }

  std::uint64_t order(GroupElement const& x) {
    std::uint64_t o = 1;
    GroupElement  y = x;
    std::size_t   steps = 0;
    while (!y.is_identity()) {
      y = power(y, x.pcp().prime());
      o *= x.pcp().prime();
      if (++steps > x.pcp().size() + 1) {
        throw CollectionError("order: element did not reach the identity");
      }
    }
    return o;
  }

  std::size_t frattini_rank(PcPresentation const& pcp) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < pcp.size(); ++i) {
      if (pcp.weight(i) == 1) {
        ++d;
      }
    }
    return d;
  }

  gfp::Vec frattini_image(GroupElement const& x) {
    std::size_t d = frattini_rank(x.pcp());
    return gfp::Vec(x.exponents().begin(), x.exponents().begin() + static_cast<std::ptrdiff_t>(d));
  }

  bool generates(GroupElement const& x, GroupElement const& y) {
    require_same(x, y);
    std::size_t d = frattini_rank(x.pcp());
    if (d > 2) {
      return false;
    }
    return gfp::rank({frattini_image(x), frattini_image(y)}, d, x.pcp().prime()) == d;
  }

  std::uint64_t max_order_from_env() {
    if (char const* env = std::getenv("PCFORGE_MAX_ORDER")) {
      try {
        return std::stoull(env);
      } catch (std::exception const&) {
        throw std::invalid_argument("PCFORGE_MAX_ORDER is not a number");
      }
    }
    return default_max_order;
  }

  std::optional<std::uint64_t> group_order(PcPresentation const& pcp) {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < pcp.size(); ++i) {
      if (n > UINT64_MAX / pcp.prime()) {
        return std::nullopt;
      }
      n *= pcp.prime();
    }
    return n;
  }

  void for_each_element(PcHandle const&                                 pcp,
                        std::function<void(GroupElement const&)> const& f,
                        std::uint64_t                                   max_order) {
    auto n = group_order(*pcp);
    if (!n || *n > max_order) {
      throw BoundExceeded("enumeration bound exceeded: |G| = " + std::to_string(pcp->prime())
                          + "^" + std::to_string(pcp->size()) + " > "
                          + std::to_string(max_order));
    }
    std::size_t const m = pcp->size();
    Exponents         e(m, 0);
    while (true) {
      f(GroupElement(pcp, e));
      std::size_t k = m;
      while (k > 0) {
        --k;
        if (++e[k] < pcp->prime()) {
          break;
        }
        e[k] = 0;
        if (k == 0) {
          return;
        }
      }
      if (m == 0) {
        return;
      }
    }
  }

  std::vector<GroupElement> enumerate_elements(PcHandle const& pcp, std::uint64_t max_order) {
    std::vector<GroupElement> out;
    for_each_element(pcp, [&](GroupElement const& g) { out.push_back(g); }, max_order);
    return out;
  }

  ConsistencyReport check_consistency(PcPresentation const& pcp, Collector const& c) {
    std::size_t const   m = pcp.size();
    std::uint32_t const p = pcp.prime();
    ConsistencyReport   report;
    auto fail = [&](std::string what) {
      report.consistent   = false;
      report.failing_test = std::move(what);
    };
    auto name = [](std::size_t i) { return "g" + std::to_string(i + 1); };

    auto prod = [&](Exponents x, Exponents const& y) {
      c.multiply(pcp, x, y);
      return x;
    };

    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
          Exponents lhs = prod(prod(unit(m, k), unit(m, j)), unit(m, i));
          Exponents rhs = prod(unit(m, k), prod(unit(m, j), unit(m, i)));
          if (lhs != rhs) {
            fail("(" + name(k) + " " + name(j) + ") " + name(i) + " != " + name(k) + " ("
                 + name(j) + " " + name(i) + ")");
            return report;
          }
        }
      }
    }
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        Exponents lhs = prod(pcp.power(j), unit(m, i));
        Exponents rhs = prod(unit(m, j, p - 1), prod(unit(m, j), unit(m, i)));
        if (lhs != rhs) {
          fail("(" + name(j) + "^p) " + name(i) + " != " + name(j) + "^(p-1) (" + name(j) + " "
               + name(i) + ")");
          return report;
        }
        lhs = prod(unit(m, j), pcp.power(i));
        rhs = prod(unit(m, j), unit(m, i));
        c.multiply_generator(pcp, rhs, i, p - 1);
        if (lhs != rhs) {
          fail(name(j) + " (" + name(i) + "^p) != (" + name(j) + " " + name(i) + ") " + name(i)
               + "^(p-1)");
          return report;
        }
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      Exponents lhs = prod(pcp.power(i), unit(m, i));
      Exponents rhs = prod(unit(m, i), pcp.power(i));
      if (lhs != rhs) {
        fail("(" + name(i) + "^p) " + name(i) + " != " + name(i) + " (" + name(i) + "^p)");
        return report;
      }
    }
    return report;
  }

}  // namespace pcforge
