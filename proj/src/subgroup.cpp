#include "pcforge/subgroup.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcforge {

  std::size_t leading_index(Exponents const& e) noexcept {
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] != 0) {
        return k;
      }
    }
    return e.size();
  }

  SubgroupBasis::SubgroupBasis(PcHandle pcp)
      : pcp_(std::move(pcp)), by_lead_(pcp_->size(), -1) {}

  SubgroupBasis SubgroupBasis::generated_by(PcHandle pcp, std::vector<GroupElement> const& gens) {
    SubgroupBasis s(std::move(pcp));
    s.close(gens, false);
    return s;
  }

  SubgroupBasis SubgroupBasis::normal_closure(PcHandle pcp, std::vector<GroupElement> const& gens) {
    SubgroupBasis s(std::move(pcp));
    s.close(gens, true);
    return s;
  }

  void SubgroupBasis::add(GroupElement const& x, bool normal) {
    close({x}, normal);
  }

  GroupElement SubgroupBasis::sift(GroupElement x) const {
    std::uint32_t const p = pcp_->prime();
    while (true) {
      std::size_t l = leading_index(x.exponents());
      if (l == x.exponents().size() || by_lead_[l] < 0) {
        return x;
      }
      auto const& b = basis_[static_cast<std::size_t>(by_lead_[l])];
      x             = x * power(b, p - x.exponents()[l]);
    }
  }

  std::optional<gfp::Vec> SubgroupBasis::coordinates(GroupElement x) const {
    std::uint32_t const p = pcp_->prime();
    gfp::Vec            c(basis_.size(), 0);
    while (true) {
      std::size_t l = leading_index(x.exponents());
      if (l == x.exponents().size()) {
        return c;
      }
      if (by_lead_[l] < 0) {
        return std::nullopt;
      }
      auto pos = static_cast<std::size_t>(by_lead_[l]);
      c[pos]   = x.exponents()[l];
      x        = x * power(basis_[pos], p - x.exponents()[l]);
    }
  }

  void SubgroupBasis::close(std::vector<GroupElement> queue, bool normal) {
    std::uint32_t const p    = pcp_->prime();
    std::size_t const   m    = pcp_->size();
    std::vector<GroupElement> group_gens;
    if (normal) {
      for (std::size_t i = 0; i < m; ++i) {
        group_gens.push_back(GroupElement::generator(pcp_, i));
      }
    }
    while (!queue.empty()) {
      GroupElement y = sift(queue.back());
      queue.pop_back();
      if (y.is_identity()) {
        continue;
      }
      std::size_t l = leading_index(y.exponents());
      y             = power(y, gfp::inverse(y.exponents()[l], p));
      for (auto const& b : basis_) {
        queue.push_back(commutator(y, b));
      }
      queue.push_back(power(y, p));
      for (auto const& g : group_gens) {
        queue.push_back(commutator(y, g));
      }
      auto pos = std::lower_bound(lead_.begin(), lead_.end(), l) - lead_.begin();
      lead_.insert(lead_.begin() + pos, l);
      basis_.insert(basis_.begin() + pos, std::move(y));
      std::fill(by_lead_.begin(), by_lead_.end(), -1);
      for (std::size_t i = 0; i < lead_.size(); ++i) {
        by_lead_[lead_[i]] = static_cast<int>(i);
      }
    }
  }

  bool SubgroupBasis::is_normal() const {
    for (auto const& b : basis_) {
      for (std::size_t i = 0; i < pcp_->size(); ++i) {
        if (!contains(conjugate(b, GroupElement::generator(pcp_, i)))) {
          return false;
        }
      }
    }
    return true;
  }

  bool SubgroupBasis::is_central_elementary() const {
    for (auto const& b : basis_) {
      if (!power(b, pcp_->prime()).is_identity()) {
        return false;
      }
      for (std::size_t i = 0; i < pcp_->size(); ++i) {
        if (!commutator(b, GroupElement::generator(pcp_, i)).is_identity()) {
          return false;
        }
      }
    }
    return true;
  }

  bool SubgroupBasis::is_subgroup_of(SubgroupBasis const& other) const {
    return std::all_of(basis_.begin(), basis_.end(),
                       [&](GroupElement const& b) { return other.contains(b); });
  }

  bool SubgroupBasis::operator==(SubgroupBasis const& other) const {
    return log_order() == other.log_order() && is_subgroup_of(other);
  }

  std::vector<GroupElement> SubgroupBasis::elements(std::uint64_t max_order) const {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      n *= pcp_->prime();
      if (n > max_order) {
        throw BoundExceeded("SubgroupBasis::elements: bound exceeded");
      }
    }
    std::vector<GroupElement> out{GroupElement::identity(pcp_)};
    // b_1^c_1 ... b_k^c_k, built right to left
    for (std::size_t i = basis_.size(); i-- > 0;) {
      std::vector<GroupElement> next;
      next.reserve(out.size() * pcp_->prime());
      GroupElement bp = GroupElement::identity(pcp_);
      for (std::uint32_t c = 0; c < pcp_->prime(); ++c) {
        for (auto const& rest : out) {
          next.push_back(bp * rest);
        }
        bp = bp * basis_[i];
      }
      out = std::move(next);
    }
    return out;
  }

  SubgroupBasis weight_subgroup(PcHandle const& pcp, unsigned n) {
    if (n < 1) {
      throw std::invalid_argument("weight_subgroup: n must be >= 1");
    }
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < pcp->size(); ++i) {
      if (pcp->weight(i) >= n) {
        gens.push_back(GroupElement::generator(pcp, i));
      }
    }
    return SubgroupBasis::generated_by(pcp, gens);
  }

  SubgroupBasis commutator_subgroup(SubgroupBasis const& a, SubgroupBasis const& b) {
    std::vector<GroupElement> gens;
    for (auto const& x : a.basis()) {
      for (auto const& y : b.basis()) {
        gens.push_back(commutator(x, y));
      }
    }
    return SubgroupBasis::normal_closure(a.presentation(), gens);
  }

  SubgroupBasis lower_central_term(PcHandle const& pcp, unsigned k) {
    if (k < 1) {
      throw std::invalid_argument("lower_central_term: k must be >= 1");
    }
    SubgroupBasis whole = weight_subgroup(pcp, 1);
    SubgroupBasis term  = whole;
    for (unsigned i = 1; i < k; ++i) {
      term = commutator_subgroup(term, whole);
      if (term.log_order() == 0) {
        break;
      }
    }
    return term;
  }

}  // namespace pcforge
