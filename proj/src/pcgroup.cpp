#include "pcforge/pcgroup.hpp"

#include <stdexcept>
#include <string>

namespace pcforge {

  PcGroup::PcGroup(PcHandle pcp, std::uint64_t max_order) : pcp_(std::move(pcp)) {
    m_      = pcp_->size();
    auto n  = group_order(*pcp_);
    if (!n || *n > max_order) {
      throw BoundExceeded("PcGroup: |G| = " + std::to_string(pcp_->prime()) + "^"
                          + std::to_string(m_) + " exceeds the enumeration bound");
    }
    n_ = static_cast<std::size_t>(*n);
    place_.assign(m_, 1);
    for (std::size_t i = m_; i-- > 1;) {
      place_[i - 1] = place_[i] * pcp_->prime();
    }
    right_.assign(m_, std::vector<Index>(n_));
    auto const& col = default_collector();
    for (Index a = 0; a < n_; ++a) {
      Exponents e = exponents(a);
      for (std::size_t i = 0; i < m_; ++i) {
        Exponents x = e;
        col.multiply_generator(*pcp_, x, i, 1);
        right_[i][a] = index_of(x);
      }
    }
    inv_.assign(n_, 0);
    for (Index a = 0; a < n_; ++a) {
      inv_[a] = index_of(inverse_exponents(*pcp_, exponents(a)));
    }
    for (auto i : pcp_->defining_generators()) {
      gens_.push_back(generator(i));
    }
  }

  Index PcGroup::mul(Index a, Index b) const {
    std::size_t rest = b;
    for (std::size_t i = 0; i < m_ && rest != 0; ++i) {
      std::size_t e = rest / place_[i];
      rest %= place_[i];
      for (std::size_t r = 0; r < e; ++r) {
        a = right_[i][a];
      }
    }
    return a;
  }

  Index PcGroup::index_of(Exponents const& e) const {
    std::size_t r = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      r = r * pcp_->prime() + e[i];
    }
    return static_cast<Index>(r);
  }

  Exponents PcGroup::exponents(Index a) const {
    Exponents e(m_);
    std::size_t r = a;
    for (std::size_t i = m_; i-- > 0;) {
      e[i] = static_cast<std::uint32_t>(r % pcp_->prime());
      r /= pcp_->prime();
    }
    return e;
  }

  bool PcGroup::congruent_mod_weight(Index x, Index y, unsigned w) const {
    std::size_t cut = 0;
    while (cut < m_ && pcp_->weight(cut) < w) {
      ++cut;
    }
    if (cut == 0) {
      return true;
    }
    std::size_t scale = cut == m_ ? 1 : place_[cut - 1];
    return x / scale == y / scale;
  }

  gfp::Vec PcGroup::frattini_image(Index a) const {
    std::size_t d = pcforge::frattini_rank(*pcp_);
    Exponents   e = exponents(a);
    return gfp::Vec(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(d));
  }

  CyclicSquare::CyclicSquare(std::uint32_t n) : n_(n) {
    if (n < 1) {
      throw std::invalid_argument("CyclicSquare: n must be positive");
    }
  }

}  // namespace pcforge
