#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pcforge/element.hpp"
#include "pcforge/finite_group.hpp"

namespace pcforge {

  // A PC group with every element numbered by the rank of its exponent
  // vector (g_1 most significant), backed by right-multiplication tables.
  class PcGroup {
   public:
    explicit PcGroup(PcHandle pcp, std::uint64_t max_order = default_max_order);

    std::size_t order() const noexcept {
      return n_;
    }
    Index mul(Index a, Index b) const;
    Index inv(Index a) const {
      return inv_[a];
    }
    // The generators without definitions (they generate the group).
    std::vector<Index> generators() const {
      return gens_;
    }

    Index        index_of(Exponents const& e) const;
    Index        index_of(GroupElement const& x) const {
      return index_of(x.exponents());
    }
    Exponents    exponents(Index a) const;
    GroupElement element(Index a) const {
      return GroupElement(pcp_, exponents(a));
    }
    Index generator(std::size_t i) const {
      return static_cast<Index>(place_[i]);
    }

    PcHandle const& presentation() const noexcept {
      return pcp_;
    }
    std::uint32_t prime() const noexcept {
      return pcp_->prime();
    }

    // x and y agree modulo the subgroup generated by generators of weight >= w.
    bool congruent_mod_weight(Index x, Index y, unsigned w) const;
    // Coordinates on the weight-1 generators.
    gfp::Vec frattini_image(Index a) const;

   private:
    PcHandle                          pcp_;
    std::size_t                       m_ = 0;
    std::size_t                       n_ = 1;
    std::vector<std::size_t>          place_;  // p^(m-1-i)
    std::vector<std::vector<Index>>   right_;  // right_[i][a] = a * g_i
    std::vector<Index>                inv_;
    std::vector<Index>                gens_;
  };

  // C_n x C_n with (a, b) numbered a*n + b.
  class CyclicSquare {
   public:
    explicit CyclicSquare(std::uint32_t n);

    std::size_t order() const noexcept {
      return std::size_t(n_) * n_;
    }
    Index mul(Index a, Index b) const {
      return ((a / n_ + b / n_) % n_) * n_ + (a % n_ + b % n_) % n_;
    }
    Index inv(Index a) const {
      return ((n_ - a / n_) % n_) * n_ + (n_ - a % n_) % n_;
    }
    std::vector<Index> generators() const {
      return {n_, 1};
    }
    Index make(std::uint32_t a, std::uint32_t b) const {
      return (a % n_) * n_ + b % n_;
    }
    std::uint32_t modulus() const noexcept {
      return n_;
    }

   private:
    Index n_;
  };

  static_assert(FiniteGroup<PcGroup>);
  static_assert(FiniteGroup<CyclicSquare>);

}  // namespace pcforge
