#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcforge/certificate.hpp"
#include "pcforge/finite_group.hpp"
#include "pcforge/pc_model.hpp"
#include "pcforge/pquotient.hpp"

namespace pcforge {

  // P = <s> x| A with A = Z^(p-1) / L, L the row lattice of (T - I)^(n-1),
  // T the companion matrix of x^(p-1) + ... + x + 1 acting on rows.
  // Elements (sigma, a) are numbered sigma * |A| + rank(a), residues in the
  // mixed radix of the Hermite normal form diagonal of L.
  class MaxClassGroup {
   public:
    MaxClassGroup(std::uint32_t p, unsigned n);

    std::size_t order() const noexcept {
      return std::size_t(p_) * asize_;
    }
    Index mul(Index a, Index b) const {
      std::size_t s1 = a / asize_, s2 = b / asize_;
      Index       v  = act_[s2][a % asize_];
      return static_cast<Index>(((s1 + s2) % p_) * asize_ + add_[v * asize_ + b % asize_]);
    }
    Index inv(Index a) const {
      return inv_[a];
    }
    std::vector<Index> generators() const {
      return {s(), s1()};
    }

    std::uint32_t prime() const noexcept {
      return p_;
    }
    unsigned log_order() const noexcept {
      return n_;
    }
    std::size_t abelian_order() const noexcept {
      return asize_;
    }
    // (1, 0)
    Index s() const noexcept {
      return static_cast<Index>(asize_);
    }
    // (0, e_1)
    Index s1() const noexcept {
      return e1_;
    }
    Index make(std::uint32_t sigma, std::vector<std::int64_t> const& a) const;
    std::uint32_t            sigma(Index x) const {
      return static_cast<std::uint32_t>(x / asize_);
    }
    std::vector<std::int64_t> vector(Index x) const;
    bool in_p1(Index x) const {
      return x < asize_;
    }

    // Hermite normal form of the lattice (rows).
    std::vector<std::vector<std::int64_t>> const& lattice() const noexcept {
      return hnf_;
    }
    // Residue of an integer vector modulo the lattice.
    std::vector<std::int64_t> reduce(std::vector<std::int64_t> v) const;
    // v T
    std::vector<std::int64_t> theta(std::vector<std::int64_t> const& v) const;

   private:
    Index rank(std::vector<std::int64_t> const& residue) const;

    std::uint32_t                          p_;
    unsigned                               n_;
    std::size_t                            asize_ = 1;
    std::vector<std::vector<std::int64_t>> hnf_;
    std::vector<std::vector<Index>>        act_;  // act_[k][a] = a T^k
    std::vector<Index>                     add_;
    std::vector<Index>                     inv_;
    Index                                  e1_ = 0;
  };

  static_assert(FiniteGroup<MaxClassGroup>);

  // Entry i is P_i: P_0 = P, P_1 the abelian subgroup sigma = 0,
  // P_i = gamma_i(P) for i >= 2.
  std::vector<Subgroup> gamma_series_P(MaxClassGroup const& g);

  // p^ceil((n - i) / (p - 1))
  std::uint64_t expected_exponent(std::uint32_t p, unsigned n, unsigned i);

  struct PsiMap {
    PcModel      model;  // PC presentation of P
    Homomorphism hom;
  };

  // u -> s^-1, v -> s s_1 from a free-product stage; s = (1, 0), s_1 = e_1
  // unless given.
  PsiMap       psi(Stage const& stage, MaxClassGroup const& g);
  Homomorphism psi(Stage const& stage, PcModel const& model, Index s, Index s1);

  // The distinct subgroups Ker(psi) meet lambda_{n-1} over all s outside P_1
  // and s_1 in P_1 \ P', for the stage n onto P of order p^n.
  struct KernelFamily {
    std::vector<SubgroupBasis> kernels;
    std::size_t                maps = 0;  // homomorphisms tried
  };
  KernelFamily psi_kernel_family(Stage const& stage, MaxClassGroup const& g);

  struct RefinementTerm {
    std::string          label;  // e.g. "lambda_5", "N_1", "lambda_4"
    Stage                quotient;  // F/N with the images of u and v
    BeauvilleCertificate cert;
  };

  // lambda_n < N_1 < ... < K < lambda_{n-1} for a subgroup K of the layer,
  // each quotient certified with ({u,v}, {(uz)^-1, vt}).
  std::vector<RefinementTerm> refinement_series(Stage const& stage, Stage const& previous,
                                                SubgroupBasis const& kernel);

}  // namespace pcforge
