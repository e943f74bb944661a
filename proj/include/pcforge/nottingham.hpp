#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcforge/finite_group.hpp"
#include "pcforge/pquotient.hpp"

namespace pcforge {

  // f(t) = t + a_2 t^2 + ... + a_k t^k over GF(p), modulo t^(k+1).
  class TruncSeries {
   public:
    TruncSeries(std::uint32_t p, unsigned k);  // the identity t
    TruncSeries(std::uint32_t p, unsigned k, std::vector<std::uint32_t> coeffs);  // a_2..a_k

    std::uint32_t prime() const noexcept {
      return p_;
    }
    unsigned level() const noexcept {
      return k_;
    }
    // a_i for 2 <= i <= k
    std::uint32_t coeff(unsigned i) const {
      return a_[i - 2];
    }
    std::vector<std::uint32_t> const& coeffs() const noexcept {
      return a_;
    }
    bool is_identity() const;
    // smallest i with a_i != 0, or k+1
    unsigned depth() const;
    TruncSeries truncate(unsigned m) const;

    bool operator==(TruncSeries const&) const = default;

   private:
    std::uint32_t              p_;
    unsigned                   k_;
    std::vector<std::uint32_t> a_;
  };

  // f(g(t))
  TruncSeries compose(TruncSeries const& f, TruncSeries const& g);
  TruncSeries invert(TruncSeries const& f);

  // `t + 2*t^2 + t^4 (mod t^5, p=3)`
  std::string format_series(TruncSeries const& f);
  TruncSeries parse_series(std::string_view text);

  // N / N_k with elements numbered by (a_2, ..., a_k) in base p, a_2 most
  // significant, and product compose(a, b).
  class NottinghamGroup {
   public:
    NottinghamGroup(std::uint32_t p, unsigned k);

    std::size_t order() const noexcept {
      return n_;
    }
    Index mul(Index a, Index b) const;
    Index inv(Index a) const;
    // t + t^2, t + t^3
    std::vector<Index> generators() const;

    std::uint32_t prime() const noexcept {
      return p_;
    }
    unsigned level() const noexcept {
      return k_;
    }
    TruncSeries series(Index a) const;
    Index       index_of(TruncSeries const& f) const;

    // N_m / N_k: indices with a_2 = ... = a_m = 0
    Subgroup subgroup_Nk(unsigned m) const;

   private:
    std::uint32_t      p_;
    unsigned           k_;
    std::size_t        n_;
    std::vector<Index> table_;  // full Cayley table for small levels
    std::vector<Index> inv_;
  };

  static_assert(FiniteGroup<NottinghamGroup>);

  // i + 1 + floor((i - 2) / (p - 1)), i >= 2
  unsigned nottingham_r(std::uint32_t p, unsigned i);

  struct LcsRow {
    unsigned i = 0;
    unsigned r = 0;
    bool     asserted = false;  // r <= k
    bool     equal    = false;
  };
  std::vector<LcsRow> lcs_check(std::uint32_t p, unsigned k);

  // N_m^p = N_{mp + (m mod p)} inside N / N_k; empty when mp + p > k.
  std::optional<bool> power_subgroup_check(std::uint32_t p, unsigned k, unsigned m);

  // z_m = p^m + ... + p + 2 for m = 1..max_m
  std::vector<std::uint64_t> excluded_levels(std::uint32_t p, unsigned max_m);

  // Exponent of gamma_2 of a concrete group.
  template <FiniteGroup G>
  std::uint64_t derived_exponent(G const& g) {
    auto s = lower_central_series(g);
    return s.size() > 1 ? exponent(g, s[1]) : 1;
  }

  struct IsoResult {
    enum class Verdict { isomorphic, invariant_differs, exhaustive_absence, too_large };
    Verdict                     verdict = Verdict::too_large;
    std::optional<Homomorphism> iso;
    std::string                 detail;
    std::size_t                 candidates = 0;
  };

  // Isomorphism search from a 2-generated G1 onto G2: invariants first
  // (order, exponent of G, exponent of gamma_2, orders along the lower
  // central series), then all images of the defining generators.
  IsoResult iso_search(PcHandle const& g1, PcHandle const& g2,
                       std::uint64_t max_order = 729);

  // The PC presentation of N / N_k read off its lambda-series.
  PcHandle nottingham_pc(std::uint32_t p, unsigned k);

}  // namespace pcforge
