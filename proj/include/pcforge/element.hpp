#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pcforge/collect.hpp"
#include "pcforge/gfp.hpp"
#include "pcforge/pcp.hpp"

namespace pcforge {

  class PresentationMismatch : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  // Element of a PC group in collected normal form.
  class GroupElement {
   public:
    GroupElement() = default;
    GroupElement(PcHandle pcp, Exponents exps);

    static GroupElement identity(PcHandle pcp);
    static GroupElement generator(PcHandle pcp, std::size_t i);

    Exponents const& exponents() const noexcept {
      return exps_;
    }
    PcHandle const& presentation() const noexcept {
      return pcp_;
    }
    PcPresentation const& pcp() const {
      return *pcp_;
    }
    bool is_identity() const noexcept;

    bool operator==(GroupElement const& other) const;
    bool operator<(GroupElement const& other) const {
      return exps_ < other.exps_;
    }

   private:
    PcHandle  pcp_;
    Exponents exps_;
  };

  std::ostream& operator<<(std::ostream& os, GroupElement const& x);

  GroupElement collect(Word const& word, PcHandle const& pcp);

  GroupElement operator*(GroupElement const& x, GroupElement const& y);
  GroupElement inverse(GroupElement const& x);
  // Square-and-multiply; negative k powers the inverse.
  GroupElement power(GroupElement const& x, std::int64_t k);
  // g^-1 x g
  GroupElement conjugate(GroupElement const& x, GroupElement const& g);
  // x^-1 y^-1 x y
  GroupElement commutator(GroupElement const& x, GroupElement const& y);
  // Smallest p^e with x^(p^e) = 1.
  std::uint64_t order(GroupElement const& x);

  // Coordinates on the weight-1 generators, i.e. the image in G/Phi(G).
  gfp::Vec frattini_image(GroupElement const& x);
  // Whether x and y generate: their Frattini images span GF(p)^d with d = 2.
  bool generates(GroupElement const& x, GroupElement const& y);

  // Number of weight-1 generators, d(G) for a weighted presentation.
  std::size_t frattini_rank(PcPresentation const& pcp);

  // All p^m elements in lexicographic exponent order (g_1 most significant).
  // Throws BoundExceeded if p^m > max_order.
  class BoundExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  inline constexpr std::uint64_t default_max_order = 10'000'000;

  // Reads PCFORGE_MAX_ORDER, falling back to default_max_order.
  std::uint64_t max_order_from_env();

  // p^m, or nullopt on overflow of 64 bits.
  std::optional<std::uint64_t> group_order(PcPresentation const& pcp);

  void for_each_element(PcHandle const&                               pcp,
                        std::function<void(GroupElement const&)> const& f,
                        std::uint64_t max_order = default_max_order);

  std::vector<GroupElement> enumerate_elements(PcHandle const& pcp,
                                               std::uint64_t   max_order = default_max_order);

  // Vaughan-Lee test words for relative orders p.
  struct ConsistencyReport {
    bool        consistent = true;
    std::string failing_test;  // description of the first failing test word
  };
  ConsistencyReport check_consistency(PcPresentation const& pcp,
                                      Collector const&      c = default_collector());
  inline bool is_consistent(PcPresentation const& pcp) {
    return check_consistency(pcp).consistent;
  }

}  // namespace pcforge
