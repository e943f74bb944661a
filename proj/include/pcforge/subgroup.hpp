#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pcforge/element.hpp"

namespace pcforge {

  // Induced generating sequence of a subgroup of a PC group: leading
  // indices strictly increasing, leading exponents equal to 1. Every
  // element of the subgroup is uniquely b_1^c_1 ... b_k^c_k.
  class SubgroupBasis {
   public:
    explicit SubgroupBasis(PcHandle pcp);

    static SubgroupBasis generated_by(PcHandle pcp, std::vector<GroupElement> const& gens);
    // Smallest normal subgroup containing gens.
    static SubgroupBasis normal_closure(PcHandle pcp, std::vector<GroupElement> const& gens);

    // Add x and close again (as a subgroup, or as a normal subgroup).
    void add(GroupElement const& x, bool normal = false);

    // Remainder after dividing by the basis; identity iff x is a member.
    GroupElement sift(GroupElement x) const;
    bool         contains(GroupElement const& x) const {
      return sift(x).is_identity();
    }
    // Exponents c with x = prod b_i^c_i; meaningful as linear coordinates
    // when the subgroup is elementary abelian. nullopt if x is not a member.
    std::optional<gfp::Vec> coordinates(GroupElement x) const;

    std::vector<GroupElement> const& basis() const noexcept {
      return basis_;
    }
    std::size_t log_order() const noexcept {
      return basis_.size();
    }
    PcHandle const& presentation() const noexcept {
      return pcp_;
    }

    bool is_normal() const;
    // All basis elements central and of order p.
    bool is_central_elementary() const;
    bool is_subgroup_of(SubgroupBasis const& other) const;
    bool operator==(SubgroupBasis const& other) const;

    std::vector<GroupElement> elements(std::uint64_t max_order = default_max_order) const;

   private:
    void close(std::vector<GroupElement> queue, bool normal);

    PcHandle                  pcp_;
    std::vector<GroupElement> basis_;
    std::vector<std::size_t>  lead_;          // lead_[i] = leading index of basis_[i]
    std::vector<int>          by_lead_;       // generator index -> basis position or -1
  };

  // Leading (first nonzero) exponent index, or size() for the identity.
  std::size_t leading_index(Exponents const& e) noexcept;

  // lambda_n(G) read off the weights: generators of weight >= n.
  SubgroupBasis weight_subgroup(PcHandle const& pcp, unsigned n);

  // Lower central series term gamma_k by iterated [gamma_{k-1}, G] closure.
  SubgroupBasis lower_central_term(PcHandle const& pcp, unsigned k);

  // [A, B] for normal subgroups A, B.
  SubgroupBasis commutator_subgroup(SubgroupBasis const& a, SubgroupBasis const& b);

}  // namespace pcforge
