#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcforge/element.hpp"
#include "pcforge/gfp.hpp"
#include "pcforge/subgroup.hpp"

namespace pcforge {

  // Two-generator finitely presented group; letters use gen 0 = x, 1 = y.
  struct FpPresentation {
    std::vector<Word> relators;

    static FpPresentation free_group();
    // C_p * C_p = <x, y | x^p, y^p>
    static FpPresentation free_product(std::uint32_t p);
  };

  class QuotientError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A consistent presentation together with the images of x and y.
  struct Stage {
    unsigned     n = 0;  // the presented group is F / lambda_n(F)
    PcHandle     pcp;
    GroupElement x;
    GroupElement y;
  };

  // Cover of a consistent presentation: one central tail of weight
  // class+1 appended to every relation that is not a definition.
  struct Cover {
    PcPresentation           pcp;
    std::size_t              first_tail = 0;  // tails are first_tail..size()-1
  };
  Cover p_cover(PcPresentation const& pcp);

  // Linear relations among the tails forced by the Vaughan-Lee test
  // words, as rows over GF(p) indexed by tail.
  std::vector<gfp::Vec> consistency_relations(Cover const& cover);

  // Quotient of a presentation by a subspace of a central elementary
  // abelian layer g_first..g_{m-1}: rows are vectors over that layer.
  // Eliminates pivot generators (lowest index first); the survivors keep
  // their relative order and definitions.
  struct LayerQuotient {
    PcPresentation pcp;
    gfp::Echelon   relations;
    std::size_t    first = 0;
    std::vector<std::size_t> survivors;  // old indices of kept layer generators

    // Image of an element of the old presentation.
    Exponents map(Exponents const& old) const;
  };
  LayerQuotient quotient_by_central_layer(PcPresentation const&        pcp,
                                          std::size_t                  first,
                                          std::vector<gfp::Vec> const& rows);

  // Cover followed by consistency enforcement.
  LayerQuotient enforce_consistency(Cover const& cover);

  // Evaluate the relators at (x, y) in a consistent cover and factor out
  // their images, which must lie in the tail layer.
  LayerQuotient impose_relations(PcPresentation const&  cover,
                                 std::size_t            first_tail,
                                 GroupElement const&    x,
                                 GroupElement const&    y,
                                 FpPresentation const&  fp);

  // Value of a word in x, y at the given elements.
  GroupElement evaluate(Word const& w, GroupElement const& x, GroupElement const& y);

  struct QuotientOptions {
    std::size_t max_generators = 64;
  };

  // Stage n = 2, ..., up to n (or until the series stops growing).
  struct QuotientTower {
    std::uint32_t      p = 2;
    std::vector<Stage> stages;
    bool               stabilized = false;

    Stage const& top() const {
      return stages.back();
    }
  };

  QuotientTower p_quotient_tower(FpPresentation const& fp,
                                 std::uint32_t         p,
                                 unsigned              n,
                                 QuotientOptions const& opt = {});
  Stage p_quotient(FpPresentation const& fp, std::uint32_t p, unsigned n,
                   QuotientOptions const& opt = {});

  // Next stage from a consistent one.
  Stage next_stage(Stage const& s, FpPresentation const& fp, QuotientOptions const& opt = {});

  std::string format_tower(QuotientTower const& t);
  QuotientTower parse_tower(std::string_view text);

  class HomomorphismError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Map between PC groups given by images of the defining generators of
  // the source, extended along definitions and checked on every relation.
  class Homomorphism {
   public:
    Homomorphism(PcHandle src, PcHandle dst, std::vector<GroupElement> const& defining_images);

    GroupElement operator()(GroupElement const& x) const;
    GroupElement image_of_generator(std::size_t i) const {
      return images_[i];
    }
    PcHandle const& source() const noexcept {
      return src_;
    }
    PcHandle const& target() const noexcept {
      return dst_;
    }
    bool is_surjective() const noexcept {
      return surjective_;
    }

   private:
    PcHandle                  src_;
    PcHandle                  dst_;
    std::vector<GroupElement> images_;
    bool                      surjective_ = false;
  };

  // Homomorphism determined by where x and y of a stage go.
  Homomorphism stage_homomorphism(Stage const& s, PcHandle dst, GroupElement const& x_image,
                                  GroupElement const& y_image);

  // Ker(h) meet lambda_{n-1}(src), where src has class n-1.
  SubgroupBasis kernel_meet_layer(Homomorphism const& h, unsigned n);

  // Truncation of stage n+1 onto stage n by dropping weight-n generators.
  Homomorphism truncation(Stage const& upper, Stage const& lower);

}  // namespace pcforge
