#pragma once

// Power-commutator presentations of finite p-groups.
//
// Generators g_1..g_m (0-based internally) all have relative order p.
// Relations:
//   g_i^p     = normal word in g_{i+1}..g_m
//   [g_j,g_i] = normal word in g_{j+1}..g_m      (j > i)
// with [a,b] = a^-1 b^-1 a b and a^b = b^-1 a b throughout.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace pcforge {

  using Exponents = std::vector<std::uint32_t>;

  // Signed power of a generator, 0-based.
  struct Letter {
    std::uint32_t gen;
    std::int32_t  exp;

    bool operator==(Letter const&) const = default;
  };

  using Word = std::vector<Letter>;

  // Sparse view of a normal word: (generator, exponent) with exponent in 1..p-1.
  using SparseWord = std::vector<Letter>;

  struct Definition {
    enum class Kind : std::uint8_t { none, power, commutator };
    Kind        kind = Kind::none;
    std::size_t a    = 0;  // power: g_a^p; commutator: [g_a, g_b] with a > b
    std::size_t b    = 0;

    bool operator==(Definition const&) const = default;
  };

  class PcPresentation {
   public:
    PcPresentation() = default;
    // Elementary abelian presentation on `ngens` generators of weight 1.
    PcPresentation(std::uint32_t p, std::size_t ngens);

    std::uint32_t prime() const noexcept {
      return p_;
    }
    std::size_t size() const noexcept {
      return m_;
    }
    unsigned weight(std::size_t i) const {
      return weight_.at(i);
    }
    std::vector<unsigned> const& weights() const noexcept {
      return weight_;
    }
    // Largest weight present; 0 for the trivial presentation.
    unsigned pc_class() const noexcept;

    Exponents const& power(std::size_t i) const {
      return power_.at(i);
    }
    Exponents const& commutator(std::size_t j, std::size_t i) const;

    SparseWord const& power_sparse(std::size_t i) const {
      return power_sparse_[i];
    }
    SparseWord const& commutator_sparse(std::size_t j, std::size_t i) const {
      return comm_sparse_[j * m_ + i];
    }
    // Generators l > i whose commutator with g_i is nontrivial.
    std::vector<std::uint32_t> const& noncommuting_above(std::size_t i) const {
      return noncommuting_[i];
    }

    Definition const& definition(std::size_t i) const {
      return definition_.at(i);
    }
    // Generators without a definition: images for these determine a homomorphism.
    std::vector<std::size_t> defining_generators() const;

    void set_weight(std::size_t i, unsigned w);
    void set_power(std::size_t i, Exponents rhs);
    void set_commutator(std::size_t j, std::size_t i, Exponents rhs);
    void set_definition(std::size_t i, Definition d);

    // Validate ordering constraints and rebuild the sparse caches. Any
    // generator of weight > 1 without a definition gets one derived from
    // a relation whose right-hand side ends in exactly that generator.
    void finalize();

    // Weighted discipline: powers land in strictly higher weight,
    // [g_j,g_i] in weight >= w(i) + w(j).
    bool is_weighted() const;

    // |G| as a power of p.
    std::size_t log_order() const noexcept {
      return m_;
    }

    bool operator==(PcPresentation const& other) const;

    std::string to_text() const;
    static PcPresentation parse(std::string_view text);

   private:
    std::uint32_t             p_ = 2;
    std::size_t               m_ = 0;
    std::vector<unsigned>     weight_;
    std::vector<Exponents>    power_;
    std::vector<Exponents>    comm_;  // flat, index j*m + i, j > i
    std::vector<Definition>   definition_;
    std::vector<SparseWord>   power_sparse_;
    std::vector<SparseWord>   comm_sparse_;
    std::vector<std::vector<std::uint32_t>> noncommuting_;
  };

  using PcHandle = std::shared_ptr<PcPresentation const>;

  SparseWord to_sparse(Exponents const& e);
  Exponents  from_sparse(SparseWord const& w, std::size_t m);

  // `g3^1*g5^2` (1-based); empty word prints as `1`.
  std::string format_word(Exponents const& e);
  Exponents   parse_normal_word(std::string_view text, std::size_t m, std::uint32_t p);

  // Reads a sequence of stages in the tower format: each stage is a
  // presentation block followed by optional `img x = ...`, `img y = ...`.
  struct StageText {
    PcPresentation pcp;
    Exponents      img_x;
    Exponents      img_y;
    bool           has_images = false;
  };
  std::vector<StageText> parse_stages(std::string_view text);
  std::string            format_stage(StageText const& stage);

}  // namespace pcforge
