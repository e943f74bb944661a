#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "pcforge/pcp.hpp"

namespace pcforge {

  // Raised when collection exceeds its step budget, which only happens
  // for malformed presentations.
  class CollectionError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Rewrites products into normal form. Implementations must be
  // stateless apart from configuration so they can be shared.
  class Collector {
   public:
    virtual ~Collector() = default;

    // x <- x * g_gen^count, count >= 0
    virtual void multiply_generator(PcPresentation const& pcp,
                                    Exponents&            x,
                                    std::size_t           gen,
                                    std::uint32_t         count) const
        = 0;

    // x <- x * y, with y already in normal form
    virtual void multiply(PcPresentation const& pcp, Exponents& x, Exponents const& y) const = 0;
  };

  // Collection from the left with an explicit stack of pending letters.
  class LeftCollector final : public Collector {
   public:
    explicit LeftCollector(std::uint64_t budget = 200'000'000) : budget_(budget) {}

    void multiply_generator(PcPresentation const& pcp,
                            Exponents&            x,
                            std::size_t           gen,
                            std::uint32_t         count) const override;
    void multiply(PcPresentation const& pcp, Exponents& x, Exponents const& y) const override;

    std::uint64_t budget() const noexcept {
      return budget_;
    }

   private:
    struct Pending {
      std::uint32_t gen;
      std::uint32_t count;
    };
    void run(PcPresentation const& pcp, Exponents& x, std::vector<Pending>& stack) const;

    std::uint64_t budget_;
  };

  Collector const& default_collector();

  // Normal form of x^-1, built by right-multiplying with positive powers only.
  Exponents inverse_exponents(PcPresentation const& pcp,
                              Exponents const&      x,
                              Collector const&      c = default_collector());

  // Normal form of an arbitrary word in the PC generators.
  Exponents collect_word(PcPresentation const& pcp,
                         Word const&           word,
                         Collector const&      c = default_collector());

}  // namespace pcforge
