#pragma once

// Dense linear algebra over the prime field GF(p).

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pcforge::gfp {

  using Vec = std::vector<std::uint32_t>;

  std::uint32_t inverse(std::uint32_t a, std::uint32_t p);

  // Reduced row echelon form. Pivots are chosen at the lowest available
  // column index and scaled to 1, so the result is unique for a given
  // row space.
  struct Echelon {
    std::uint32_t       p     = 2;
    std::size_t         ncols = 0;
    std::vector<Vec>    rows;
    std::vector<std::size_t> pivots;

    std::size_t rank() const noexcept {
      return rows.size();
    }
    // Reduce v modulo the row space; zero iff v lies in the span.
    Vec  reduce(Vec v) const;
    bool contains(Vec const& v) const;
    // Insert v; returns false if it was already in the span.
    bool insert(Vec v);
  };

  Echelon echelonize(std::vector<Vec> const& rows, std::size_t ncols, std::uint32_t p);

  std::size_t rank(std::vector<Vec> const& rows, std::size_t ncols, std::uint32_t p);

  // Basis of { a : sum_i a_i rows[i] = 0 }, the left kernel.
  std::vector<Vec> left_kernel(std::vector<Vec> const& rows,
                               std::size_t             ncols,
                               std::uint32_t           p);

  bool is_zero(Vec const& v) noexcept;

}  // namespace pcforge::gfp
