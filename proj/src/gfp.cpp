#include "pcforge/gfp.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcforge::gfp {

  std::uint32_t inverse(std::uint32_t a, std::uint32_t p) {
    a %= p;
    if (a == 0) {
      throw std::domain_error("gfp::inverse: zero has no inverse");
    }
    // p is small; extended Euclid on signed 64-bit values
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) {
      t += p;
    }
    return static_cast<std::uint32_t>(t);
  }

  bool is_zero(Vec const& v) noexcept {
    return std::all_of(v.begin(), v.end(), [](std::uint32_t x) { return x == 0; });
  }

  Vec Echelon::reduce(Vec v) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::uint32_t c = v[pivots[r]];
      if (c == 0) {
        continue;
      }
      std::uint32_t f = p - c;
      for (std::size_t j = pivots[r]; j < ncols; ++j) {
        v[j] = (v[j] + f * rows[r][j]) % p;
      }
    }
    return v;
  }

  bool Echelon::contains(Vec const& v) const {
    return is_zero(reduce(v));
  }

  bool Echelon::insert(Vec v) {
    v = reduce(std::move(v));
    auto lead = std::find_if(v.begin(), v.end(), [](std::uint32_t x) { return x != 0; });
    if (lead == v.end()) {
      return false;
    }
    std::size_t   col = static_cast<std::size_t>(lead - v.begin());
    std::uint32_t s   = inverse(*lead, p);
    for (auto& x : v) {
      x = (x * s) % p;
    }
    // clear the new pivot column from the existing rows
    for (auto& row : rows) {
      std::uint32_t c = row[col];
      if (c != 0) {
        std::uint32_t f = p - c;
        for (std::size_t j = col; j < ncols; ++j) {
          row[j] = (row[j] + f * v[j]) % p;
        }
      }
    }
    auto pos = std::lower_bound(pivots.begin(), pivots.end(), col);
    auto idx = pos - pivots.begin();
    pivots.insert(pos, col);
    rows.insert(rows.begin() + idx, std::move(v));
    return true;
  }

  Echelon echelonize(std::vector<Vec> const& rows, std::size_t ncols, std::uint32_t p) {
    Echelon e;
    e.p     = p;
    e.ncols = ncols;
    for (auto const& r : rows) {
      if (r.size() != ncols) {
        throw std::invalid_argument("gfp::echelonize: row length mismatch");
      }
      Vec v(r);
      for (auto& x : v) {
        x %= p;
      }
      e.insert(std::move(v));
    }
    return e;
  }

  std::size_t rank(std::vector<Vec> const& rows, std::size_t ncols, std::uint32_t p) {
    return echelonize(rows, ncols, p).rank();
  }

  std::vector<Vec> left_kernel(std::vector<Vec> const& rows,
                               std::size_t             ncols,
                               std::uint32_t           p) {
    // Row-reduce [rows | I]; rows whose left part vanishes give the kernel.
    std::size_t      m = rows.size();
    std::vector<Vec> aug;
    aug.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      Vec v(ncols + m, 0);
      for (std::size_t j = 0; j < ncols; ++j) {
        v[j] = rows[i][j] % p;
      }
      v[ncols + i] = 1;
      aug.push_back(std::move(v));
    }
    Echelon          e = echelonize(aug, ncols + m, p);
    std::vector<Vec> kernel;
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
      if (e.pivots[r] >= ncols) {
        kernel.emplace_back(e.rows[r].begin() + static_cast<std::ptrdiff_t>(ncols),
                            e.rows[r].end());
      }
    }
    return kernel;
  }

}  // namespace pcforge::gfp
