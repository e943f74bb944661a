#pragma once

// Independent reference groups for tests: concrete matrix groups closed
// under multiplication by brute force.

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "pcforge/finite_group.hpp"

namespace oracles {

  using pcforge::Index;

  // Subgroup of GL_3(Z/q) generated by the given matrices.
  class MatrixGroup {
   public:
    using Mat = std::array<std::uint32_t, 9>;

    MatrixGroup(std::uint32_t q, std::vector<Mat> const& gens) : q_(q) {
      Mat id{1, 0, 0, 0, 1, 0, 0, 0, 1};
      add(id);
      for (auto const& g : gens) {
        gens_.push_back(add(g));
      }
      for (std::size_t i = 0; i < elems_.size(); ++i) {
        for (auto const& g : gens) {
          add(product(elems_[i], g));
        }
      }
    }

    std::size_t order() const {
      return elems_.size();
    }
    Index mul(Index a, Index b) const {
      return index_.at(product(elems_[a], elems_[b]));
    }
    Index inv(Index a) const {
      Index x = a;
      Index prev = 0;
      while (x != 0) {
        prev = x;
        x    = mul(x, a);
      }
      return a == 0 ? 0 : prev;
    }
    std::vector<Index> generators() const {
      return gens_;
    }

    static Mat unitriangular(std::uint32_t a12, std::uint32_t a13, std::uint32_t a23) {
      return {1, a12, a13, 0, 1, a23, 0, 0, 1};
    }

   private:
    Mat product(Mat const& a, Mat const& b) const {
      Mat c{};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          std::uint64_t s = 0;
          for (int k = 0; k < 3; ++k) {
            s += std::uint64_t(a[3 * i + k]) * b[3 * k + j];
          }
          c[3 * i + j] = static_cast<std::uint32_t>(s % q_);
        }
      }
      return c;
    }
    Index add(Mat const& m) {
      auto it = index_.find(m);
      if (it != index_.end()) {
        return it->second;
      }
      auto id = static_cast<Index>(elems_.size());
      elems_.push_back(m);
      index_.emplace(m, id);
      return id;
    }

    std::uint32_t         q_;
    std::vector<Mat>      elems_;
    std::map<Mat, Index>  index_;
    std::vector<Index>    gens_;
  };

  static_assert(pcforge::FiniteGroup<MatrixGroup>);

  // |G / lambda_n(G)| by element-level closure.
  template <pcforge::FiniteGroup G>
  std::size_t lambda_quotient_order(G const& g, std::uint32_t p, unsigned n) {
    auto s = pcforge::lambda_series(g, p);
    if (n - 1 >= s.size()) {
      return g.order();
    }
    return g.order() / s[n - 1].size();
  }

}  // namespace oracles
