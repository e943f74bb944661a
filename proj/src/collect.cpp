#include "pcforge/collect.hpp"

#include <vector>

namespace pcforge {

  void LeftCollector::run(PcPresentation const& pcp,
                          Exponents&            x,
                          std::vector<Pending>& stack) const {
    std::uint32_t const p     = pcp.prime();
    std::size_t const   m     = pcp.size();
    std::uint64_t       steps = 0;
    std::vector<Pending> suffix;
    std::vector<Pending> forward;

    auto push_word_reversed = [&](SparseWord const& w) {
      for (auto it = w.rbegin(); it != w.rend(); ++it) {
        stack.push_back({it->gen, static_cast<std::uint32_t>(it->exp)});
      }
    };
    auto take_suffix = [&](std::size_t g) {
      suffix.clear();
      for (std::size_t l = g + 1; l < m; ++l) {
        if (x[l] != 0) {
          suffix.push_back({static_cast<std::uint32_t>(l), x[l]});
          x[l] = 0;
        }
      }
    };

    while (!stack.empty()) {
      if (++steps > budget_) {
        throw CollectionError("collection exceeded its step budget of "
                              + std::to_string(budget_)
                              + "; the presentation is probably inconsistent");
      }
      Pending top = stack.back();
      stack.pop_back();
      std::size_t const g = top.gen;
      if (top.count == 0) {
        continue;
      }

      bool conflict = false;
      for (auto l : pcp.noncommuting_above(g)) {
        if (x[l] != 0) {
          conflict = true;
          break;
        }
      }

      if (!conflict) {
        // x = A g^a B with B commuting with g
        std::uint64_t a = std::uint64_t(x[g]) + top.count;
        x[g]            = static_cast<std::uint32_t>(a % p);
        std::uint64_t q = a / p;
        if (q > 0 && !pcp.power_sparse(g).empty()) {
          take_suffix(g);
          for (auto it = suffix.rbegin(); it != suffix.rend(); ++it) {
            stack.push_back(*it);
          }
          for (std::uint64_t r = 0; r < q; ++r) {
            push_word_reversed(pcp.power_sparse(g));
          }
        }
        continue;
      }

      // x = A g^a B; x g = A g^(a+1) B^g and B^g = prod (g_l [g_l,g])^(e_l)
      take_suffix(g);
      if (top.count > 1) {
        stack.push_back({top.gen, top.count - 1});
      }
      forward.clear();
      for (auto const& s : suffix) {
        auto const& c = pcp.commutator_sparse(s.gen, g);
        if (c.empty()) {
          forward.push_back(s);
          continue;
        }
        for (std::uint32_t r = 0; r < s.count; ++r) {
          forward.push_back({s.gen, 1});
          for (auto const& l : c) {
            forward.push_back({l.gen, static_cast<std::uint32_t>(l.exp)});
          }
        }
      }
      for (auto it = forward.rbegin(); it != forward.rend(); ++it) {
        stack.push_back(*it);
      }
      std::uint32_t a = x[g] + 1;
      if (a == p) {
        x[g] = 0;
        push_word_reversed(pcp.power_sparse(g));
      } else {
        x[g] = a;
      }
    }
  }

  void LeftCollector::multiply_generator(PcPresentation const& pcp,
                                         Exponents&            x,
                                         std::size_t           gen,
                                         std::uint32_t         count) const {
    std::vector<Pending> stack;
    stack.push_back({static_cast<std::uint32_t>(gen), count});
    run(pcp, x, stack);
  }

  void LeftCollector::multiply(PcPresentation const& pcp, Exponents& x, Exponents const& y) const {
    std::vector<Pending> stack;
    for (std::size_t k = y.size(); k-- > 0;) {
      if (y[k] != 0) {
        stack.push_back({static_cast<std::uint32_t>(k), y[k]});
      }
    }
    run(pcp, x, stack);
  }

  Collector const& default_collector() {
    static LeftCollector const collector;
    return collector;
  }

  Exponents inverse_exponents(PcPresentation const& pcp, Exponents const& x, Collector const& c) {
    std::size_t const m = pcp.size();
    Exponents         z(x);
    Exponents         y(m, 0);
    for (std::size_t k = 0; k < m; ++k) {
      if (z[k] == 0) {
        continue;
      }
      std::uint32_t e = pcp.prime() - z[k];
      c.multiply_generator(pcp, z, k, e);
      c.multiply_generator(pcp, y, k, e);
    }
    return y;
  }

  Exponents collect_word(PcPresentation const& pcp, Word const& word, Collector const& c) {
    std::size_t const m = pcp.size();
    Exponents         x(m, 0);
    for (auto const& l : word) {
      if (l.gen >= m) {
        throw std::out_of_range("collect: generator index out of range");
      }
      if (l.exp >= 0) {
        c.multiply_generator(pcp, x, l.gen, static_cast<std::uint32_t>(l.exp));
        continue;
      }
      Exponents unit(m, 0);
      unit[l.gen]   = 1;
      Exponents inv = inverse_exponents(pcp, unit, c);
      for (std::int64_t r = 0; r < -std::int64_t(l.exp); ++r) {
        c.multiply(pcp, x, inv);
      }
    }
    return x;
  }

}  // namespace pcforge
