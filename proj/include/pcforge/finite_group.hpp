#pragma once

// Generic algorithms over finite groups whose elements are numbered
// 0..order()-1, with 0 the identity.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace pcforge {

  using Index = std::uint32_t;

  template <class G>
  concept FiniteGroup = requires(G const& g, Index a, Index b) {
    { g.order() } -> std::convertible_to<std::size_t>;
    { g.mul(a, b) } -> std::convertible_to<Index>;
    { g.inv(a) } -> std::convertible_to<Index>;
    { g.generators() } -> std::convertible_to<std::vector<Index>>;
  };

  struct Subgroup {
    std::vector<Index> elements;  // closure order, identity first
    std::vector<bool>  member;
    std::vector<Index> gens;

    std::size_t size() const noexcept {
      return elements.size();
    }
    bool contains(Index x) const {
      return member[x];
    }
  };

  template <FiniteGroup G>
  Index power(G const& g, Index x, std::int64_t k) {
    if (k < 0) {
      x = g.inv(x);
      k = -k;
    }
    Index r = 0;
    while (k > 0) {
      if (k & 1) {
        r = g.mul(r, x);
      }
      k >>= 1;
      if (k > 0) {
        x = g.mul(x, x);
      }
    }
    return r;
  }

  template <FiniteGroup G>
  Index conj(G const& g, Index x, Index by) {
    return g.mul(g.mul(g.inv(by), x), by);
  }

  template <FiniteGroup G>
  Index comm(G const& g, Index x, Index y) {
    return g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
  }

  template <FiniteGroup G>
  std::uint64_t element_order(G const& g, Index x) {
    std::uint64_t o = 1;
    for (Index y = x; y != 0; y = g.mul(y, x)) {
      ++o;
    }
    return o;
  }

  // Add t to a subgroup closed under its current generators.
  template <FiniteGroup G>
  void extend(G const& g, Subgroup& h, Index t) {
    if (h.member[t]) {
      return;
    }
    h.gens.push_back(t);
    std::size_t const old = h.elements.size();
    for (std::size_t i = 0; i < h.elements.size(); ++i) {
      auto apply = [&](Index s) {
        Index y = g.mul(h.elements[i], s);
        if (!h.member[y]) {
          h.member[y] = true;
          h.elements.push_back(y);
        }
      };
      if (i < old) {
        apply(t);
      } else {
        for (Index s : h.gens) {
          apply(s);
        }
      }
    }
  }

  template <FiniteGroup G>
  Subgroup trivial_subgroup(G const& g) {
    Subgroup h;
    h.member.assign(g.order(), false);
    h.member[0] = true;
    h.elements  = {0};
    return h;
  }

  template <FiniteGroup G>
  Subgroup closure(G const& g, std::vector<Index> const& gens) {
    Subgroup h = trivial_subgroup(g);
    for (Index t : gens) {
      extend(g, h, t);
    }
    return h;
  }

  template <FiniteGroup G>
  Subgroup whole_group(G const& g) {
    return closure(g, g.generators());
  }

  template <FiniteGroup G>
  Subgroup normal_closure(G const& g, std::vector<Index> const& gens) {
    Subgroup    h     = closure(g, gens);
    auto const  outer = g.generators();
    for (std::size_t i = 0; i < h.gens.size(); ++i) {
      for (Index s : outer) {
        Index c = conj(g, h.gens[i], s);
        if (!h.member[c]) {
          extend(g, h, c);
        }
      }
    }
    return h;
  }

  template <FiniteGroup G>
  bool is_normal(G const& g, Subgroup const& h) {
    for (Index x : h.gens) {
      for (Index s : g.generators()) {
        if (!h.member[conj(g, x, s)]) {
          return false;
        }
      }
    }
    return true;
  }

  // [A, B] for normal subgroups A, B
  template <FiniteGroup G>
  Subgroup commutator_subgroup(G const& g, Subgroup const& a, Subgroup const& b) {
    std::vector<Index> gens;
    for (Index x : a.gens) {
      for (Index y : b.gens) {
        gens.push_back(comm(g, x, y));
      }
    }
    return normal_closure(g, gens);
  }

  // gamma_1 = G, ..., ending with the first trivial (or repeated) term.
  template <FiniteGroup G>
  std::vector<Subgroup> lower_central_series(G const& g) {
    std::vector<Subgroup> s{whole_group(g)};
    while (s.back().size() > 1) {
      Subgroup next = commutator_subgroup(g, s.back(), s.front());
      if (next.size() == s.back().size()) {
        break;
      }
      s.push_back(std::move(next));
    }
    return s;
  }

  // lambda_1 = G, lambda_{i+1} = [lambda_i, G] lambda_i^p, ending with the
  // first trivial (or repeated) term.
  template <FiniteGroup G>
  std::vector<Subgroup> lambda_series(G const& g, std::uint32_t p) {
    std::vector<Subgroup> s{whole_group(g)};
    auto const            outer = g.generators();
    while (s.back().size() > 1) {
      std::vector<Index> gens;
      for (Index x : s.back().gens) {
        gens.push_back(power(g, x, p));
        for (Index y : outer) {
          gens.push_back(comm(g, x, y));
        }
      }
      Subgroup next = normal_closure(g, gens);
      if (next.size() == s.back().size()) {
        break;
      }
      s.push_back(std::move(next));
    }
    return s;
  }

  // Subgroup generated by all p-th powers of elements of h.
  template <FiniteGroup G>
  Subgroup power_subgroup(G const& g, Subgroup const& h, std::uint32_t p) {
    Subgroup out = trivial_subgroup(g);
    for (Index x : h.elements) {
      extend(g, out, power(g, x, p));
    }
    return out;
  }

  // Subgroup generated by the elements of order dividing q.
  template <FiniteGroup G>
  Subgroup omega(G const& g, std::uint64_t q) {
    Subgroup out = trivial_subgroup(g);
    for (Index x = 0; x < g.order(); ++x) {
      if (q % element_order(g, x) == 0) {
        extend(g, out, x);
      }
    }
    return out;
  }

  template <FiniteGroup G>
  std::uint64_t exponent(G const& g, Subgroup const& h) {
    std::uint64_t e = 1;
    for (Index x : h.elements) {
      e = std::lcm(e, element_order(g, x));
    }
    return e;
  }

  template <FiniteGroup G>
  std::vector<Index> conjugacy_class(G const& g, Index x) {
    std::vector<Index> orbit{x};
    std::vector<bool>  seen(g.order(), false);
    seen[x]          = true;
    auto const outer = g.generators();
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (Index s : outer) {
        Index y = conj(g, orbit[i], s);
        if (!seen[y]) {
          seen[y] = true;
          orbit.push_back(y);
        }
      }
    }
    return orbit;
  }

  // class_of[x] = id of the conjugacy class of x; reps[id] = least element.
  struct ClassPartition {
    std::vector<std::uint32_t> class_of;
    std::vector<Index>         reps;
  };

  template <FiniteGroup G>
  ClassPartition conjugacy_classes(G const& g) {
    ClassPartition out;
    std::uint32_t const none = UINT32_MAX;
    out.class_of.assign(g.order(), none);
    for (Index x = 0; x < g.order(); ++x) {
      if (out.class_of[x] != none) {
        continue;
      }
      auto id = static_cast<std::uint32_t>(out.reps.size());
      out.reps.push_back(x);
      for (Index y : conjugacy_class(g, x)) {
        out.class_of[y] = id;
      }
    }
    return out;
  }

  template <FiniteGroup G>
  std::size_t centralizer_order(G const& g, Index x) {
    return g.order() / conjugacy_class(g, x).size();
  }

  // Order p^n with n >= 3 and some element whose centralizer has order p^2.
  template <FiniteGroup G>
  bool is_maximal_class(G const& g, std::uint32_t p) {
    std::size_t n = 0;
    for (std::size_t o = g.order(); o > 1; o /= p) {
      if (o % p != 0) {
        return false;
      }
      ++n;
    }
    if (n < 3) {
      return false;
    }
    for (Index x = 0; x < g.order(); ++x) {
      if (centralizer_order(g, x) == std::size_t(p) * p) {
        return true;
      }
    }
    return false;
  }

  // Least non-identity element of <x>; identifies <x> when x has prime order.
  template <FiniteGroup G>
  Index canonical_cyclic(G const& g, Index x) {
    Index best = x;
    for (Index y = g.mul(x, x); y != 0; y = g.mul(y, x)) {
      best = std::min(best, y);
    }
    return x == 0 ? 0 : best;
  }

}  // namespace pcforge
