#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcforge/finite_group.hpp"
#include "pcforge/pcgroup.hpp"

namespace pcforge {

  // Sigma(x, y) recorded by its minimal (prime order) subgroups: two cyclic
  // subgroups meet nontrivially iff they share one. Subgroups are named by
  // their least non-identity element.
  struct SigmaSet {
    Index              x = 0;
    Index              y = 0;
    std::vector<Index> socle_orbit;  // sorted
  };

  template <FiniteGroup G>
  std::vector<Index> minimal_subgroups_of_cyclic(G const& g, Index z) {
    std::vector<Index> out;
    std::uint64_t      o = element_order(g, z);
    std::uint64_t      r = o;
    for (std::uint64_t q = 2; q <= r; ++q) {
      if (r % q != 0) {
        continue;
      }
      while (r % q == 0) {
        r /= q;
      }
      out.push_back(canonical_cyclic(g, power(g, z, static_cast<std::int64_t>(o / q))));
    }
    return out;
  }

  template <FiniteGroup G>
  SigmaSet sigma(G const& g, Index x, Index y) {
    SigmaSet s{x, y, {}};
    std::set<Index> seen;
    std::vector<Index> todo;
    for (Index z : {x, y, g.mul(x, y)}) {
      for (Index m : minimal_subgroups_of_cyclic(g, z)) {
        if (seen.insert(m).second) {
          todo.push_back(m);
        }
      }
    }
    auto const outer = g.generators();
    for (std::size_t i = 0; i < todo.size(); ++i) {
      for (Index s2 : outer) {
        Index c = canonical_cyclic(g, conj(g, todo[i], s2));
        if (seen.insert(c).second) {
          todo.push_back(c);
        }
      }
    }
    s.socle_orbit.assign(seen.begin(), seen.end());
    return s;
  }

  inline bool sigma_disjoint(SigmaSet const& a, SigmaSet const& b) {
    std::vector<Index> common;
    std::set_intersection(a.socle_orbit.begin(), a.socle_orbit.end(), b.socle_orbit.begin(),
                          b.socle_orbit.end(), std::back_inserter(common));
    return common.empty();
  }

  // The full union of conjugates of <x>, <y>, <xy> as a membership vector.
  template <FiniteGroup G>
  std::vector<bool> sigma_elements(G const& g, Index x, Index y) {
    std::vector<bool> in(g.order(), false);
    Index const       xy = g.mul(x, y);
    for (Index h = 0; h < g.order(); ++h) {
      for (Index z : {x, y, xy}) {
        Index c = conj(g, z, h);
        for (Index w = c;; w = g.mul(w, c)) {
          in[w] = true;
          if (w == 0) {
            break;
          }
        }
      }
    }
    return in;
  }

  template <FiniteGroup G>
  bool sigma_elements_meet_trivially(G const& g, std::vector<bool> const& a,
                                     std::vector<bool> const& b) {
    for (Index z = 1; z < g.order(); ++z) {
      if (a[z] && b[z]) {
        return false;
      }
    }
    return true;
  }

  // Generation without Frattini information: closure of {x, y}.
  template <FiniteGroup G>
  bool generates_by_closure(G const& g, Index x, Index y) {
    return closure(g, {x, y}).size() == g.order();
  }

  struct SearchStats {
    std::size_t generating_pairs    = 0;  // with x a class representative
    std::size_t classes             = 0;
    std::size_t class_pairs         = 0;
    std::size_t sharing_pairs       = 0;  // share a maximal subgroup
    std::size_t refuted_by_obstruction = 0;
    bool        obstruction_confirmed  = true;  // refuted pairs really overlap
    std::size_t full_checks         = 0;
  };

  struct SearchResult {
    bool                              exhaustive = false;
    bool                              found      = false;
    std::array<Index, 4>              witness{};  // x1, y1, x2, y2
    SearchStats                       stats;
    std::string                       note;
  };

  namespace detail {

    using Mask = std::vector<std::uint64_t>;

    inline bool masks_meet(Mask const& a, Mask const& b) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] & b[i]) {
          return true;
        }
      }
      return false;
    }

    inline void mask_or(Mask& a, Mask const& b) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] |= b[i];
      }
    }

  }  // namespace detail

  // Frattini data for a p-group: cosets of Phi and the lines (maximal
  // subgroups when d = 2) containing each element.
  struct FrattiniData {
    std::uint32_t              p = 0;
    std::size_t                d = 0;
    std::vector<bool>          in_phi;
    std::vector<std::uint32_t> line;  // line id for elements outside Phi
    std::size_t                nlines = 0;
  };

  template <FiniteGroup G>
  FrattiniData frattini_data(G const& g, std::uint32_t p) {
    FrattiniData f;
    f.p         = p;
    auto series = lambda_series(g, p);
    Subgroup const phi = series.size() > 1 ? series[1] : trivial_subgroup(g);
    f.in_phi           = phi.member;
    for (std::size_t q = g.order() / phi.size(); q > 1; q /= p) {
      ++f.d;
    }
    std::uint32_t const        none = UINT32_MAX;
    std::vector<std::uint32_t> coset(g.order(), none);
    std::uint32_t              ncos = 0;
    for (Index x = 0; x < g.order(); ++x) {
      if (coset[x] != none) {
        continue;
      }
      for (Index h : phi.elements) {
        coset[g.mul(x, h)] = ncos;
      }
      ++ncos;
    }
    // line of x: least coset id among x^k, k = 1..p-1
    std::map<std::uint32_t, std::uint32_t> line_id;
    f.line.assign(g.order(), none);
    for (Index x = 0; x < g.order(); ++x) {
      if (f.in_phi[x]) {
        continue;
      }
      std::uint32_t best = coset[x];
      Index         w    = x;
      for (std::uint32_t k = 2; k < p; ++k) {
        w    = g.mul(w, x);
        best = std::min(best, coset[w]);
      }
      auto it = line_id.try_emplace(best, static_cast<std::uint32_t>(line_id.size())).first;
      f.line[x] = it->second;
    }
    f.nlines = line_id.size();
    return f;
  }

  // Existence of a Beauville structure by exhaustion over conjugacy
  // classes of first elements. For 2-generator p-groups pairs are grouped
  // by their triple of maximal subgroups; class pairs sharing a maximal
  // subgroup M all of whose elements outside Phi have the same socle are
  // refuted by that fact alone.
  template <FiniteGroup G>
  SearchResult exhaustive_beauville_search(G const& g, std::optional<std::uint32_t> p,
                                           std::uint64_t max_order) {
    SearchResult res;
    if (g.order() > max_order) {
      res.note = "group order exceeds the search bound";
      return res;
    }
    std::size_t const N = g.order();

    // conjugacy classes of minimal subgroups
    std::map<Index, std::uint32_t> min_class;
    std::uint32_t                  next_id = 0;
    std::vector<std::vector<Index>> mins_of(N);
    for (Index z = 0; z < N; ++z) {
      mins_of[z] = minimal_subgroups_of_cyclic(g, z);
      for (Index m : mins_of[z]) {
        if (min_class.count(m) != 0) {
          continue;
        }
        auto id = next_id++;
        for (Index c : conjugacy_class(g, m)) {
          min_class[canonical_cyclic(g, c)] = id;
        }
      }
    }
    std::size_t const nclasses = next_id;
    std::size_t const words = (nclasses + 63) / 64 + 1;
    std::vector<detail::Mask> mask(N, detail::Mask(words, 0));
    for (Index z = 0; z < N; ++z) {
      for (Index m : mins_of[z]) {
        auto c = min_class[m];
        mask[z][c / 64] |= std::uint64_t(1) << (c % 64);
      }
    }

    std::optional<FrattiniData> fr;
    if (p) {
      fr = frattini_data(g, *p);
      if (fr->d != 2) {
        if (fr->d > 2) {
          res.exhaustive = true;
          res.note       = "not 2-generated";
          return res;
        }
        fr.reset();
      }
    }
    // rigid[M]: all elements of M outside Phi share their socle
    std::vector<bool> rigid;
    if (fr) {
      rigid.assign(fr->nlines, true);
      std::vector<Index> socle_of_line(fr->nlines, 0);
      std::vector<bool>  seen(fr->nlines, false);
      for (Index z = 0; z < N; ++z) {
        if (fr->in_phi[z]) {
          continue;
        }
        auto l = fr->line[z];
        Index s = mins_of[z].front();
        if (!seen[l]) {
          seen[l]          = true;
          socle_of_line[l] = s;
        } else if (socle_of_line[l] != s) {
          rigid[l] = false;
        }
      }
    }

    auto const classes = conjugacy_classes(g);
    using Key          = std::array<std::uint32_t, 3>;
    std::map<Key, std::map<detail::Mask, std::pair<Index, Index>>> by_key;
    for (Index x : classes.reps) {
      for (Index y = 0; y < N; ++y) {
        Index const xy = g.mul(x, y);
        Key         key{0, 0, 0};
        if (fr) {
          if (fr->in_phi[x] || fr->in_phi[y] || fr->line[x] == fr->line[y]) {
            continue;
          }
          key = {fr->line[x], fr->line[y], fr->line[xy]};
          std::sort(key.begin(), key.end());
        } else if (!generates_by_closure(g, x, y)) {
          continue;
        }
        ++res.stats.generating_pairs;
        detail::Mask m = mask[x];
        detail::mask_or(m, mask[y]);
        detail::mask_or(m, mask[xy]);
        by_key[key].try_emplace(m, x, y);
      }
    }
    res.stats.classes = by_key.size();
    res.exhaustive    = true;

    std::vector<Key> keys;
    for (auto const& kv : by_key) {
      keys.push_back(kv.first);
    }
    for (std::size_t a = 0; a < keys.size(); ++a) {
      for (std::size_t b = a; b < keys.size(); ++b) {
        ++res.stats.class_pairs;
        auto const& A = by_key[keys[a]];
        auto const& B = by_key[keys[b]];
        bool        obstructed = false;
        if (fr) {
          bool shares = false;
          for (auto la : keys[a]) {
            for (auto lb : keys[b]) {
              if (la == lb) {
                shares     = true;
                obstructed = obstructed || rigid[la];
              }
            }
          }
          if (shares) {
            ++res.stats.sharing_pairs;
          }
        }
        if (obstructed) {
          ++res.stats.refuted_by_obstruction;
          for (auto const& ma : A) {
            for (auto const& mb : B) {
              if (!detail::masks_meet(ma.first, mb.first)) {
                res.stats.obstruction_confirmed = false;
              }
            }
          }
          continue;
        }
        ++res.stats.full_checks;
        for (auto const& ma : A) {
          for (auto const& mb : B) {
            if (!detail::masks_meet(ma.first, mb.first) && !res.found) {
              res.found   = true;
              res.witness = {ma.second.first, ma.second.second, mb.second.first,
                             mb.second.second};
            }
          }
        }
      }
    }
    return res;
  }

}  // namespace pcforge
