#pragma once

// PC presentation of a concrete finite p-group, read off its
// lambda-series: each layer gets a basis of commutators [a, g] and
// powers a^p of the previous layer, so every generator has a definition.

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcforge/element.hpp"
#include "pcforge/finite_group.hpp"

namespace pcforge {

  struct PcModel {
    PcHandle               pcp;
    std::vector<Exponents> exps_of;   // by group index
    std::vector<Index>     chosen;    // group element playing g_i

    GroupElement element(Index a) const {
      return GroupElement(pcp, exps_of[a]);
    }
  };

  template <FiniteGroup G>
  PcModel pc_model(G const& g, std::uint32_t p) {
    auto const series = lambda_series(g, p);
    if (series.back().size() != 1) {
      throw std::invalid_argument("pc_model: group is not a finite p-group");
    }
    PcModel                 out;
    std::vector<unsigned>   weight;
    std::vector<Definition> defs;
    std::vector<std::size_t> layer_start;

    for (std::size_t layer = 0; layer + 1 < series.size(); ++layer) {
      Subgroup span = series[layer + 1];
      layer_start.push_back(out.chosen.size());
      auto try_add = [&](Index c, Definition d) {
        if (span.size() == series[layer].size() || span.contains(c)) {
          return;
        }
        extend(g, span, c);
        out.chosen.push_back(c);
        weight.push_back(static_cast<unsigned>(layer + 1));
        defs.push_back(d);
      };
      if (layer == 0) {
        for (Index c : g.generators()) {
          try_add(c, {});
        }
      } else {
        std::size_t const prev_lo = layer_start[layer - 1];
        std::size_t const prev_hi = layer_start[layer];
        std::size_t const top_hi  = layer_start.size() > 1 ? layer_start[1] : prev_hi;
        for (std::size_t j = prev_lo; j < prev_hi; ++j) {
          for (std::size_t i = 0; i < top_hi && i < j; ++i) {
            try_add(comm(g, out.chosen[j], out.chosen[i]),
                    {Definition::Kind::commutator, j, i});
          }
        }
        for (std::size_t j = prev_lo; j < prev_hi; ++j) {
          try_add(power(g, out.chosen[j], p), {Definition::Kind::power, j, 0});
        }
      }
      for (Index c : series[layer].elements) {
        try_add(c, {});
      }
    }

    std::size_t const m = out.chosen.size();
    std::size_t       n = 1;
    for (std::size_t i = 0; i < m; ++i) {
      n *= p;
    }
    if (n != g.order()) {
      throw std::logic_error("pc_model: layer bases do not account for the group order");
    }
    out.exps_of.assign(n, Exponents());
    std::vector<bool> hit(n, false);
    Exponents         e(m, 0);
    for (std::size_t r = 0; r < n; ++r) {
      Index x = 0;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::uint32_t k = 0; k < e[i]; ++k) {
          x = g.mul(x, out.chosen[i]);
        }
      }
      if (hit[x]) {
        throw std::logic_error("pc_model: normal forms are not unique");
      }
      hit[x]          = true;
      out.exps_of[x]  = e;
      for (std::size_t k = m; k-- > 0;) {
        if (++e[k] < p) {
          break;
        }
        e[k] = 0;
      }
    }

    PcPresentation pres(p, m);
    for (std::size_t i = 0; i < m; ++i) {
      pres.set_weight(i, weight[i]);
      pres.set_power(i, out.exps_of[power(g, out.chosen[i], p)]);
      for (std::size_t j = i + 1; j < m; ++j) {
        pres.set_commutator(j, i, out.exps_of[comm(g, out.chosen[j], out.chosen[i])]);
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      pres.set_definition(i, defs[i]);
    }
    pres.finalize();
    out.pcp = std::make_shared<PcPresentation const>(std::move(pres));
    return out;
  }

  // Right multiplication by each PC generator agrees on both sides, so the
  // correspondence is an isomorphism.
  template <FiniteGroup G>
  bool verify_pc_model(G const& g, PcModel const& model) {
    std::size_t const m = model.pcp->size();
    for (Index a = 0; a < g.order(); ++a) {
      for (std::size_t i = 0; i < m; ++i) {
        Exponents x = model.exps_of[a];
        default_collector().multiply_generator(*model.pcp, x, i, 1);
        if (x != model.exps_of[g.mul(a, model.chosen[i])]) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace pcforge
