#include "pcforge/maxclass.hpp"

#include <algorithm>
#include <stdexcept>

#include "pcforge/pcgroup.hpp"

namespace pcforge {

  namespace {

    using Row = std::vector<std::int64_t>;
    using Mat = std::vector<Row>;

    Mat multiply(Mat const& a, Mat const& b) {
      std::size_t const k = a.size();
      Mat               c(k, Row(k, 0));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t l = 0; l < k; ++l) {
          if (a[i][l] == 0) {
            continue;
          }
          for (std::size_t j = 0; j < k; ++j) {
            c[i][j] += a[i][l] * b[l][j];
          }
        }
      }
      return c;
    }

    std::int64_t floor_div(std::int64_t a, std::int64_t b) {
      std::int64_t q = a / b;
      if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
      }
      return q;
    }

    // Row Hermite normal form of a nonsingular square matrix.
    Mat hermite(Mat m) {
      std::size_t const k = m.size();
      for (std::size_t c = 0; c < k; ++c) {
        // gcd-combine rows c..k-1 in column c into row c
        for (std::size_t r = c + 1; r < k; ++r) {
          while (m[r][c] != 0) {
            std::int64_t q = m[c][c] / m[r][c];
            for (std::size_t j = 0; j < k; ++j) {
              m[c][j] -= q * m[r][j];
            }
            std::swap(m[c], m[r]);
          }
        }
        if (m[c][c] == 0) {
          throw std::logic_error("hermite: singular matrix");
        }
        if (m[c][c] < 0) {
          for (auto& x : m[c]) {
            x = -x;
          }
        }
      }
      for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t r = 0; r < c; ++r) {
          std::int64_t q = floor_div(m[r][c], m[c][c]);
          for (std::size_t j = 0; j < k; ++j) {
            m[r][j] -= q * m[c][j];
          }
        }
      }
      return m;
    }

  }  // namespace

  MaxClassGroup::MaxClassGroup(std::uint32_t p, unsigned n) : p_(p), n_(n) {
    if (p < 3 || p % 2 == 0) {
      throw std::invalid_argument("maximal_class_group: p must be an odd prime");
    }
    for (std::uint32_t q = 3; q * q <= p; q += 2) {
      if (p % q == 0) {
        throw std::invalid_argument("maximal_class_group: p must be an odd prime");
      }
    }
    if (n < 3) {
      throw std::invalid_argument("maximal_class_group: n must be at least 3");
    }
    std::size_t const k = p - 1;
    Mat               t(k, Row(k, 0));
    for (std::size_t i = 0; i + 1 < k; ++i) {
      t[i][i + 1] = 1;
    }
    for (std::size_t j = 0; j < k; ++j) {
      t[k - 1][j] = -1;
    }
    Mat tm = t;
    for (std::size_t i = 0; i < k; ++i) {
      tm[i][i] -= 1;
    }
    Mat lat(k, Row(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
      lat[i][i] = 1;
    }
    for (unsigned e = 0; e + 1 < n; ++e) {
      lat = hermite(multiply(lat, tm));
    }
    hnf_ = lat;
    for (std::size_t i = 0; i < k; ++i) {
      asize_ *= static_cast<std::size_t>(hnf_[i][i]);
    }
    std::size_t expect = 1;
    for (unsigned e = 0; e + 1 < n; ++e) {
      expect *= p;
    }
    if (asize_ != expect) {
      throw std::logic_error("maximal_class_group: lattice index is not p^(n-1)");
    }

    act_.assign(p, std::vector<Index>(asize_));
    for (Index a = 0; a < asize_; ++a) {
      auto v = vector(a);
      for (std::uint32_t s = 0; s < p; ++s) {
        act_[s][a] = rank(reduce(v));
        v          = theta(v);
      }
    }
    add_.assign(asize_ * asize_, 0);
    for (Index a = 0; a < asize_; ++a) {
      auto va = vector(a);
      for (Index b = 0; b < asize_; ++b) {
        auto vb = vector(b);
        for (std::size_t i = 0; i < k; ++i) {
          vb[i] += va[i];
        }
        add_[a * asize_ + b] = rank(reduce(vb));
      }
    }
    inv_.assign(order(), 0);
    for (Index x = 0; x < order(); ++x) {
      // (sigma, a)^-1 = (-sigma, -a T^-sigma)
      std::uint32_t sg = sigma(x);
      std::uint32_t ns = (p - sg) % p;
      auto          v  = vector(x);
      for (auto& c : v) {
        c = -c;
      }
      Index a  = rank(reduce(v));
      inv_[x]  = static_cast<Index>(ns * asize_ + act_[ns][a]);
    }
    Row e(k, 0);
    e[0] = 1;
    e1_  = rank(reduce(e));
    for (Index x = 0; x < order(); ++x) {
      if (mul(x, inv_[x]) != 0) {
        throw std::logic_error("maximal_class_group: inverse table is wrong");
      }
    }
  }

  std::vector<std::int64_t> MaxClassGroup::reduce(std::vector<std::int64_t> v) const {
    std::size_t const k = hnf_.size();
    for (std::size_t c = 0; c < k; ++c) {
      std::int64_t q = floor_div(v[c], hnf_[c][c]);
      if (q != 0) {
        for (std::size_t j = c; j < k; ++j) {
          v[j] -= q * hnf_[c][j];
        }
      }
    }
    return v;
  }

  std::vector<std::int64_t> MaxClassGroup::theta(std::vector<std::int64_t> const& v) const {
    std::size_t const k = v.size();
    std::vector<std::int64_t> w(k, 0);
    for (std::size_t i = 0; i + 1 < k; ++i) {
      w[i + 1] += v[i];
    }
    for (std::size_t j = 0; j < k; ++j) {
      w[j] -= v[k - 1];
    }
    return w;
  }

  Index MaxClassGroup::rank(std::vector<std::int64_t> const& r) const {
    std::size_t idx = 0;
    for (std::size_t c = 0; c < r.size(); ++c) {
      idx = idx * static_cast<std::size_t>(hnf_[c][c]) + static_cast<std::size_t>(r[c]);
    }
    return static_cast<Index>(idx);
  }

  std::vector<std::int64_t> MaxClassGroup::vector(Index x) const {
    std::size_t a = x % asize_;
    std::size_t const k = hnf_.size();
    std::vector<std::int64_t> r(k);
    for (std::size_t c = k; c-- > 0;) {
      auto h = static_cast<std::size_t>(hnf_[c][c]);
      r[c]   = static_cast<std::int64_t>(a % h);
      a /= h;
    }
    return r;
  }

  Index MaxClassGroup::make(std::uint32_t sg, std::vector<std::int64_t> const& a) const {
    return static_cast<Index>((sg % p_) * asize_ + rank(reduce(a)));
  }

  std::vector<Subgroup> gamma_series_P(MaxClassGroup const& g) {
    auto     s  = lower_central_series(g);
    Subgroup p1 = trivial_subgroup(g);
    p1.elements.clear();
    for (Index x = 0; x < g.abelian_order(); ++x) {
      p1.member[x] = true;
      p1.elements.push_back(x);
    }
    p1.gens = {g.s1()};
    for (Index c = g.s1(), k = 1; k < g.log_order() - 1; ++k) {
      c = comm(g, c, g.s());
      p1.gens.push_back(c);
    }
    s.insert(s.begin() + 1, std::move(p1));
    return s;
  }

  std::uint64_t expected_exponent(std::uint32_t p, unsigned n, unsigned i) {
    unsigned      e = (n - i + p - 2) / (p - 1);
    std::uint64_t r = 1;
    for (unsigned k = 0; k < e; ++k) {
      r *= p;
    }
    return r;
  }

  Homomorphism psi(Stage const& stage, PcModel const& model, Index s, Index s1) {
    GroupElement sm = model.element(s);
    GroupElement u  = inverse(sm);
    GroupElement v  = sm * model.element(s1);
    return stage_homomorphism(stage, model.pcp, u, v);
  }

  PsiMap psi(Stage const& stage, MaxClassGroup const& g) {
    PcModel model = pc_model(g, g.prime());
    auto    h     = psi(stage, model, g.s(), g.s1());
    return {std::move(model), std::move(h)};
  }

  KernelFamily psi_kernel_family(Stage const& stage, MaxClassGroup const& g) {
    KernelFamily out;
    PcModel      model = pc_model(g, g.prime());
    auto const   ser   = gamma_series_P(g);
    for (Index s = static_cast<Index>(g.abelian_order()); s < g.order(); ++s) {
      for (Index s1 = 0; s1 < g.abelian_order(); ++s1) {
        if (ser[2].contains(s1)) {
          continue;
        }
        ++out.maps;
        auto h = psi(stage, model, s, s1);
        auto k = kernel_meet_layer(h, stage.n);
        if (std::find(out.kernels.begin(), out.kernels.end(), k) == out.kernels.end()) {
          out.kernels.push_back(std::move(k));
        }
      }
    }
    return out;
  }

  std::vector<RefinementTerm> refinement_series(Stage const& stage, Stage const& previous,
                                                SubgroupBasis const& kernel) {
    auto const&       pcp   = *stage.pcp;
    std::size_t       first = pcp.size();
    for (std::size_t i = 0; i < pcp.size(); ++i) {
      if (pcp.weight(i) == stage.n - 1) {
        first = i;
        break;
      }
    }
    if (first == pcp.size()) {
      throw std::invalid_argument("refinement_series: stage has no top layer");
    }
    std::vector<RefinementTerm> out;
    auto certify = [](std::string label, Stage q) {
      PcGroup g(q.pcp);
      auto    pr   = paper_structure_p3(g, q.x, q.y);
      auto    cert = beauville_check(g, pr[0], pr[1], pr[2], pr[3]);
      return RefinementTerm{std::move(label), std::move(q), std::move(cert)};
    };
    out.push_back(certify("lambda_" + std::to_string(stage.n), stage));
    std::vector<gfp::Vec> rows;
    for (std::size_t j = 0; j < kernel.basis().size(); ++j) {
      auto const& e = kernel.basis()[j].exponents();
      rows.emplace_back(e.begin() + static_cast<std::ptrdiff_t>(first), e.end());
      auto  lq = quotient_by_central_layer(pcp, first, rows);
      auto  h  = std::make_shared<PcPresentation const>(lq.pcp);
      Stage q{stage.n, h, GroupElement(h, lq.map(stage.x.exponents())),
              GroupElement(h, lq.map(stage.y.exponents()))};
      out.push_back(certify("N_" + std::to_string(j + 1), std::move(q)));
    }
    out.push_back(certify("lambda_" + std::to_string(previous.n), previous));
    return out;
  }

}  // namespace pcforge
