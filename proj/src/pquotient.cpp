#include "pcforge/pquotient.hpp"

#include <sstream>

namespace pcforge {

  namespace {

    Exponents unit(std::size_t m, std::size_t i) {
      Exponents v(m, 0);
      v[i] = 1;
      return v;
    }

    bool ends_in(Exponents const& e, std::size_t k) {
      if (k >= e.size() || e[k] != 1) {
        return false;
      }
      for (std::size_t l = k + 1; l < e.size(); ++l) {
        if (e[l] != 0) {
          return false;
        }
      }
      return true;
    }

    bool is_definition_of_power(PcPresentation const& pcp, std::size_t i) {
      for (std::size_t k = 0; k < pcp.size(); ++k) {
        auto const& d = pcp.definition(k);
        if (d.kind == Definition::Kind::power && d.a == i) {
          return true;
        }
      }
      return false;
    }

    bool is_definition_of_commutator(PcPresentation const& pcp, std::size_t j, std::size_t i) {
      for (std::size_t k = 0; k < pcp.size(); ++k) {
        auto const& d = pcp.definition(k);
        if (d.kind == Definition::Kind::commutator && d.a == j && d.b == i) {
          return true;
        }
      }
      return false;
    }

    Exponents extend_zero(Exponents e, std::size_t m) {
      e.resize(m, 0);
      return e;
    }

  }  // namespace

  FpPresentation FpPresentation::free_group() {
    return {};
  }

  FpPresentation FpPresentation::free_product(std::uint32_t p) {
    FpPresentation fp;
    fp.relators.push_back({{0, static_cast<std::int32_t>(p)}});
    fp.relators.push_back({{1, static_cast<std::int32_t>(p)}});
    return fp;
  }

  Cover p_cover(PcPresentation const& pcp) {
    std::size_t const m = pcp.size();
    struct Slot {
      bool        power;
      std::size_t j, i;
    };
    std::vector<Slot> slots;
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_definition_of_power(pcp, i)) {
        slots.push_back({true, i, i});
      }
    }
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (!is_definition_of_commutator(pcp, j, i)) {
          slots.push_back({false, j, i});
        }
      }
    }
    std::size_t const total = m + slots.size();
    Cover             cover{PcPresentation(pcp.prime(), total), m};
    auto&             c = cover.pcp;
    for (std::size_t i = 0; i < m; ++i) {
      c.set_weight(i, pcp.weight(i));
      c.set_power(i, extend_zero(pcp.power(i), total));
      for (std::size_t j = i + 1; j < m; ++j) {
        c.set_commutator(j, i, extend_zero(pcp.commutator(j, i), total));
      }
      c.set_definition(i, pcp.definition(i));
    }
    unsigned const tail_weight = pcp.pc_class() + 1;
    for (std::size_t t = 0; t < slots.size(); ++t) {
      std::size_t const g = m + t;
      c.set_weight(g, tail_weight);
      auto const& s = slots[t];
      if (s.power) {
        auto rhs = c.power(s.i);
        rhs[g]   = 1;
        c.set_power(s.i, rhs);
        c.set_definition(g, {Definition::Kind::power, s.i, 0});
      } else {
        auto rhs = c.commutator(s.j, s.i);
        rhs[g]   = 1;
        c.set_commutator(s.j, s.i, rhs);
        c.set_definition(g, {Definition::Kind::commutator, s.j, s.i});
      }
    }
    c.finalize();
    return cover;
  }

  std::vector<gfp::Vec> consistency_relations(Cover const& cover) {
    auto const&         pcp   = cover.pcp;
    std::size_t const   m     = pcp.size();
    std::size_t const   f     = cover.first_tail;
    std::uint32_t const p     = pcp.prime();
    auto const&         col   = default_collector();
    std::vector<gfp::Vec> rows;

    auto prod = [&](Exponents x, Exponents const& y) {
      col.multiply(pcp, x, y);
      return x;
    };
    auto record = [&](Exponents const& lhs, Exponents const& rhs) {
      for (std::size_t k = 0; k < f; ++k) {
        if (lhs[k] != rhs[k]) {
          throw QuotientError("p_cover: base presentation is inconsistent");
        }
      }
      gfp::Vec v(m - f);
      for (std::size_t k = f; k < m; ++k) {
        v[k - f] = (lhs[k] + p - rhs[k]) % p;
      }
      if (!gfp::is_zero(v)) {
        rows.push_back(std::move(v));
      }
    };

    for (std::size_t k = 0; k < f; ++k) {
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
          record(prod(prod(unit(m, k), unit(m, j)), unit(m, i)),
                 prod(unit(m, k), prod(unit(m, j), unit(m, i))));
        }
      }
    }
    for (std::size_t j = 0; j < f; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        Exponents gj1(m, 0);
        gj1[j] = p - 1;
        record(prod(pcp.power(j), unit(m, i)), prod(gj1, prod(unit(m, j), unit(m, i))));
        Exponents rhs = prod(unit(m, j), unit(m, i));
        col.multiply_generator(pcp, rhs, i, p - 1);
        record(prod(unit(m, j), pcp.power(i)), rhs);
      }
    }
    for (std::size_t i = 0; i < f; ++i) {
      record(prod(pcp.power(i), unit(m, i)), prod(unit(m, i), pcp.power(i)));
    }
    return rows;
  }

  Exponents LayerQuotient::map(Exponents const& old) const {
    Exponents out(old.begin(), old.begin() + static_cast<std::ptrdiff_t>(first));
    gfp::Vec  layer(old.begin() + static_cast<std::ptrdiff_t>(first), old.end());
    layer = relations.reduce(layer);
    for (auto s : survivors) {
      out.push_back(layer[s - first]);
    }
    return out;
  }

  LayerQuotient quotient_by_central_layer(PcPresentation const&        pcp,
                                          std::size_t                  first,
                                          std::vector<gfp::Vec> const& rows) {
    std::size_t const m = pcp.size();
    if (first > m) {
      throw std::invalid_argument("quotient_by_central_layer: layer start out of range");
    }
    LayerQuotient q;
    q.first     = first;
    q.relations = gfp::echelonize(rows, m - first, pcp.prime());
    std::vector<bool> pivot(m - first, false);
    for (auto c : q.relations.pivots) {
      pivot[c] = true;
    }
    for (std::size_t k = first; k < m; ++k) {
      if (!pivot[k - first]) {
        q.survivors.push_back(k);
      }
    }
    std::vector<std::size_t> old_of;
    for (std::size_t i = 0; i < first; ++i) {
      old_of.push_back(i);
    }
    old_of.insert(old_of.end(), q.survivors.begin(), q.survivors.end());
    std::size_t const mm = old_of.size();

    PcPresentation out(pcp.prime(), mm);
    for (std::size_t i = 0; i < mm; ++i) {
      out.set_weight(i, pcp.weight(old_of[i]));
    }
    for (std::size_t i = 0; i < mm; ++i) {
      out.set_power(i, q.map(pcp.power(old_of[i])));
      for (std::size_t j = i + 1; j < mm; ++j) {
        out.set_commutator(j, i, q.map(pcp.commutator(old_of[j], old_of[i])));
      }
    }
    std::vector<std::size_t> new_of(m, mm);
    for (std::size_t i = 0; i < mm; ++i) {
      new_of[old_of[i]] = i;
    }
    for (std::size_t k = 0; k < mm; ++k) {
      Definition d = pcp.definition(old_of[k]);
      if (d.kind == Definition::Kind::power && new_of[d.a] < mm
          && ends_in(out.power(new_of[d.a]), k)) {
        out.set_definition(k, {d.kind, new_of[d.a], 0});
      } else if (d.kind == Definition::Kind::commutator && new_of[d.a] < mm && new_of[d.b] < mm
                 && ends_in(out.commutator(new_of[d.a], new_of[d.b]), k)) {
        out.set_definition(k, {d.kind, new_of[d.a], new_of[d.b]});
      }
    }
    out.finalize();
    q.pcp = std::move(out);
    return q;
  }

  LayerQuotient enforce_consistency(Cover const& cover) {
    return quotient_by_central_layer(cover.pcp, cover.first_tail, consistency_relations(cover));
  }

  GroupElement evaluate(Word const& w, GroupElement const& x, GroupElement const& y) {
    GroupElement r  = GroupElement::identity(x.presentation());
    GroupElement xi = inverse(x);
    GroupElement yi = inverse(y);
    for (auto const& l : w) {
      if (l.gen > 1) {
        throw std::invalid_argument("evaluate: relator letters must be x or y");
      }
      auto const& base = l.gen == 0 ? (l.exp > 0 ? x : xi) : (l.exp > 0 ? y : yi);
      r                = r * power(base, l.exp > 0 ? l.exp : -std::int64_t(l.exp));
    }
    return r;
  }

  LayerQuotient impose_relations(PcPresentation const& cover,
                                 std::size_t           first_tail,
                                 GroupElement const&   x,
                                 GroupElement const&   y,
                                 FpPresentation const& fp) {
    std::size_t const     m = cover.size();
    std::vector<gfp::Vec> rows;
    for (auto const& r : fp.relators) {
      auto v = evaluate(r, x, y).exponents();
      for (std::size_t k = 0; k < first_tail; ++k) {
        if (v[k] != 0) {
          throw QuotientError("impose_relations: relator value is not in the tail layer");
        }
      }
      rows.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(first_tail), v.end());
    }
    (void)m;
    return quotient_by_central_layer(cover, first_tail, rows);
  }

  Stage next_stage(Stage const& s, FpPresentation const& fp, QuotientOptions const& opt) {
    Cover cover = p_cover(*s.pcp);
    if (cover.pcp.size() > opt.max_generators * 8) {
      throw QuotientError("p_quotient: cover has " + std::to_string(cover.pcp.size())
                          + " generators, over the budget");
    }
    LayerQuotient consistent = enforce_consistency(cover);
    auto          mid        = std::make_shared<PcPresentation const>(consistent.pcp);
    std::size_t const mm     = mid->size();
    GroupElement  x(mid, extend_zero(s.x.exponents(), mm));
    GroupElement  y(mid, extend_zero(s.y.exponents(), mm));
    LayerQuotient done = impose_relations(*mid, cover.first_tail, x, y, fp);
    if (done.pcp.size() > opt.max_generators) {
      throw QuotientError("p_quotient: " + std::to_string(done.pcp.size())
                          + " generators exceed the budget of "
                          + std::to_string(opt.max_generators));
    }
    Stage out;
    out.n   = s.n + 1;
    out.pcp = std::make_shared<PcPresentation const>(std::move(done.pcp));
    out.x   = GroupElement(out.pcp, done.map(x.exponents()));
    out.y   = GroupElement(out.pcp, done.map(y.exponents()));
    return out;
  }

  QuotientTower p_quotient_tower(FpPresentation const&  fp,
                                 std::uint32_t          p,
                                 unsigned               n,
                                 QuotientOptions const& opt) {
    if (p < 2) {
      throw std::invalid_argument("p_quotient: p must be prime");
    }
    for (std::uint32_t q = 2; q * q <= p; ++q) {
      if (p % q == 0) {
        throw std::invalid_argument("p_quotient: p must be prime");
      }
    }
    if (n < 2) {
      throw std::invalid_argument("p_quotient: n must be at least 2");
    }
    QuotientTower tower;
    tower.p = p;

    PcPresentation        base(p, 2);
    std::vector<gfp::Vec> rows;
    for (auto const& r : fp.relators) {
      gfp::Vec v(2, 0);
      for (auto const& l : r) {
        if (l.gen > 1) {
          throw std::invalid_argument("p_quotient: relator letters must be x or y");
        }
        std::int64_t e = l.exp % std::int64_t(p);
        v[l.gen]       = static_cast<std::uint32_t>((v[l.gen] + e + p) % p);
      }
      rows.push_back(v);
    }
    LayerQuotient first = quotient_by_central_layer(base, 0, rows);
    Stage         s;
    s.n   = 2;
    s.pcp = std::make_shared<PcPresentation const>(first.pcp);
    s.x   = GroupElement(s.pcp, first.map(unit(2, 0)));
    s.y   = GroupElement(s.pcp, first.map(unit(2, 1)));
    tower.stages.push_back(s);
    while (tower.stages.back().n < n) {
      Stage next = next_stage(tower.stages.back(), fp, opt);
      if (next.pcp->size() == tower.stages.back().pcp->size()) {
        tower.stabilized = true;
        break;
      }
      tower.stages.push_back(std::move(next));
    }
    return tower;
  }

  Stage p_quotient(FpPresentation const& fp, std::uint32_t p, unsigned n,
                   QuotientOptions const& opt) {
    auto tower = p_quotient_tower(fp, p, n, opt);
    Stage s    = tower.top();
    s.n        = n;
    return s;
  }

  std::string format_tower(QuotientTower const& t) {
    std::ostringstream os;
    for (auto const& s : t.stages) {
      os << "# stage n=" << s.n << '\n';
      StageText st{*s.pcp, s.x.exponents(), s.y.exponents(), true};
      os << format_stage(st);
    }
    return os.str();
  }

  QuotientTower parse_tower(std::string_view text) {
    QuotientTower t;
    unsigned      n = 2;
    for (auto& st : parse_stages(text)) {
      if (!st.has_images) {
        throw std::invalid_argument("parse_tower: stage without images");
      }
      Stage s;
      s.n   = n++;
      t.p   = st.pcp.prime();
      s.pcp = std::make_shared<PcPresentation const>(std::move(st.pcp));
      s.x   = GroupElement(s.pcp, st.img_x);
      s.y   = GroupElement(s.pcp, st.img_y);
      t.stages.push_back(std::move(s));
    }
    return t;
  }

  Homomorphism::Homomorphism(PcHandle src, PcHandle dst,
                             std::vector<GroupElement> const& defining_images)
      : src_(std::move(src)), dst_(std::move(dst)) {
    auto const        defining = src_->defining_generators();
    std::size_t const m        = src_->size();
    if (defining_images.size() != defining.size()) {
      throw std::invalid_argument("Homomorphism: need one image per defining generator");
    }
    for (auto const& g : defining_images) {
      if (g.presentation() != dst_ && !(g.pcp() == *dst_)) {
        throw PresentationMismatch("Homomorphism: image outside the target");
      }
    }
    images_.assign(m, GroupElement::identity(dst_));
    std::size_t next = 0;
    auto value = [&](Exponents const& e, std::size_t below) {
      GroupElement r = GroupElement::identity(dst_);
      for (std::size_t i = 0; i < below; ++i) {
        if (e[i] != 0) {
          r = r * power(images_[i], e[i]);
        }
      }
      return r;
    };
    for (std::size_t k = 0; k < m; ++k) {
      auto const& d = src_->definition(k);
      if (d.kind == Definition::Kind::none) {
        images_[k] = defining_images[next++];
      } else if (d.kind == Definition::Kind::power) {
        images_[k] = inverse(value(src_->power(d.a), k)) * power(images_[d.a], src_->prime());
      } else {
        images_[k] = inverse(value(src_->commutator(d.a, d.b), k))
                     * commutator(images_[d.a], images_[d.b]);
      }
    }
    auto name = [](std::size_t i) { return "g" + std::to_string(i + 1); };
    for (std::size_t i = 0; i < m; ++i) {
      if (!(power(images_[i], src_->prime()) == value(src_->power(i), m))) {
        throw HomomorphismError("relation " + name(i) + "^p = " + format_word(src_->power(i))
                                + " is not preserved");
      }
      for (std::size_t j = i + 1; j < m; ++j) {
        if (!(commutator(images_[j], images_[i]) == value(src_->commutator(j, i), m))) {
          throw HomomorphismError("relation [" + name(j) + "," + name(i)
                                  + "] = " + format_word(src_->commutator(j, i))
                                  + " is not preserved");
        }
      }
    }
    surjective_ = SubgroupBasis::generated_by(dst_, images_).log_order() == dst_->size();
  }

  GroupElement Homomorphism::operator()(GroupElement const& x) const {
    if (x.presentation() != src_ && !(x.pcp() == *src_)) {
      throw PresentationMismatch("Homomorphism: argument outside the source");
    }
    GroupElement r = GroupElement::identity(dst_);
    for (std::size_t i = 0; i < x.exponents().size(); ++i) {
      if (x.exponents()[i] != 0) {
        r = r * power(images_[i], x.exponents()[i]);
      }
    }
    return r;
  }

  Homomorphism stage_homomorphism(Stage const& s, PcHandle dst, GroupElement const& x_image,
                                  GroupElement const& y_image) {
    std::vector<GroupElement> imgs;
    std::size_t const         m = s.pcp->size();
    for (auto d : s.pcp->defining_generators()) {
      if (s.x.exponents() == unit(m, d)) {
        imgs.push_back(x_image);
      } else if (s.y.exponents() == unit(m, d)) {
        imgs.push_back(y_image);
      } else {
        throw HomomorphismError("stage_homomorphism: defining generator g"
                                + std::to_string(d + 1) + " is not the image of x or y");
      }
    }
    Homomorphism h(s.pcp, std::move(dst), imgs);
    if (!(h(s.x) == x_image) || !(h(s.y) == y_image)) {
      throw HomomorphismError("stage_homomorphism: images of x, y not respected");
    }
    return h;
  }

  SubgroupBasis kernel_meet_layer(Homomorphism const& h, unsigned n) {
    if (n < 2) {
      throw std::invalid_argument("kernel_meet_layer: n must be at least 2");
    }
    auto const&   src   = h.source();
    SubgroupBasis layer = weight_subgroup(src, n - 1);
    if (!layer.is_central_elementary()) {
      throw std::invalid_argument("kernel_meet_layer: layer is not central elementary abelian");
    }
    std::vector<GroupElement> imgs;
    for (auto const& b : layer.basis()) {
      imgs.push_back(h(b));
    }
    SubgroupBasis image = SubgroupBasis::generated_by(h.target(), imgs);
    std::vector<gfp::Vec> rows;
    for (auto const& g : imgs) {
      rows.push_back(*image.coordinates(g));
    }
    auto kernel = gfp::left_kernel(rows, image.log_order(), src->prime());
    std::vector<GroupElement> gens;
    for (auto const& a : kernel) {
      GroupElement e = GroupElement::identity(src);
      for (std::size_t i = 0; i < a.size(); ++i) {
        e = e * power(layer.basis()[i], a[i]);
      }
      gens.push_back(e);
    }
    return SubgroupBasis::generated_by(src, gens);
  }

  Homomorphism truncation(Stage const& upper, Stage const& lower) {
    return stage_homomorphism(upper, lower.pcp, lower.x, lower.y);
  }

}  // namespace pcforge
