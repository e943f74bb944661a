#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pcforge/beauville.hpp"
#include "pcforge/pcgroup.hpp"

namespace pcforge {

  // Words in the defining generators (letter gen 0 = x, 1 = y) for every
  // PC generator, obtained by unwinding definitions.
  std::vector<Word> generator_words(PcPresentation const& pcp);
  Word              element_word(std::vector<Word> const& gens, Exponents const& e);
  Word              free_reduce(Word w);
  // `x^2*y^-1`; the empty word is `1`.
  std::string format_xy_word(Word const& w);
  Word        parse_xy_word(std::string_view text);

  struct BeauvilleCertificate {
    PcHandle                    pcp;
    std::array<GroupElement, 4> pair;    // x1, y1, x2, y2
    std::array<std::uint32_t, 2> det{};  // Frattini determinants mod p
    std::vector<GroupElement>   orbit1;  // socle generators, canonical
    std::vector<GroupElement>   orbit2;
    bool                        verdict = false;
  };

  BeauvilleCertificate beauville_check(PcGroup const& g, GroupElement const& x1,
                                       GroupElement const& y1, GroupElement const& x2,
                                       GroupElement const& y2);

  std::string          format_certificate(BeauvilleCertificate const& c);
  BeauvilleCertificate parse_certificate(std::string_view text);

  // Recompute the certificate from its group and pairs; on groups of
  // order <= element_check_bound also compare against the element-level
  // definition of Sigma.
  struct Reverification {
    bool        ok = false;
    std::string reason;
  };
  Reverification reverify(BeauvilleCertificate const& c, std::uint64_t element_check_bound = 6561);

  // ({u, v}, {u v^2, u v^4}); p >= 5.
  std::array<GroupElement, 4> paper_structure_p_ge_5(GroupElement const& u, GroupElement const& v);

  // First t in Phi(G), in enumeration order, that is not of the form [x, g].
  GroupElement nonconjugate_element(PcGroup const& g, GroupElement const& x);

  // ({u, v}, {(u z)^-1, v t}) with z, t from nonconjugate_element.
  std::array<GroupElement, 4> paper_structure_p3(PcGroup const& g, GroupElement const& u,
                                                 GroupElement const& v);

  // The conjugates of <x> and of <x t> meet only in the identity.
  bool lemma34_check(PcGroup const& g, GroupElement const& x, GroupElement const& t);

}  // namespace pcforge
