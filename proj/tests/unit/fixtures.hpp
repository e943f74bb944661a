#pragma once

#include <memory>

#include "pcforge/pcp.hpp"

namespace fixtures {

  // H = <a,b,c,d,e | exponent-3 powers, [b,a]=c, [c,a]=d, [c,b]=e>, order 3^5.
  inline pcforge::PcPresentation h_presentation(bool broken = false) {
    pcforge::PcPresentation pcp(3, 5);
    pcp.set_weight(2, 2);
    pcp.set_weight(3, 3);
    pcp.set_weight(4, 3);
    pcp.set_commutator(1, 0, {0, 0, 1, 0, 0});
    if (!broken) {
      pcp.set_commutator(2, 0, {0, 0, 0, 1, 0});
    }
    pcp.set_commutator(2, 1, {0, 0, 0, 0, 1});
    pcp.finalize();
    return pcp;
  }

  inline pcforge::PcHandle h_group() {
    return std::make_shared<pcforge::PcPresentation const>(h_presentation());
  }

  inline pcforge::PcHandle elementary(std::uint32_t p, std::size_t n) {
    return std::make_shared<pcforge::PcPresentation const>(pcforge::PcPresentation(p, n));
  }

}  // namespace fixtures
