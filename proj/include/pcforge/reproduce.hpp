#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcforge/pcp.hpp"
#include "pcforge/report.hpp"

namespace pcforge {

  struct ReproduceOptions {
    std::uint64_t seed      = 1;
    std::size_t   samples   = 1000;  // sampled pairs per large group
    std::uint64_t max_order = 10'000'000;
    unsigned      threads   = 1;
  };

  // Sections in report order; `all` runs every one of them.
  std::vector<std::string> reproduce_sections();

  // Throws std::invalid_argument on an unknown section.
  Report reproduce(std::string const& section, ReproduceOptions const& opt = {});

  // H = <a, b | [b,a] = c, [c,a] = d, [c,b] = e, exponent 3>, order 3^5.
  PcPresentation h_presentation();

}  // namespace pcforge
