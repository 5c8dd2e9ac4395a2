#pragma once

#include <string>

#include "fairseq/geometry/partition.hpp"

namespace fairseq::geometry {

// {"schema":1, alpha, C, C_prime, atoms:[{letter, translation, polygons, outlines, ...}], total_area}
std::string partition_to_json(const ExchangeSystem& system);

// SVG 1.1 figure in iota-coordinates with the dotted hexagon iota([-C',C]^3 ∩ 1^perp).
std::string partition_to_svg(const ExchangeSystem& system);

}  // namespace fairseq::geometry
