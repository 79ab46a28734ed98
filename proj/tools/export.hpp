#pragma once

#include <string>
#include <vector>

#include "klein/sail.hpp"

namespace klein::cli {

// Vertices of all sails plus their compact 2-faces. Sails must lie in Z^3.
std::string toOff(std::vector<Sail> const& sails);

// One panel per compact 2-face, drawn in the face's own lattice; sails in Z^2
// get a single panel with the rays and the sail polyline.
std::string toSvg(std::vector<Sail> const& sails);

}  // namespace klein::cli
