#pragma once

#include <string>

#include "amoebot/core.hpp"

namespace amoebot {

/// Text picture of the occupied set and its empty lattice neighbours.
///
///   S seed   # retired   R/r root head/tail   F/f follower head/tail
///   o inactive   . empty lattice node
///
/// Row = axial r, column = 2q + r, so each row is shifted half a cell.
std::string render_ascii(const Configuration& cfg);

/// SVG 1.1 document: the lattice neighbourhood as a grey mesh with unit edges,
/// the seed at the origin; seed green, retired black, roots red, followers
/// blue, inactive grey. Expanded particles are two circles joined by an edge.
std::string render_svg(const Configuration& cfg);

/// Writes render_svg(cfg) to `path`. Throws std::runtime_error on I/O failure.
void write_svg(const Configuration& cfg, const std::string& path);

}  // namespace amoebot
