#pragma once

#include <string>

#include "tilerect/atam.hpp"

namespace tilerect {

struct RenderOptions {
    int cell = 12;                  // px per lattice unit
    int margin = 6;
    int max_width = 16384;          // viewport limits in px
    int max_height = 16384;
    bool shade_write_gadgets = true;
};

// z=0 tiles as full squares, z=1 tiles as inset squares, z=0/z=0 bonds thick,
// z=1/z=1 bonds thin, z=0/z=1 bonds as disks. y grows upwards.
std::string render_svg(const TileSet& ts, const Assembly& a, const RenderOptions& opt = {});

struct RenderTally {
    std::size_t large = 0, small = 0, disks = 0, thick = 0, thin = 0;
};
// Counts the drawing primitives an assembly should produce.
RenderTally expected_tally(const TileSet& ts, const Assembly& a);

// Families drawn in gray.
bool is_write_gadget(const std::string& tile_name);

}  // namespace tilerect
