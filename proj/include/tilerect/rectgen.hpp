#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tilerect/atam.hpp"

namespace tilerect {

struct ConstructionParams {
    long long k = 0, N = 0, d = 0, m = 0, l = 0, s = 0, c = 0, r = 0;

    long long digits_max() const;  // m^d
    long long rows() const { return digits_max() - s; }
    long long row_height() const { return 3 * l + 2; }
    long long seed_height() const { return 3 * l + 1; }
    long long counter_height() const { return rows() * row_height() + seed_height(); }
    friend bool operator==(const ConstructionParams&, const ConstructionParams&) = default;
};

ConstructionParams compute_params(long long k, long long N);

std::string bin(unsigned long long a, int b);
long long digit(long long a, long long base, int i);
std::string encode_label(const std::vector<std::string>& tokens);

// Stored digit: bin(2v+f, l), f = 1 only for the most significant digit.
std::string digit_code(long long v, bool msd, int l);

struct Port {
    int cell = 0;
    Dir side = Dir::N;
    std::string label;
};

struct GadgetCell {
    Vec3 rel;
    int parent = -1;         // -1 for the input cell
    Dir from_parent = Dir::N;
};

struct Gadget {
    std::string name;    // unique per instance
    std::string family;  // template name
    std::string unit;    // seed, counter, return_row, roof, filler
    std::optional<Port> input;
    std::vector<Port> outputs;
    std::vector<GadgetCell> cells;

    std::vector<TileType> tiles() const;
};

std::vector<Gadget> gen_seed_unit(const ConstructionParams& p);
std::vector<Gadget> gen_counter_units(const ConstructionParams& p);
std::vector<Gadget> gen_return_row(const ConstructionParams& p);
std::vector<Gadget> gen_roof(const ConstructionParams& p);
std::vector<Gadget> gen_filler(const ConstructionParams& p);
std::vector<Gadget> gen_all(const ConstructionParams& p);

struct GeneratedTileSet {
    ConstructionParams params;
    TAS tas;
    std::map<std::string, std::size_t> unit_tiles;  // before dedup
    std::size_t merged = 0;                          // exact duplicates removed
};

// Seed is cell 0 of the Seed_Start gadget, placed at the origin.
GeneratedTileSet build_tileset(const ConstructionParams& p, const std::vector<Gadget>& gadgets);
GeneratedTileSet generate_tileset(long long k, long long N);

// Family prefix of a generated tile name ("Counter_Write_1[...]#3" -> "Counter_Write_1").
std::string tile_family(const std::string& tile_name);

// Vertical-frame geometry shared by the generator and decoders.
struct Layout {
    ConstructionParams p;
    explicit Layout(const ConstructionParams& params) : p(params) {}
    int col_a(int digit) const { return static_cast<int>(p.c + 3 * (p.d - digit)); }
    int col_b(int digit) const { return col_a(digit) + 1; }
    int col_c(int digit) const { return col_a(digit) + 2; }
    // Row of U_0 of the zone below band b (b >= 1); zone rows U_0..U_3.
    int zone_base(int band) const { return static_cast<int>(-2 + (band - 1) * (3 * p.l + 2)); }
    int band_bottom(int band) const { return zone_base(band) + 4; }
    int band_top(int band) const { return zone_base(band) + static_cast<int>(3 * p.l + 1); }
    // Lower row of the 2-row slot holding bit j of band b.
    int slot_row(int band, int j) const;
};

// Per band and digit (index 1 = least significant), the written digit value or
// nullopt when the slot cells are not writer tiles. bands run 1..rows()+1.
struct DecodedBand {
    int band = 0;
    long long base = 2;
    std::vector<std::optional<long long>> digits;  // digits[i-1]
    std::vector<std::optional<bool>> msd_flags;
    std::optional<long long> value() const;          // base-m value if all digits present
};
std::vector<DecodedBand> decode_counter(const TAS& T, const Assembly& a, const ConstructionParams& p);

}  // namespace tilerect
