#include "tilerect/rectgen.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace tilerect {

namespace {

long long checked_pow(long long base, long long e) {
    long long v = 1;
    for (long long i = 0; i < e; ++i) {
        if (v > std::numeric_limits<long long>::max() / base) throw std::overflow_error("parameters exceed 64-bit range");
        v *= base;
    }
    return v;
}

}  // namespace

long long ConstructionParams::digits_max() const { return checked_pow(m, d); }

ConstructionParams compute_params(long long k, long long N) {
    if (k < 3) throw std::invalid_argument("width too small for one digit column");
    if (N < 49) throw std::invalid_argument("height below construction minimum");
    ConstructionParams p;
    p.k = k;
    p.N = N;
    p.d = k / 3;
    // m = ceil((N/5)^(1/d)): least m with 5 m^d >= N.
    const long long need = (N + 4) / 5;
    auto pow_sat = [](long long b, long long e) {
        long long v = 1;
        for (long long i = 0; i < e; ++i) {
            if (v > std::numeric_limits<long long>::max() / b) return std::numeric_limits<long long>::max();
            v *= b;
        }
        return v;
    };
    p.m = 1;
    while (pow_sat(p.m, p.d) < need) ++p.m;
    if (p.m < 2) throw std::logic_error("counter base below 2");
    int e = 0;
    while ((1LL << e) < p.m) ++e;
    p.l = e + 1;
    p.s = checked_pow(p.m, p.d) - (N - 3 * p.l - 1) / (3 * p.l + 2);
    p.c = k % 3;
    p.r = (N + 1) % (3 * p.l + 2);
    if (p.s < 0) throw std::logic_error("negative counter start");
    return p;
}

std::string bin(unsigned long long a, int b) {
    std::string s(static_cast<std::size_t>(std::max(b, 0)), '0');
    for (int i = 0; i < b; ++i)
        if (i < 64 && ((a >> i) & 1ULL)) s[static_cast<std::size_t>(b - 1 - i)] = '1';
    return s;
}

long long digit(long long a, long long base, int i) {
    for (int j = 1; j < i; ++j) a /= base;
    return a % base;
}

std::string encode_label(const std::vector<std::string>& tokens) {
    if (tokens.empty()) throw std::invalid_argument("empty label is reserved for the null glue");
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].find(',') != std::string::npos) throw std::invalid_argument("token contains separator: " + tokens[i]);
        if (i) out += ',';
        out += tokens[i];
    }
    return out;
}

std::string digit_code(long long v, bool msd, int l) {
    return bin(static_cast<unsigned long long>(2 * v + (msd ? 1 : 0)), l);
}

std::vector<TileType> Gadget::tiles() const {
    std::vector<TileType> out(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) out[j].name = name + "#" + std::to_string(j);
    auto set = [&](int cell, Dir side, const std::string& label) {
        Glue& g = out[static_cast<std::size_t>(cell)].glue(side);
        if (!g.is_null()) throw std::logic_error("two glues on one side in " + name);
        g = Glue{label, 1};
    };
    for (std::size_t j = 1; j < cells.size(); ++j) {
        const auto& c = cells[j];
        std::string internal = "~" + name + "#" + std::to_string(j);
        set(c.parent, c.from_parent, internal);
        set(static_cast<int>(j), opposite(c.from_parent), internal);
    }
    if (input) set(input->cell, input->side, input->label);
    for (const auto& o : outputs) set(o.cell, o.side, o.label);
    return out;
}

std::string tile_family(const std::string& tile_name) {
    auto cut = tile_name.find_first_of("[#");
    return tile_name.substr(0, cut);
}

GeneratedTileSet build_tileset(const ConstructionParams& p, const std::vector<Gadget>& gadgets) {
    GeneratedTileSet g;
    g.params = p;
    std::vector<TileType> all;
    std::set<std::array<Glue, 6>> seen;
    std::optional<std::string> seed_name;
    for (const auto& gd : gadgets) {
        auto ts = gd.tiles();
        g.unit_tiles[gd.unit] += ts.size();
        if (gd.family.rfind("Seed_Start", 0) == 0) seed_name = ts[0].name;
        for (auto& t : ts) {
            if (!seen.insert(t.sides).second) {
                ++g.merged;
                continue;
            }
            all.push_back(std::move(t));
        }
    }
    if (!seed_name) throw std::invalid_argument("tile set has no Seed_Start gadget");
    g.tas.tiles = TileSet(std::move(all));
    g.tas.seed_tile = *g.tas.tiles.find(*seed_name);
    g.tas.seed_pos = {0, 0, 0};
    g.tas.temperature = 1;
    g.tas.barely3d = true;
    return g;
}

std::vector<Gadget> gen_all(const ConstructionParams& p) {
    std::vector<Gadget> all;
    for (auto* f : {gen_seed_unit, gen_counter_units, gen_return_row, gen_roof, gen_filler}) {
        auto part = f(p);
        all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return all;
}

GeneratedTileSet generate_tileset(long long k, long long N) {
    auto p = compute_params(k, N);
    return build_tileset(p, gen_all(p));
}

int Layout::slot_row(int band, int j) const {
    int base = band_bottom(band);
    if (j < p.l) return base + 3 * (j - 1);
    return base + static_cast<int>(3 * p.l - 4);
}

std::optional<long long> DecodedBand::value() const {
    long long v = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (!*it) return std::nullopt;
        v = v * base + **it;
    }
    return v;
}

std::vector<DecodedBand> decode_counter(const TAS& T, const Assembly& a, const ConstructionParams& p) {
    static const std::set<std::string> ones{"Counter_Write_1", "Counter_Write_Msb_1", "Seed_Bit_1", "Seed_Msb_1"};
    static const std::set<std::string> zeros{"Counter_Write_0", "Counter_Write_Msb_0", "Seed_Bit_0", "Seed_Msb_0"};
    Layout L(p);
    std::vector<DecodedBand> out;
    for (int b = 1; b <= p.rows() + 1; ++b) {
        DecodedBand band;
        band.band = b;
        band.base = p.m;
        for (int i = 1; i <= p.d; ++i) {
            std::optional<long long> code = 0;
            for (int j = static_cast<int>(p.l); j >= 1 && code; --j) {
                int y = L.slot_row(b, j);
                auto one = a.at({L.col_b(i), y, 1});
                auto zero = a.at({L.col_c(i), y, 0});
                bool is1 = one && ones.count(tile_family(T.tiles[*one].name));
                bool is0 = zero && zeros.count(tile_family(T.tiles[*zero].name));
                if (is1 == is0)
                    code.reset();
                else
                    *code = 2 * *code + (is1 ? 1 : 0);
            }
            if (code) {
                band.digits.push_back(*code / 2);
                band.msd_flags.push_back((*code & 1) != 0);
            } else {
                band.digits.push_back(std::nullopt);
                band.msd_flags.push_back(std::nullopt);
            }
        }
        out.push_back(std::move(band));
    }
    return out;
}

}  // namespace tilerect
