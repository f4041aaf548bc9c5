#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "tilerect/rectgen.hpp"

using namespace tilerect;

namespace {

struct Expected {
    long long d, m, l, s, c, r;
};

void expect_params(long long k, long long N, Expected e) {
    auto p = compute_params(k, N);
    EXPECT_EQ(p.d, e.d);
    EXPECT_EQ(p.m, e.m);
    EXPECT_EQ(p.l, e.l);
    EXPECT_EQ(p.s, e.s);
    EXPECT_EQ(p.c, e.c);
    EXPECT_EQ(p.r, e.r);
}

// Straight-line evaluation of the parameter formulas, floating point only for the root guess.
Expected oracle_params(long long k, long long N) {
    Expected e{};
    e.d = k / 3;
    long long m = std::max(1LL, static_cast<long long>(std::floor(std::pow(N / 5.0, 1.0 / static_cast<double>(e.d)))) - 1);
    auto pw = [](long long b, long long x) {
        long double v = 1;
        for (long long i = 0; i < x; ++i) v *= static_cast<long double>(b);
        return v;
    };
    while (5 * pw(m, e.d) < N) ++m;
    e.m = m;
    long long bits = 0;
    while ((1LL << bits) < m) ++bits;
    e.l = bits + 1;
    e.s = static_cast<long long>(pw(m, e.d)) - (N - 3 * e.l - 1) / (3 * e.l + 2);
    e.c = k % 3;
    e.r = (N + 1) % (3 * e.l + 2);
    return e;
}

std::map<std::string, int> family_counts(const std::vector<Gadget>& gs) {
    std::map<std::string, int> out;
    for (const auto& g : gs) ++out[g.family];
    return out;
}

// Tile count of T_{k,N} from the creation loops and the per-template cell counts.
long long tally(const ConstructionParams& p) {
    const long long d = p.d, m = p.m, l = p.l, c = p.c, r = p.r;
    auto pass_cells = [&](bool pass, long long base, long long extra) { return base + (pass ? extra : 0); };
    long long seed = (c + 1) + d * (3 * l - 3) + d * 9 + 6 + 4 * (d - 1);
    for (long long j = 1; j <= l - 1; ++j) seed += d * (j <= l - 2 ? 6 : 4);
    long long counter = 0;
    for (long long i = 0; i <= l - 2; ++i) counter += 4 * (1LL << i) * pass_cells(i + 1 <= l - 2, 4, 1);
    counter += (4 * m - 1) * 9;
    for (long long i = 1; i <= l - 1; ++i) counter += pass_cells(i <= l - 2, 4, 2);
    counter += 2 * (1LL << (l - 1)) * pass_cells(l >= 3, 4, 2);
    for (long long i = 1; i <= l - 2; ++i) counter += 4 * (1LL << i) * pass_cells(i >= 2, 4, 2);
    counter += 5 * 7;
    counter += 2 * (3 * l - 2) + (3 * l - 3);
    counter += 2 * 5 + 2 * (l - 1) * 3 + 2 * 4;
    long long ret = d == 1 ? 11 : 6 + 3 * (d - 2) + 8;
    long long roof = 2 + 5 + 3 * (l - 1) + 7 * (d - 1) + (r + 2) + 1 + (c + 2) + (r > 0 ? 3 * d - 3 : 0);
    return seed + counter + ret + roof + 2;
}

}  // namespace

TEST(Params, WorkedExample) { expect_params(11, 56, {3, 3, 3, 23, 2, 2}); }
TEST(Params, SingleDigitColumn) { expect_params(3, 49, {1, 10, 5, 9, 0, 16}); }
TEST(Params, FourDigitColumns) { expect_params(12, 500, {4, 4, 3, 212, 0, 6}); }

TEST(Params, Errors) {
    EXPECT_THROW(
        try { compute_params(2, 100); } catch (const std::invalid_argument& e) {
            EXPECT_STREQ(e.what(), "width too small for one digit column");
            throw;
        },
        std::invalid_argument);
    EXPECT_THROW(
        try { compute_params(3, 48); } catch (const std::invalid_argument& e) {
            EXPECT_STREQ(e.what(), "height below construction minimum");
            throw;
        },
        std::invalid_argument);
}

TEST(Params, SweepAgainstIndependentEvaluation) {
    for (long long k = 3; k <= 30; ++k)
        for (long long N = 49; N <= 5000; N += (N < 400 ? 1 : 37)) {
            auto p = compute_params(k, N);
            auto e = oracle_params(k, N);
            ASSERT_EQ(p.d, e.d) << k << " " << N;
            ASSERT_EQ(p.m, e.m) << k << " " << N;
            ASSERT_EQ(p.l, e.l) << k << " " << N;
            ASSERT_EQ(p.s, e.s) << k << " " << N;
            ASSERT_EQ(p.c, e.c);
            ASSERT_EQ(p.r, e.r);
            // Range and height accounting.
            ASSERT_GE(p.s, 0);
            ASSERT_LT(p.s, p.digits_max());
            ASSERT_LE(6 * p.l + 3, N);
            ASSERT_LE(N, p.digits_max() * (3 * p.l + 2) + 3 * p.l + 1);
            ASSERT_LE(p.counter_height(), N);
            ASSERT_EQ(p.counter_height() + p.r, N);
        }
}

TEST(Bin, PadsAndTruncates) {
    EXPECT_EQ(bin(5, 4), "0101");
    EXPECT_EQ(bin(5, 2), "01");
    EXPECT_EQ(bin(0, 3), "000");
    EXPECT_EQ(bin(7, 0), "");
}

TEST(Digit, PositionsFromTheRight) {
    EXPECT_EQ(digit(23, 3, 1), 2);
    EXPECT_EQ(digit(23, 3, 2), 1);
    EXPECT_EQ(digit(23, 3, 3), 2);
    EXPECT_EQ(digit(0, 10, 5), 0);
    EXPECT_EQ(digit(7, 2, 3), 1);
}

TEST(EncodeLabel, CanonicalAndGuarded) {
    EXPECT_EQ(encode_label({"inc", "read", "1"}), "inc,read,1");
    EXPECT_EQ(encode_label({"copy", "write", "0110"}), "copy,write,0110");
    EXPECT_THROW(encode_label({}), std::invalid_argument);
    EXPECT_THROW(encode_label({"a,b"}), std::invalid_argument);
}

TEST(DigitCode, FlagIsTheLowBit) {
    EXPECT_EQ(digit_code(2, true, 3), "101");
    EXPECT_EQ(digit_code(2, false, 3), "100");
    EXPECT_EQ(digit_code(1, false, 3), "010");
}

TEST(SeedUnit, GadgetCounts) {
    auto gs = gen_seed_unit(compute_params(11, 56));
    EXPECT_EQ(gs.size(), 31u);
    auto f = family_counts(gs);
    EXPECT_EQ(f["Seed_Spacer"], 2);
    EXPECT_EQ(f["Seed_End"], 1);
    EXPECT_EQ(f["Up_Column"], 18);
    EXPECT_EQ(family_counts(gen_seed_unit(compute_params(3, 49)))["Seed_Spacer"], 0);
}

TEST(CounterUnit, LoopCardinalities) {
    for (auto [k, N] : std::vector<std::pair<long long, long long>>{{11, 56}, {3, 49}, {6, 300}, {12, 60}, {9, 2000}}) {
        auto p = compute_params(k, N);
        const long long l = p.l, m = p.m;
        auto f = family_counts(gen_counter_units(p));
        EXPECT_EQ(f["Counter_Read_0"] + f["Counter_Read_1"], 4 * ((1LL << (l - 1)) - 1));
        EXPECT_EQ(f["Counter_Read_Msb_0"] + f["Counter_Read_Msb_1"], 4 * m - 1);
        EXPECT_EQ(f["Counter_Write_Msb_0"] + f["Counter_Write_Msb_1"], 5);
        EXPECT_EQ(f["Down_Column"], 2 * (3 * l - 2) + (3 * l - 3));
        EXPECT_EQ(f["Counter_Return_Column_Start"], 2);
        EXPECT_EQ(f["Counter_Return_Column"], 2 * (l - 1));
        EXPECT_EQ(f["Counter_Return_Column_End"], 2);
        // all-0s chain l-1, left-edge writers 2^l, copy/msd writers sum 4*2^i.
        long long writers = (l - 1) + (1LL << l);
        for (long long i = 1; i <= l - 2; ++i) writers += 4 * (1LL << i);
        EXPECT_EQ(f["Counter_Write_0"] + f["Counter_Write_1"], writers);
    }
    auto p = compute_params(11, 56);
    auto gs = gen_counter_units(p);
    int copy_msb = 0;
    for (const auto& g : gs)
        if (g.family.rfind("Counter_Read_Msb", 0) == 0 && g.input->label.rfind("copy,", 0) == 0) ++copy_msb;
    EXPECT_EQ(copy_msb, 6);
}

TEST(ReturnRow, GadgetCounts) {
    EXPECT_EQ(gen_return_row(compute_params(3, 49)).size(), 1u);
    EXPECT_EQ(gen_return_row(compute_params(11, 56)).size(), 3u);
    auto two = family_counts(gen_return_row(compute_params(6, 100)));
    EXPECT_EQ(two["Return_Row_Start"], 1);
    EXPECT_EQ(two["Return_Row_End"], 1);
    EXPECT_EQ(two["Return_Row"], 0);
}

TEST(Roof, GadgetCounts) {
    auto p = compute_params(11, 56);
    auto f = family_counts(gen_roof(p));
    EXPECT_EQ(f["Roof_Left_Shingle"], 4);
    EXPECT_EQ(f["Roof_Chimney"], 3);
    EXPECT_EQ(f["Roof_Filler"], 2);
    EXPECT_EQ(f["Up_Column"], 2 + p.r + 2);
    EXPECT_EQ(f["Roof_Right_Shingle"], 6);
    auto zero = compute_params(3, 50);
    ASSERT_EQ(zero.r, 0);
    EXPECT_EQ(family_counts(gen_roof(zero))["Roof_Right_Shingle"], 0);
}

TEST(TileSet, SizeMatchesLoopTally) {
    for (auto [k, N] : std::vector<std::pair<long long, long long>>{{11, 56}, {3, 49}, {3, 50}, {6, 64}, {12, 54}, {7, 120}, {6, 4096}}) {
        auto g = generate_tileset(k, N);
        EXPECT_EQ(static_cast<long long>(g.tas.tiles.size() + g.merged), tally(g.params)) << k << "x" << N;
    }
    auto g = generate_tileset(11, 56);
    EXPECT_EQ(g.merged, 0u);
    EXPECT_EQ(g.tas.tiles.size(), 479u);
}

TEST(TileSet, SeedIsTheFarLeftStartTileAtOrigin) {
    auto g = generate_tileset(11, 56);
    EXPECT_EQ(g.tas.seed_pos, (Vec3{0, 0, 0}));
    EXPECT_EQ(tile_family(g.tas.tiles[g.tas.seed_tile].name), "Seed_Start_2");
    EXPECT_EQ(g.tas.temperature, 1);
}

TEST(Gadgets, InputsAreUniquePerSideAndLabel) {
    for (auto [k, N] : std::vector<std::pair<long long, long long>>{{11, 56}, {3, 49}, {12, 500}}) {
        auto p = compute_params(k, N);
        std::set<std::pair<int, std::string>> inputs;
        int without_input = 0;
        for (const auto& g : gen_all(p)) {
            if (!g.input) {
                ++without_input;
                EXPECT_EQ(g.unit, "seed");
                continue;
            }
            EXPECT_TRUE(inputs.insert({idx(g.input->side), g.input->label}).second) << g.name;
        }
        EXPECT_EQ(without_input, 1);
    }
}

TEST(Gadgets, CellsFormATreeFromTheInputCell) {
    auto p = compute_params(11, 56);
    for (const auto& g : gen_all(p)) {
        std::set<Vec3> seen;
        for (std::size_t j = 0; j < g.cells.size(); ++j) {
            const auto& c = g.cells[j];
            EXPECT_TRUE(seen.insert(c.rel).second) << g.name;
            if (j == 0) continue;
            ASSERT_GE(c.parent, 0);
            ASSERT_LT(static_cast<std::size_t>(c.parent), j);
            EXPECT_EQ(g.cells[static_cast<std::size_t>(c.parent)].rel + offset(c.from_parent), c.rel);
        }
        EXPECT_LE(g.outputs.size(), 3u);
        int lo = 0, hi = 0;
        for (const auto& c : g.cells) lo = std::min(lo, c.rel.z), hi = std::max(hi, c.rel.z);
        EXPECT_LE(hi - lo, 1) << g.name;
    }
}
