#include <gtest/gtest.h>

#include <random>

#include "tilerect/assembler.hpp"
#include "tilerect/rectgen.hpp"

using namespace tilerect;

namespace {

TileType tile(std::string name, std::initializer_list<std::pair<Dir, Glue>> glues) {
    TileType t;
    t.name = std::move(name);
    for (const auto& [d, g] : glues) t.glue(d) = g;
    return t;
}

TAS make(std::vector<TileType> tiles) {
    TAS T;
    T.tiles = TileSet(std::move(tiles));
    return T;
}

// Seed binds east and north; whichever of the last two tiles lands last binds on two sides.
TAS two_sided_square() {
    return make({tile("seed", {{Dir::E, {"a", 1}}, {Dir::N, {"b", 1}}}), tile("east", {{Dir::W, {"a", 1}}, {Dir::N, {"c", 1}}}),
                 tile("north", {{Dir::S, {"b", 1}}, {Dir::E, {"d", 1}}}), tile("corner", {{Dir::S, {"c", 1}}, {Dir::W, {"d", 1}}})});
}

const GeneratedTileSet& t_11_56() {
    static const GeneratedTileSet g = generate_tileset(11, 56);
    return g;
}

std::vector<Gadget> without(const std::vector<Gadget>& all, auto pred) {
    std::vector<Gadget> out;
    for (const auto& g : all)
        if (!pred(g)) out.push_back(g);
    return out;
}

}  // namespace

TEST(Policy, SingleTileSystemStopsAtTheSeed) {
    auto T = make({tile("only", {{Dir::N, {"x", 1}}})});
    auto seq = run_policy_sequence(T);
    EXPECT_EQ(seq.steps.size(), 1u);
    EXPECT_EQ(seq.result.size(), 1u);
    EXPECT_FALSE(seq.escape);
}

TEST(Policy, GeneratedRectangleIsExactlyKByN) {
    const auto& g = t_11_56();
    auto seq = run_policy_sequence(g.tas);
    EXPECT_TRUE(is_terminal(g.tas, seq.result));
    EXPECT_TRUE(shape_check(seq.result, 11, 56));
    EXPECT_EQ(replay(g.tas, seq.steps), seq.result);
}

TEST(Policy, SingleDigitConstruction) {
    auto g = generate_tileset(3, 49);
    auto seq = run_policy_sequence(g.tas);
    EXPECT_TRUE(is_terminal(g.tas, seq.result));
    EXPECT_TRUE(shape_check(seq.result, 3, 49));
}

TEST(Policy, RandomOrdersReachThePolicyResult) {
    const auto& g = t_11_56();
    auto ref = run_policy_sequence(g.tas).result;
    for (std::uint64_t seed : {1u, 2u, 77u}) EXPECT_EQ(run_random_sequence(g.tas, seed).result, ref) << seed;
}

TEST(Replay, RejectsStepsOutsideTheFrontier) {
    auto T = two_sided_square();
    std::vector<FrontierEntry> steps{{{0, 0, 0}, 0}, {{1, 1, 0}, 3}};
    EXPECT_THROW(replay(T, steps), std::invalid_argument);
}

TEST(Closure, SingleTileDomainIsTheOrigin) {
    auto T = make({tile("only", {})});
    auto c = union_closure(T, Box{-2, 3, -2, 3, 0, 2});
    EXPECT_TRUE(c.conflicts.empty());
    EXPECT_TRUE(c.terminal);
    ASSERT_EQ(c.domain.size(), 1u);
    EXPECT_EQ(c.domain[0], (Vec3{0, 0, 0}));
}

TEST(Closure, SharedInputWithDifferentOutputsConflicts) {
    auto T = make({tile("seed", {{Dir::E, {"a", 1}}}), tile("x", {{Dir::W, {"a", 1}}, {Dir::E, {"b", 1}}}),
                   tile("y", {{Dir::W, {"a", 1}}, {Dir::N, {"c", 1}}})});
    auto c = union_closure(T, Box{-3, 4, -3, 4, 0, 2});
    ASSERT_FALSE(c.conflicts.empty());
    EXPECT_EQ(c.conflicts[0], (Vec3{1, 0, 0}));
}

TEST(Closure, BlockedAlternativesAreNotConflicts) {
    // Two routes to the corner carry the same tile, so order does not matter.
    auto c = union_closure(two_sided_square(), Box{-2, 4, -2, 4, 0, 2});
    EXPECT_TRUE(c.conflicts.empty());
    EXPECT_EQ(c.configuration.size(), 4u);
}

TEST(Closure, GeneratedRectangleIsDirected) {
    const auto& g = t_11_56();
    auto rep = check_directed(g.tas, 11, 56);
    EXPECT_EQ(rep.verdict, Verdict::DirectedAndCorrect);
    EXPECT_TRUE(rep.closure.conflicts.empty());
    EXPECT_TRUE(rep.closure.terminal);
    long long slab = 0;
    for (const auto& p : rep.closure.domain) slab += p.z == 0;
    EXPECT_EQ(slab, 11 * 56);
}

TEST(Closure, AgreesWithPolicy) {
    const auto& g = t_11_56();
    auto closure = check_directed(g.tas, 11, 56);
    auto policy = check_policy(g.tas, 11, 56);
    EXPECT_EQ(policy.verdict, Verdict::DirectedAndCorrect);
    EXPECT_TRUE(policy.determinism.ok());
    EXPECT_EQ(closure.closure.configuration, policy.sequence.result);
}

TEST(Closure, NaiveClosureReportsSpuriousTrouble) {
    // Ignoring occupancy lets guessed tiles keep growing: the naive fixed point
    // either leaves the budget or sees alternatives at occupied sites.
    const auto& g = t_11_56();
    auto naive = naive_union_closure(g.tas, default_budget(11, 56));
    EXPECT_TRUE(naive.escape || !naive.conflicts.empty());
    EXPECT_TRUE(union_closure(g.tas, default_budget(11, 56)).conflicts.empty());
}

TEST(Verdict, RoofDeletionIsNotCorrect) {
    auto p = compute_params(11, 56);
    auto g = build_tileset(p, without(gen_all(p), [](const Gadget& x) { return x.unit == "roof"; }));
    auto v = check_directed(g.tas, 11, 56).verdict;
    EXPECT_TRUE(v == Verdict::NotTerminal || v == Verdict::WrongShape) << verdict_name(v);
}

TEST(Verdict, ShrunkenBudgetEscapes) {
    const auto& g = t_11_56();
    Box b = default_budget(11, 56);
    b.y1 = 30;
    auto rep = check_directed(g.tas, 11, 56, b);
    EXPECT_EQ(rep.verdict, Verdict::Escape);
    ASSERT_TRUE(rep.closure.escape);
    EXPECT_FALSE(b.contains(*rep.closure.escape));
}

TEST(Verdict, WrongHeightIsWrongShape) {
    EXPECT_EQ(check_directed(t_11_56().tas, 11, 55).verdict, Verdict::WrongShape);
}

TEST(Verdict, ExitCodes) {
    EXPECT_EQ(verdict_exit_code(Verdict::DirectedAndCorrect), 0);
    EXPECT_EQ(verdict_exit_code(Verdict::Conflict), 2);
    EXPECT_EQ(verdict_exit_code(Verdict::Escape), 3);
    EXPECT_EQ(verdict_exit_code(Verdict::NotTerminal), 4);
    EXPECT_EQ(verdict_exit_code(Verdict::WrongShape), 4);
}

TEST(Determinism, GeneratedPolicyRunHasNoViolations) {
    const auto& g = t_11_56();
    EXPECT_TRUE(check_conditional_determinism(g.tas, run_policy_sequence(g.tas)).ok());
}

TEST(Determinism, TwoSidedBindingIsFlagged) {
    auto T = two_sided_square();
    auto rep = check_conditional_determinism(T, run_policy_sequence(T));
    ASSERT_FALSE(rep.ok());
    bool strength = false;
    for (const auto& v : rep.violations) strength |= v.find("strength 2") != std::string::npos;
    EXPECT_TRUE(strength);
}

TEST(Determinism, SharedInputGlueIsFlagged) {
    auto T = make({tile("seed", {{Dir::E, {"a", 1}}}), tile("x", {{Dir::W, {"a", 1}}}), tile("y", {{Dir::W, {"a", 1}}, {Dir::N, {"q", 1}}})});
    AssemblySequence seq;
    seq.steps = {{{0, 0, 0}, 0}, {{1, 0, 0}, 1}};
    auto rep = check_conditional_determinism(T, seq);
    ASSERT_EQ(rep.violations.size(), 1u);
    EXPECT_NE(rep.violations[0].find("2 tile types share input side W glue a"), std::string::npos);
    EXPECT_THROW(run_policy_sequence(T), std::runtime_error);
}

TEST(Shape, SlabAndBoxRules) {
    Assembly a;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 4; ++y) a.place({x, y, 0}, 0);
    EXPECT_TRUE(shape_check(a, 3, 4));
    a.place({1, 1, 1}, 0);
    EXPECT_TRUE(shape_check(a, 3, 4));
    Assembly missing = a;
    missing.erase({2, 3, 0});
    EXPECT_FALSE(shape_check(missing, 3, 4));
    Assembly outside = a;
    outside.place({3, 0, 1}, 0);
    EXPECT_FALSE(shape_check(outside, 3, 4));
    EXPECT_FALSE(shape_check(a, 4, 3));
}

TEST(Witness, SequencesEndAtTheTargetAndReplay) {
    const auto& g = t_11_56();
    auto alpha = run_policy_sequence(g.tas).result;
    auto cells = alpha.sorted();
    std::mt19937 rng(2024);
    for (int i = 0; i < 50; ++i) {
        const auto& [p, t] = cells[rng() % cells.size()];
        auto steps = witness_sequence(g.tas, alpha, p);
        ASSERT_FALSE(steps.empty());
        EXPECT_EQ(steps.back(), (FrontierEntry{p, t}));
        auto a = replay(g.tas, steps);
        for (const auto& [q, u] : a.cells()) EXPECT_EQ(alpha.at(q), u);
    }
}

TEST(Decode, CounterRowsCountUpFromTheStart) {
    const auto& g = t_11_56();
    auto alpha = run_policy_sequence(g.tas).result;
    auto bands = decode_counter(g.tas, alpha, g.params);
    ASSERT_EQ(bands.size(), 5u);
    for (int b = 0; b < 4; ++b) {
        ASSERT_TRUE(bands[b].value()) << b;
        EXPECT_EQ(*bands[b].value(), 23 + b);
    }
    // 26 + 1 carries out of the top digit: the band holds zeros below an unwritten msd.
    EXPECT_FALSE(bands[4].value());
    EXPECT_EQ(bands[4].digits[0], 0);
    EXPECT_EQ(bands[4].digits[1], 0);
    EXPECT_FALSE(bands[4].digits[2]);
}
