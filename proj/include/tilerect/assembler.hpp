#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tilerect/atam.hpp"

namespace tilerect {

// Half-open box in the vertical frame.
struct Box {
    int x0 = 0, x1 = 0, y0 = 0, y1 = 0, z0 = 0, z1 = 2;
    bool contains(const Vec3& p) const { return p.x >= x0 && p.x < x1 && p.y >= y0 && p.y < y1 && p.z >= z0 && p.z < z1; }
};

Box default_budget(long long k, long long N);  // [-2,k+2) x [-2,N+2) x {0,1}

struct AssemblySequence {
    std::vector<FrontierEntry> steps;  // steps[0] is the seed
    Assembly result;
    std::optional<Vec3> escape;        // first attachable position outside the budget
};

AssemblySequence run_policy_sequence(const TAS& T, std::optional<Box> budget = std::nullopt);
AssemblySequence run_random_sequence(const TAS& T, std::uint64_t seed, std::optional<Box> budget = std::nullopt);
// Replays steps from the seed, checking each is in the frontier of its prefix.
Assembly replay(const TAS& T, const std::vector<FrontierEntry>& steps);
// A legal sequence that ends by placing alpha's tile at target (tau = 1).
std::vector<FrontierEntry> witness_sequence(const TAS& T, const Assembly& alpha, const Vec3& target);

struct Conflict {
    Vec3 pos;
    TileId expected;  // tile of the reference terminal assembly
    TileId other;     // tile that can attach there first in some producible assembly
    Vec3 via;         // neighbour it binds to
};

struct ClosureReport {
    std::map<Vec3, std::vector<TileId>> cell_types;
    std::vector<Vec3> conflicts;
    std::vector<Conflict> details;
    std::vector<Vec3> domain;
    bool terminal = false;
    std::optional<Vec3> escape;
    Assembly configuration;
};

// Exact tau=1 closure: one terminal assembly plus every placement that some
// producible sub-assembly admits at an occupied site.
ClosureReport union_closure(const TAS& T, const Box& budget);
// Least fixed point ignoring occupancy; over-approximates producibility.
ClosureReport naive_union_closure(const TAS& T, const Box& budget);

enum class Verdict { DirectedAndCorrect, Conflict, Escape, NotTerminal, WrongShape };
std::string verdict_name(Verdict v);
int verdict_exit_code(Verdict v);

struct DirectedReport {
    Verdict verdict = Verdict::NotTerminal;
    ClosureReport closure;
};

DirectedReport check_directed(const TAS& T, long long k, long long N);
DirectedReport check_directed(const TAS& T, long long k, long long N, const Box& budget);

struct DeterminismReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

DeterminismReport check_conditional_determinism(const TAS& T, const AssemblySequence& seq);

// Policy run plus conditional determinism; a certificate of directedness only when it passes.
struct PolicyReport {
    Verdict verdict = Verdict::NotTerminal;
    AssemblySequence sequence;
    DeterminismReport determinism;
    std::string note;
};
PolicyReport check_policy(const TAS& T, long long k, long long N);

// Vertical frame (x < k, y < N) to the formal frame (row = y, column = x).
inline Vec3 to_formal(const Vec3& v) { return {v.y, v.x, v.z}; }
bool shape_check(const Assembly& a, long long k, long long N);

}  // namespace tilerect
