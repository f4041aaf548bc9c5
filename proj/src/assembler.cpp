#include "tilerect/assembler.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace tilerect {

Box default_budget(long long k, long long N) {
    return Box{-2, static_cast<int>(k + 2), -2, static_cast<int>(N + 2), 0, 2};
}

AssemblySequence run_policy_sequence(const TAS& T, std::optional<Box> budget) {
    AssemblySequence seq;
    seq.result = T.seed_assembly();
    seq.steps.push_back({T.seed_pos, T.seed_tile});
    // Two DFS stacks: any open z=0 site is served before any z=1 site.
    std::vector<Vec3> flat, raised;
    static constexpr std::array<Dir, 6> kPushOrder{Dir::D, Dir::U, Dir::W, Dir::S, Dir::E, Dir::N};
    auto open_around = [&](const Vec3& p) {
        for (Dir d : kPushOrder) {
            Vec3 q = p + offset(d);
            if (seq.result.contains(q) || !T.position_allowed(q)) continue;
            if (attachable_at(T, seq.result, q).empty()) continue;
            (q.z == 0 ? flat : raised).push_back(q);
        }
    };
    open_around(T.seed_pos);
    for (;;) {
        std::vector<Vec3>& st = flat.empty() ? raised : flat;
        if (st.empty()) break;
        Vec3 q = st.back();
        st.pop_back();
        if (seq.result.contains(q)) continue;
        auto cands = attachable_at(T, seq.result, q);
        if (cands.empty()) continue;
        if (cands.size() > 1) throw std::runtime_error("nondeterministic placement under policy");
        if (budget && !budget->contains(q)) {
            seq.escape = q;
            break;
        }
        seq.result.place(q, cands[0]);
        seq.steps.push_back({q, cands[0]});
        open_around(q);
    }
    return seq;
}

AssemblySequence run_random_sequence(const TAS& T, std::uint64_t seed, std::optional<Box> budget) {
    AssemblySequence seq;
    seq.steps.push_back({T.seed_pos, T.seed_tile});
    IncrementalFrontier F(T, T.seed_assembly());
    std::mt19937_64 rng(seed);
    while (!F.empty()) {
        auto entries = F.entries();
        if (budget)
            for (const auto& e : entries)
                if (!budget->contains(e.pos)) {
                    seq.escape = e.pos;
                    seq.result = F.assembly();
                    return seq;
                }
        std::uniform_int_distribution<std::size_t> pick(0, entries.size() - 1);
        const auto e = entries[pick(rng)];
        F.attach(e.pos, e.tile);
        seq.steps.push_back(e);
    }
    seq.result = F.assembly();
    return seq;
}

Assembly replay(const TAS& T, const std::vector<FrontierEntry>& steps) {
    if (steps.empty() || steps[0].pos != T.seed_pos || steps[0].tile != T.seed_tile)
        throw std::invalid_argument("sequence does not start at the seed");
    Assembly a = T.seed_assembly();
    for (std::size_t i = 1; i < steps.size(); ++i) a = attach(T, a, steps[i].pos, steps[i].tile);
    return a;
}

namespace {

// Adjacency of alpha's binding graph.
std::vector<Vec3> bound_neighbours(const TileSet& ts, const Assembly& a, const Vec3& p) {
    std::vector<Vec3> out;
    TileId t = *a.at(p);
    for (Dir d : kDirs) {
        Vec3 q = p + offset(d);
        auto u = a.at(q);
        if (u && binds(ts[t].glue(d), ts[*u].glue(opposite(d)))) out.push_back(q);
    }
    return out;
}

std::unordered_set<Vec3, Vec3Hash> reachable_avoiding(const TileSet& ts, const Assembly& a, const Vec3& from,
                                                      const Vec3& banned) {
    std::unordered_set<Vec3, Vec3Hash> seen;
    if (from == banned) return seen;
    std::vector<Vec3> stack{from};
    seen.insert(from);
    while (!stack.empty()) {
        Vec3 p = stack.back();
        stack.pop_back();
        for (const Vec3& q : bound_neighbours(ts, a, p))
            if (q != banned && seen.insert(q).second) stack.push_back(q);
    }
    return seen;
}

}  // namespace

std::vector<FrontierEntry> witness_sequence(const TAS& T, const Assembly& alpha, const Vec3& target) {
    std::unordered_map<Vec3, Vec3, Vec3Hash> parent;
    std::deque<Vec3> queue{T.seed_pos};
    parent[T.seed_pos] = T.seed_pos;
    while (!queue.empty()) {
        Vec3 p = queue.front();
        queue.pop_front();
        if (p == target) break;
        for (const Vec3& q : bound_neighbours(T.tiles, alpha, p))
            if (parent.emplace(q, p).second) queue.push_back(q);
    }
    if (!parent.count(target)) throw std::invalid_argument("target not connected to the seed");
    std::vector<FrontierEntry> path;
    for (Vec3 p = target;; p = parent[p]) {
        path.push_back({p, *alpha.at(p)});
        if (p == T.seed_pos) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

ClosureReport union_closure(const TAS& T, const Box& budget) {
    if (T.temperature != 1) throw std::invalid_argument("closure is exact only at temperature 1");
    ClosureReport rep;
    IncrementalFrontier F(T, T.seed_assembly());
    std::set<Vec3> racing;
    while (!F.empty()) {
        const auto& [p, cands] = *F.by_position().begin();
        if (!budget.contains(p)) {
            rep.escape = p;
            break;
        }
        Vec3 at = p;
        if (cands.size() > 1) {
            racing.insert(at);
            for (std::size_t i = 1; i < cands.size(); ++i) rep.details.push_back({at, cands[0], cands[i], at});
        }
        F.attach(at, cands[0]);
    }
    const Assembly& alpha = F.assembly();
    rep.configuration = alpha;
    rep.terminal = F.empty() && !rep.escape;
    for (const auto& [p, t] : alpha.sorted()) {
        rep.domain.push_back(p);
        rep.cell_types[p].push_back(t);
    }
    if (!rep.escape) {
        std::unordered_map<Vec3, std::unordered_set<Vec3, Vec3Hash>, Vec3Hash> cache;
        for (const auto& [p, tp] : alpha.sorted()) {
            if (p == T.seed_pos) continue;
            for (Dir d : kDirs) {
                Vec3 q = p + offset(d);
                auto tq = alpha.at(q);
                if (!tq) continue;
                for (TileId t : T.tiles.with_glue(d, T.tiles[*tq].glue(opposite(d)))) {
                    if (t == tp) continue;
                    auto it = cache.find(p);
                    if (it == cache.end()) it = cache.emplace(p, reachable_avoiding(T.tiles, alpha, T.seed_pos, p)).first;
                    if (!it->second.count(q)) continue;
                    rep.details.push_back({p, tp, t, q});
                    racing.insert(p);
                    auto& types = rep.cell_types[p];
                    if (std::find(types.begin(), types.end(), t) == types.end()) types.push_back(t);
                }
            }
        }
    }
    rep.conflicts.assign(racing.begin(), racing.end());
    return rep;
}

ClosureReport naive_union_closure(const TAS& T, const Box& budget) {
    ClosureReport rep;
    std::set<std::pair<Vec3, TileId>> in;
    std::vector<std::pair<Vec3, TileId>> work{{T.seed_pos, T.seed_tile}};
    in.insert(work[0]);
    while (!work.empty() && !rep.escape) {
        auto [p, t] = work.back();
        work.pop_back();
        for (Dir d : kDirs) {
            Vec3 q = p + offset(d);
            if (!T.position_allowed(q) || q == T.seed_pos) continue;
            const auto& cands = T.tiles.with_glue(opposite(d), T.tiles[t].glue(d));
            if (cands.empty()) continue;
            if (!budget.contains(q)) {
                rep.escape = q;
                break;
            }
            for (TileId u : cands)
                if (in.insert({q, u}).second) work.push_back({q, u});
        }
    }
    for (const auto& [p, t] : in) rep.cell_types[p].push_back(t);
    for (const auto& [p, ts] : rep.cell_types) {
        rep.domain.push_back(p);
        if (ts.size() > 1) rep.conflicts.push_back(p);
    }
    if (rep.conflicts.empty() && !rep.escape) {
        for (const auto& [p, ts] : rep.cell_types) rep.configuration.place(p, ts[0]);
        rep.terminal = is_terminal(T, rep.configuration);
    }
    return rep;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::DirectedAndCorrect: return "directed-and-correct";
        case Verdict::Conflict: return "conflict";
        case Verdict::Escape: return "escape";
        case Verdict::NotTerminal: return "not-terminal";
        case Verdict::WrongShape: return "wrong-shape";
    }
    return "?";
}

int verdict_exit_code(Verdict v) {
    switch (v) {
        case Verdict::DirectedAndCorrect: return 0;
        case Verdict::Conflict: return 2;
        case Verdict::Escape: return 3;
        case Verdict::NotTerminal:
        case Verdict::WrongShape: return 4;
    }
    return 1;
}

DirectedReport check_directed(const TAS& T, long long k, long long N) {
    return check_directed(T, k, N, default_budget(k, N));
}

DirectedReport check_directed(const TAS& T, long long k, long long N, const Box& budget) {
    DirectedReport rep;
    rep.closure = union_closure(T, budget);
    if (rep.closure.escape)
        rep.verdict = Verdict::Escape;
    else if (!rep.closure.conflicts.empty())
        rep.verdict = Verdict::Conflict;
    else if (!rep.closure.terminal)
        rep.verdict = Verdict::NotTerminal;
    else if (!shape_check(rep.closure.configuration, k, N))
        rep.verdict = Verdict::WrongShape;
    else
        rep.verdict = Verdict::DirectedAndCorrect;
    return rep;
}

DeterminismReport check_conditional_determinism(const TAS& T, const AssemblySequence& seq) {
    DeterminismReport rep;
    if (seq.steps.empty()) {
        rep.violations.push_back("empty sequence");
        return rep;
    }
    Assembly a;
    a.place(seq.steps[0].pos, seq.steps[0].tile);
    for (std::size_t i = 1; i < seq.steps.size(); ++i) {
        const auto& [p, t] = seq.steps[i];
        std::vector<Dir> sides;
        int strength = 0;
        for (Dir d : kDirs) {
            auto q = a.at(p + offset(d));
            if (q && binds(T.tiles[t].glue(d), T.tiles[*q].glue(opposite(d)))) {
                sides.push_back(d);
                strength += T.tiles[t].glue(d).strength;
            }
        }
        std::string where = "step " + std::to_string(i) + " (" + T.tiles[t].name + ")";
        if (strength != T.temperature)
            rep.violations.push_back(where + ": binds with strength " + std::to_string(strength));
        if (sides.size() != 1) {
            rep.violations.push_back(where + ": no unique input side");
        } else {
            Dir d = sides[0];
            const Glue& g = T.tiles[*a.at(p + offset(d))].glue(opposite(d));
            auto n = T.tiles.with_glue(d, g).size();
            if (n != 1)
                rep.violations.push_back(where + ": " + std::to_string(n) + " tile types share input side " + dir_char(d) +
                                         " glue " + g.label);
        }
        a.place(p, t);
    }
    if (!is_terminal(T, a)) rep.violations.push_back("result is not terminal");
    return rep;
}

PolicyReport check_policy(const TAS& T, long long k, long long N) {
    PolicyReport rep;
    try {
        rep.sequence = run_policy_sequence(T, default_budget(k, N));
    } catch (const std::runtime_error& e) {
        rep.verdict = Verdict::Conflict;
        rep.note = e.what();
        return rep;
    }
    if (rep.sequence.escape) {
        rep.verdict = Verdict::Escape;
        return rep;
    }
    rep.determinism = check_conditional_determinism(T, rep.sequence);
    if (!is_terminal(T, rep.sequence.result))
        rep.verdict = Verdict::NotTerminal;
    else if (!rep.determinism.ok())
        rep.verdict = Verdict::Conflict;
    else if (!shape_check(rep.sequence.result, k, N))
        rep.verdict = Verdict::WrongShape;
    else
        rep.verdict = Verdict::DirectedAndCorrect;
    return rep;
}

bool shape_check(const Assembly& a, long long k, long long N) {
    long long slab = 0;
    for (const auto& [p, t] : a.cells()) {
        Vec3 f = to_formal(p);
        if (f.x < 0 || f.x >= N || f.y < 0 || f.y >= k || f.z < 0 || f.z > 1) return false;
        if (f.z == 0) ++slab;
    }
    return slab == k * N;
}

}  // namespace tilerect
