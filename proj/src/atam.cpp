#include "tilerect/atam.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>

namespace tilerect {

Vec3 offset(Dir d) {
    switch (d) {
        case Dir::N: return {0, 1, 0};
        case Dir::E: return {1, 0, 0};
        case Dir::S: return {0, -1, 0};
        case Dir::W: return {-1, 0, 0};
        case Dir::U: return {0, 0, 1};
        case Dir::D: return {0, 0, -1};
    }
    return {};
}

Dir opposite(Dir d) {
    switch (d) {
        case Dir::N: return Dir::S;
        case Dir::E: return Dir::W;
        case Dir::S: return Dir::N;
        case Dir::W: return Dir::E;
        case Dir::U: return Dir::D;
        case Dir::D: return Dir::U;
    }
    return d;
}

char dir_char(Dir d) { return "NESWUD"[idx(d)]; }

Dir parse_dir(char c) {
    switch (c) {
        case 'N': return Dir::N;
        case 'E': return Dir::E;
        case 'S': return Dir::S;
        case 'W': return Dir::W;
        case 'U': return Dir::U;
        case 'D': return Dir::D;
        default: throw std::invalid_argument(std::string("unknown direction '") + c + "'");
    }
}

bool binds(const Glue& a, const Glue& b) {
    return a.strength > 0 && a.strength == b.strength && a.label == b.label;
}

TileSet::TileSet(std::vector<TileType> tiles) : tiles_(std::move(tiles)) {
    for (std::size_t i = 0; i < tiles_.size(); ++i) {
        const auto& t = tiles_[i];
        if (!by_name_.emplace(t.name, static_cast<TileId>(i)).second)
            throw std::invalid_argument("duplicate tile name: " + t.name);
        for (Dir d : kDirs) {
            const Glue& g = t.glue(d);
            if (!g.is_null()) index_[idx(d)][{g.label, g.strength}].push_back(static_cast<TileId>(i));
        }
    }
}

std::optional<TileId> TileSet::find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

const std::vector<TileId>& TileSet::with_glue(Dir d, const Glue& g) const {
    static const std::vector<TileId> none;
    if (g.is_null()) return none;
    const auto& m = index_[idx(d)];
    auto it = m.find({g.label, g.strength});
    return it == m.end() ? none : it->second;
}

std::vector<std::pair<std::string, std::string>> TileSet::duplicate_sides() const {
    std::map<std::array<Glue, 6>, std::string> seen;
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& t : tiles_) {
        auto [it, fresh] = seen.emplace(t.sides, t.name);
        if (!fresh) out.emplace_back(it->second, t.name);
    }
    return out;
}

std::optional<TileId> Assembly::at(const Vec3& p) const {
    auto it = cells_.find(p);
    if (it == cells_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::pair<Vec3, TileId>> Assembly::sorted() const {
    std::vector<std::pair<Vec3, TileId>> v(cells_.begin(), cells_.end());
    std::sort(v.begin(), v.end());
    return v;
}

Assembly TAS::seed_assembly() const {
    Assembly a;
    a.place(seed_pos, seed_tile);
    return a;
}

bool TAS::position_allowed(const Vec3& p) const {
    if (planar) return p.z == 0;
    if (barely3d) return p.z == 0 || p.z == 1;
    return true;
}

bool BindingGraph::connected() const {
    if (vertices.empty()) return false;
    std::vector<std::vector<int>> adj(vertices.size());
    for (const auto& e : edges) {
        adj[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    std::vector<char> seen(vertices.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[static_cast<std::size_t>(u)])
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++count;
                stack.push_back(v);
            }
    }
    return count == vertices.size();
}

int BindingGraph::min_cut() const {
    const int n = static_cast<int>(vertices.size());
    if (n <= 1) return std::numeric_limits<int>::max();
    std::vector<std::vector<long long>> w(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
    for (const auto& e : edges) {
        w[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] += e.weight;
        w[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] += e.weight;
    }
    std::vector<int> live(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) live[static_cast<std::size_t>(i)] = i;
    long long best = std::numeric_limits<long long>::max();
    while (live.size() > 1) {
        std::vector<long long> key(static_cast<std::size_t>(n), 0);
        std::vector<char> added(static_cast<std::size_t>(n), 0);
        int prev = -1, last = -1;
        for (std::size_t step = 0; step < live.size(); ++step) {
            int pick = -1;
            for (int v : live)
                if (!added[static_cast<std::size_t>(v)] && (pick < 0 || key[static_cast<std::size_t>(v)] > key[static_cast<std::size_t>(pick)])) pick = v;
            if (pick < 0) break;
            added[static_cast<std::size_t>(pick)] = 1;
            prev = last;
            last = pick;
            if (step + 1 == live.size()) best = std::min(best, key[static_cast<std::size_t>(pick)]);
            for (int v : live)
                if (!added[static_cast<std::size_t>(v)]) key[static_cast<std::size_t>(v)] += w[static_cast<std::size_t>(pick)][static_cast<std::size_t>(v)];
        }
        // merge last into prev
        for (int v : live) {
            w[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v)] += w[static_cast<std::size_t>(last)][static_cast<std::size_t>(v)];
            w[static_cast<std::size_t>(v)][static_cast<std::size_t>(prev)] = w[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v)];
        }
        live.erase(std::find(live.begin(), live.end(), last));
    }
    return static_cast<int>(best);
}

BindingGraph binding_graph(const TileSet& ts, const Assembly& a) {
    if (a.empty()) throw std::invalid_argument("empty assembly");
    BindingGraph g;
    auto cells = a.sorted();
    std::unordered_map<Vec3, int, Vec3Hash> index;
    for (const auto& [p, t] : cells) {
        index[p] = static_cast<int>(g.vertices.size());
        g.vertices.push_back(p);
    }
    for (const auto& [p, t] : cells) {
        // Positive directions only, so each adjacency is visited once.
        for (Dir d : {Dir::N, Dir::E, Dir::U}) {
            auto it = index.find(p + offset(d));
            if (it == index.end()) continue;
            const Glue& mine = ts[t].glue(d);
            const Glue& theirs = ts[*a.at(p + offset(d))].glue(opposite(d));
            if (binds(mine, theirs)) g.edges.push_back({index[p], it->second, mine.strength});
        }
    }
    return g;
}

bool is_stable(const TileSet& ts, const Assembly& a, int tau) {
    auto g = binding_graph(ts, a);
    if (g.vertices.size() == 1) return true;
    if (tau <= 1) return g.connected();
    return g.min_cut() >= tau;
}

int binding_strength(const TileSet& ts, const Assembly& a, const Vec3& p, TileId t) {
    int total = 0;
    for (Dir d : kDirs) {
        auto q = a.at(p + offset(d));
        if (!q) continue;
        const Glue& mine = ts[t].glue(d);
        if (binds(mine, ts[*q].glue(opposite(d)))) total += mine.strength;
    }
    return total;
}

std::vector<TileId> attachable_at(const TAS& T, const Assembly& a, const Vec3& p) {
    std::vector<TileId> out;
    if (a.contains(p) || !T.position_allowed(p)) return out;
    std::set<TileId> cand;
    for (Dir d : kDirs) {
        auto q = a.at(p + offset(d));
        if (!q) continue;
        for (TileId t : T.tiles.with_glue(d, T.tiles[*q].glue(opposite(d)))) cand.insert(t);
    }
    for (TileId t : cand)
        if (binding_strength(T.tiles, a, p, t) >= T.temperature) out.push_back(t);
    return out;
}

std::vector<FrontierEntry> frontier(const TAS& T, const Assembly& a) {
    std::set<Vec3> empties;
    for (const auto& [p, t] : a.cells())
        for (Dir d : kDirs) {
            Vec3 q = p + offset(d);
            if (!a.contains(q) && T.position_allowed(q)) empties.insert(q);
        }
    std::vector<FrontierEntry> out;
    for (const Vec3& q : empties)
        for (TileId t : attachable_at(T, a, q)) out.push_back({q, t});
    return out;
}

Assembly attach(const TAS& T, const Assembly& a, const Vec3& p, TileId t) {
    if (a.contains(p) || !T.position_allowed(p) || t < 0 || static_cast<std::size_t>(t) >= T.tiles.size() ||
        binding_strength(T.tiles, a, p, t) < T.temperature)
        throw std::invalid_argument("illegal attachment");
    Assembly b = a;
    b.place(p, t);
    return b;
}

bool is_terminal(const TAS& T, const Assembly& a) { return frontier(T, a).empty(); }

IncrementalFrontier::IncrementalFrontier(const TAS& T, Assembly start) : T_(&T), asm_(std::move(start)) {
    for (const auto& e : frontier(T, asm_)) open_[e.pos].push_back(e.tile);
}

void IncrementalFrontier::refresh(const Vec3& p) {
    auto c = attachable_at(*T_, asm_, p);
    if (c.empty())
        open_.erase(p);
    else
        open_[p] = std::move(c);
}

void IncrementalFrontier::attach(const Vec3& p, TileId t) {
    auto it = open_.find(p);
    if (it == open_.end() || std::find(it->second.begin(), it->second.end(), t) == it->second.end())
        throw std::invalid_argument("illegal attachment");
    asm_.place(p, t);
    open_.erase(it);
    // Only the six neighbours of p can change status.
    for (Dir d : kDirs) refresh(p + offset(d));
}

std::vector<FrontierEntry> IncrementalFrontier::entries() const {
    std::vector<FrontierEntry> out;
    for (const auto& [p, ts] : open_)
        for (TileId t : ts) out.push_back({p, t});
    return out;
}

}  // namespace tilerect
