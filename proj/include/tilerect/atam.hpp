#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tilerect {

// Side order is also the bit order used by the policy tie-break.
enum class Dir : std::uint8_t { N = 0, E = 1, S = 2, W = 3, U = 4, D = 5 };
inline constexpr std::array<Dir, 6> kDirs{Dir::N, Dir::E, Dir::S, Dir::W, Dir::U, Dir::D};

struct Vec3 {
    int x = 0, y = 0, z = 0;
    friend bool operator==(const Vec3&, const Vec3&) = default;
    friend auto operator<=>(const Vec3&, const Vec3&) = default;
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
};

struct Vec3Hash {
    std::size_t operator()(const Vec3& v) const noexcept {
        std::uint64_t h = static_cast<std::uint32_t>(v.x);
        h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(v.y);
        h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(v.z);
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

Vec3 offset(Dir d);
Dir opposite(Dir d);
char dir_char(Dir d);
Dir parse_dir(char c);
inline int idx(Dir d) { return static_cast<int>(d); }

struct Glue {
    std::string label;
    int strength = 0;
    bool is_null() const { return strength == 0; }
    friend bool operator==(const Glue&, const Glue&) = default;
    friend auto operator<=>(const Glue&, const Glue&) = default;
};

bool binds(const Glue& a, const Glue& b);

struct TileType {
    std::string name;
    std::array<Glue, 6> sides;
    const Glue& glue(Dir d) const { return sides[idx(d)]; }
    Glue& glue(Dir d) { return sides[idx(d)]; }
};

using TileId = int;

// Immutable after construction. Keeps a side/glue index for frontier queries.
class TileSet {
public:
    TileSet() = default;
    explicit TileSet(std::vector<TileType> tiles);

    std::size_t size() const { return tiles_.size(); }
    const TileType& operator[](TileId i) const { return tiles_[static_cast<std::size_t>(i)]; }
    const std::vector<TileType>& tiles() const { return tiles_; }
    std::optional<TileId> find(const std::string& name) const;

    // Tiles whose side `d` carries a glue that binds to `g`.
    const std::vector<TileId>& with_glue(Dir d, const Glue& g) const;

    // Pairs of tile names with identical sides (dedup lint).
    std::vector<std::pair<std::string, std::string>> duplicate_sides() const;

private:
    std::vector<TileType> tiles_;
    std::unordered_map<std::string, TileId> by_name_;
    std::array<std::map<std::pair<std::string, int>, std::vector<TileId>>, 6> index_;
};

// A partial map Z^3 -> TileId. Connectivity is not enforced here; see is_stable.
class Assembly {
public:
    using Map = std::unordered_map<Vec3, TileId, Vec3Hash>;

    bool empty() const { return cells_.empty(); }
    std::size_t size() const { return cells_.size(); }
    bool contains(const Vec3& p) const { return cells_.count(p) != 0; }
    std::optional<TileId> at(const Vec3& p) const;
    void place(const Vec3& p, TileId t) { cells_[p] = t; }
    void erase(const Vec3& p) { cells_.erase(p); }
    const Map& cells() const { return cells_; }
    std::vector<std::pair<Vec3, TileId>> sorted() const;
    friend bool operator==(const Assembly& a, const Assembly& b) { return a.cells_ == b.cells_; }

private:
    Map cells_;
};

struct TAS {
    TileSet tiles;
    TileId seed_tile = 0;
    Vec3 seed_pos{};
    int temperature = 1;
    bool barely3d = true;  // placements restricted to z in {0,1}
    bool planar = false;   // 2D: placements restricted to z == 0

    Assembly seed_assembly() const;
    bool position_allowed(const Vec3& p) const;
};

struct BindingGraph {
    std::vector<Vec3> vertices;
    struct Edge {
        int u, v, weight;
    };
    std::vector<Edge> edges;
    bool connected() const;
    int min_cut() const;  // Stoer-Wagner; 0 when disconnected, large for one vertex
};

BindingGraph binding_graph(const TileSet& ts, const Assembly& a);
bool is_stable(const TileSet& ts, const Assembly& a, int tau);

// Total strength a tile would bind with at p.
int binding_strength(const TileSet& ts, const Assembly& a, const Vec3& p, TileId t);

struct FrontierEntry {
    Vec3 pos;
    TileId tile;
    friend bool operator==(const FrontierEntry&, const FrontierEntry&) = default;
    friend auto operator<=>(const FrontierEntry&, const FrontierEntry&) = default;
};

// Sorted list of attachable (position, tile) pairs, recomputed from scratch.
std::vector<FrontierEntry> frontier(const TAS& T, const Assembly& a);

// Candidates at a single empty position.
std::vector<TileId> attachable_at(const TAS& T, const Assembly& a, const Vec3& p);

Assembly attach(const TAS& T, const Assembly& a, const Vec3& p, TileId t);
bool is_terminal(const TAS& T, const Assembly& a);

// Frontier maintained by per-attachment deltas.
class IncrementalFrontier {
public:
    IncrementalFrontier(const TAS& T, Assembly start);
    const Assembly& assembly() const { return asm_; }
    void attach(const Vec3& p, TileId t);
    std::vector<FrontierEntry> entries() const;
    const std::map<Vec3, std::vector<TileId>>& by_position() const { return open_; }
    bool empty() const { return open_.empty(); }

private:
    void refresh(const Vec3& p);
    const TAS* T_;
    Assembly asm_;
    std::map<Vec3, std::vector<TileId>> open_;
};

}  // namespace tilerect
