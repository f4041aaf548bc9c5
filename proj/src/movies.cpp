#include "tilerect/movies.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace tilerect {

BigInt binomial(long long n, long long r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    BigInt v = 1;
    for (long long i = 1; i <= r; ++i) v = v * (n - r + i) / i;
    return v;
}

BigInt catalan(long long p) {
    if (p < 0) throw std::invalid_argument("catalan index must be non-negative");
    return binomial(2 * p, p) / (p + 1);
}

bool is_balanced(const std::string& s) {
    int depth = 0;
    for (char c : s) {
        if (c == '(')
            ++depth;
        else if (c == ')') {
            if (--depth < 0) return false;
        } else
            return false;
    }
    return depth == 0;
}

namespace {

std::vector<int> without(std::vector<int> E, int excluded) {
    std::sort(E.begin(), E.end());
    auto it = std::find(E.begin(), E.end(), excluded);
    if (it == E.end()) throw std::invalid_argument("excluded element not in E");
    E.erase(it);
    return E;
}

// partner[i] for a balanced string.
std::vector<int> partners(const std::string& s) {
    if (!is_balanced(s)) throw std::invalid_argument("unbalanced parenthesis string: " + s);
    std::vector<int> out(s.size()), stack;
    for (int i = 0; i < static_cast<int>(s.size()); ++i) {
        if (s[static_cast<std::size_t>(i)] == '(') {
            stack.push_back(i);
        } else {
            out[static_cast<std::size_t>(i)] = stack.back();
            out[static_cast<std::size_t>(stack.back())] = i;
            stack.pop_back();
        }
    }
    return out;
}

int rank_of(const std::vector<int>& sorted, int v) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    if (it == sorted.end() || *it != v) return -1;
    return static_cast<int>(it - sorted.begin());
}

}  // namespace

std::string pairing_to_parens(const Pairing& P, const std::vector<int>& E, int excluded) {
    auto S = without(E, excluded);
    std::string x(S.size(), '?');
    for (auto [a, b] : P) {
        if (a > b) std::swap(a, b);
        int i = rank_of(S, a), j = rank_of(S, b);
        if (i < 0 || j < 0 || i == j) throw std::invalid_argument("pair element outside E minus excluded");
        if (x[static_cast<std::size_t>(i)] != '?' || x[static_cast<std::size_t>(j)] != '?') throw std::invalid_argument("overlapping pairs");
        x[static_cast<std::size_t>(i)] = '(';
        x[static_cast<std::size_t>(j)] = ')';
    }
    if (x.find('?') != std::string::npos) throw std::invalid_argument("pairing does not cover E minus excluded");
    for (auto [a, b] : P)
        for (auto [c, d] : P) {
            if (a > b) std::swap(a, b);
            if (c > d) std::swap(c, d);
            if (a < c && c < b && b < d) throw std::invalid_argument("non-nested pairing");
        }
    if (!is_balanced(x)) throw std::invalid_argument("non-nested pairing");
    return x;
}

std::vector<Pairing> enumerate_pairings(const std::vector<int>& E, int excluded) {
    if (E.size() % 2 == 0) throw std::invalid_argument("|E| must be odd");
    auto S = without(E, excluded);
    std::vector<Pairing> out;
    Pairing cur;
    std::vector<char> used(S.size(), 0);
    // Every perfect matching, then keep those with a balanced image.
    std::function<void()> rec = [&] {
        std::size_t i = 0;
        while (i < S.size() && used[i]) ++i;
        if (i == S.size()) {
            try {
                pairing_to_parens(cur, E, excluded);
                out.push_back(cur);
            } catch (const std::invalid_argument&) {
            }
            return;
        }
        used[i] = 1;
        for (std::size_t j = i + 1; j < S.size(); ++j) {
            if (used[j]) continue;
            used[j] = 1;
            cur.emplace_back(S[i], S[j]);
            rec();
            cur.pop_back();
            used[j] = 0;
        }
        used[i] = 0;
    };
    rec();
    return out;
}

std::vector<Endpoint> greedy_reconstruct(const CrossingSpec& spec, const std::string& x0, const std::string& x1) {
    std::vector<int> E = spec.E;
    std::sort(E.begin(), E.end());
    if (E.size() % 2 == 0) throw std::invalid_argument("|E| must be odd");
    const std::size_t len = E.size() - 1;
    if (x0.size() != len || x1.size() != len) throw std::invalid_argument("parenthesis strings must have length e-1");
    const std::array<std::vector<int>, 2> S{without(E, spec.f), without(E, spec.lst)};
    const std::array<std::vector<int>, 2> partner{partners(x0), partners(x1)};
    std::vector<Endpoint> pi{{0, spec.f}, {1, spec.f}};
    std::set<std::pair<int, int>> seen{{0, spec.f}, {1, spec.f}};
    int j = 1, r = spec.f;
    while (r != spec.lst) {
        int i = rank_of(S[static_cast<std::size_t>(j)], r);
        if (i < 0) break;
        int next = S[static_cast<std::size_t>(j)][static_cast<std::size_t>(partner[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])];
        if (!seen.insert({j, next}).second) break;
        r = next;
        pi.push_back({j, r});
        j ^= 1;
        if (!seen.insert({j, r}).second) break;
        pi.push_back({j, r});
    }
    return pi;
}

BigInt crossing_upper_bound(int k, int e) {
    if (e < 1 || e > k || e % 2 == 0) throw std::invalid_argument("e must be odd with 1 <= e <= k");
    BigInt t = e * catalan((e - 1) / 2);
    return binomial(k, e) * t * t;
}

SubmovieBound submovie_count_bound(int k, const BigInt& g) {
    if (g < 1) throw std::invalid_argument("glue count must be positive");
    SubmovieBound b;
    b.bound = boost::multiprecision::pow(g, static_cast<unsigned>(k)) * (BigInt(1) << (3 * k + 2)) * k;
    b.intermediate = 0;
    for (int e = 1; e <= k; e += 2) b.intermediate += crossing_upper_bound(k, e) * boost::multiprecision::pow(g, static_cast<unsigned>(e));
    return b;
}

BigInt theorem1_threshold(int k, const BigInt& g) { return 2 * submovie_count_bound(k, g).bound; }

BigInt glue_lower_bound(int k, const BigInt& N) {
    if (k < 1 || N < 1) throw std::invalid_argument("k and N must be positive");
    BigInt lo = 1, hi = 1;
    auto ok = [&](const BigInt& G) { return boost::multiprecision::pow(BigInt(128) * G, static_cast<unsigned>(k)) >= N; };
    while (!ok(hi)) hi *= 2;
    while (lo < hi) {
        BigInt mid = (lo + hi) / 2;
        if (ok(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

BigInt tile_lower_bound(int k, const BigInt& N) { return (glue_lower_bound(k, N) + 3) / 4; }

namespace {

// (-1,0,0) < (0,-1,0) < (0,0,-1) < (0,0,1) < (0,1,0) < (1,0,0)
int unit_rank(Dir d) {
    switch (d) {
        case Dir::W: return 0;
        case Dir::S: return 1;
        case Dir::D: return 2;
        case Dir::U: return 3;
        case Dir::N: return 4;
        case Dir::E: return 5;
    }
    return 6;
}

Assembly assemble_steps(const AssemblySequence& seq) {
    Assembly a;
    for (const auto& s : seq.steps) a.place(s.pos, s.tile);
    return a;
}

bool bonded(const TAS& T, const Assembly& a, const Vec3& p, Dir d) {
    auto t = a.at(p), u = a.at(p + offset(d));
    return t && u && binds(T.tiles[*t].glue(d), T.tiles[*u].glue(opposite(d)));
}

}  // namespace

bool is_simple_path_sequence(const TAS& T, const AssemblySequence& seq) {
    Assembly a;
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        const auto& [p, t] = seq.steps[i];
        if (a.contains(p)) return false;
        a.place(p, t);
        if (i == 0) continue;
        int bonds = 0;
        bool to_prev = false;
        for (Dir d : kDirs)
            if (a.contains(p + offset(d)) && bonded(T, a, p, d)) {
                ++bonds;
                to_prev = to_prev || p + offset(d) == seq.steps[i - 1].pos;
            }
        if (bonds != 1 || !to_prev) return false;
    }
    return true;
}

WindowMovie extract_movie(const TAS& T, const AssemblySequence& seq, const Window& w, MovieMode mode) {
    if (mode == MovieMode::Restricted && !is_simple_path_sequence(T, seq))
        throw std::invalid_argument("restricted movie needs a simple-path sequence");
    const Assembly res = assemble_steps(seq);
    WindowMovie movie;
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        const auto& [p, t] = seq.steps[i];
        WindowMovie now;
        for (Dir d : kDirs) {
            Vec3 q = p + offset(d);
            if (!w.touches(p) || !w.touches(q) || w.left_of(p) == w.left_of(q)) continue;
            const Glue& g = T.tiles[t].glue(d);
            if (g.is_null()) continue;
            bool keep = true;
            if (mode == MovieMode::BondForming) keep = bonded(T, res, p, d);
            if (mode == MovieMode::Restricted) {
                bool along = (i > 0 && seq.steps[i - 1].pos == q) || (i + 1 < seq.steps.size() && seq.steps[i + 1].pos == q);
                keep = along && bonded(T, res, p, d);
            }
            if (keep) now.push_back({p, d, g});
        }
        std::sort(now.begin(), now.end(), [](const MovieStep& a, const MovieStep& b) { return unit_rank(a.side) < unit_rank(b.side); });
        movie.insert(movie.end(), now.begin(), now.end());
    }
    return movie;
}

WindowMovie translate(const WindowMovie& m, const Vec3& d) {
    WindowMovie out = m;
    for (auto& s : out) s.pos = s.pos + d;
    return out;
}

Assembly splice(const TAS& T, const AssemblySequence& alpha, const Window& w, const AssemblySequence& beta, const Vec3& delta,
                MovieMode mode) {
    const Window wb = w.shifted(delta);
    if (extract_movie(T, alpha, w, mode) != translate(extract_movie(T, beta, wb, mode), Vec3{} - delta))
        throw std::invalid_argument("window movies differ");
    const bool seed_left = w.left_of(T.seed_pos);
    if (seed_left != wb.left_of(T.seed_pos)) throw std::invalid_argument("seed must lie on the same side of both windows");
    const Assembly a = assemble_steps(alpha), b = assemble_steps(beta);
    Assembly out;
    for (const auto& [p, t] : a.cells())
        if (w.left_of(p) == seed_left) out.place(p, t);
    for (const auto& [p, t] : b.cells())
        if (wb.left_of(p) != seed_left) out.place(p - delta, t);
    return out;
}

bool replay_producible(const TAS& T, const Assembly& a) {
    if (a.at(T.seed_pos) != std::optional<TileId>(T.seed_tile)) return false;
    std::vector<FrontierEntry> order{{T.seed_pos, T.seed_tile}};
    std::unordered_set<Vec3, Vec3Hash> seen{T.seed_pos};
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Dir d : kDirs) {
            Vec3 q = order[i].pos + offset(d);
            if (!seen.count(q) && a.contains(q) && bonded(T, a, order[i].pos, d)) {
                seen.insert(q);
                order.push_back({q, *a.at(q)});
            }
        }
    if (order.size() != a.size()) return false;
    try {
        return replay(T, order) == a;
    } catch (const std::exception&) {
        return false;
    }
}

std::pair<Pairing, Pairing> induced_pairings(const std::vector<int>& seq) {
    Pairing near, far;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) (i % 2 == 0 ? far : near).emplace_back(seq[i], seq[i + 1]);
    return {near, far};
}

namespace {

// Vertex-disjoint routing inside one side of the cut. Cells are bits of a
// 64-bit mask indexed y * width + x over the side's local columns.
class SideRouter {
public:
    struct Task {
        int start;
        std::uint64_t targets;
    };

    SideRouter(int k, int width) : k_(k), w_(width) {}
    int cell(int x, int y) const { return y * w_ + x; }
    std::uint64_t column(int x) const {
        std::uint64_t m = 0;
        for (int y = 0; y < k_; ++y) m |= bit(cell(x, y));
        return m;
    }
    static std::uint64_t bit(int c) { return std::uint64_t{1} << c; }

    // forbidden: cells no path may enter. reserved[i]: cells only task i may use.
    bool solve(std::vector<Task> tasks, std::uint64_t forbidden, std::vector<std::uint64_t> reserved) {
        tasks_ = std::move(tasks);
        reserved_ = std::move(reserved);
        all_reserved_ = 0;
        for (auto r : reserved_) all_reserved_ |= r;
        return route(0, forbidden);
    }

private:
    std::uint64_t allowed(std::size_t t, std::uint64_t used) const {
        std::uint64_t all = (k_ * w_ == 64) ? ~std::uint64_t{0} : (bit(k_ * w_) - 1);
        return all & ~used & (~all_reserved_ | reserved_[t]);
    }
    std::uint64_t neighbours(int c) const {
        int x = c % w_, y = c / w_;
        std::uint64_t m = 0;
        if (x > 0) m |= bit(c - 1);
        if (x + 1 < w_) m |= bit(c + 1);
        if (y > 0) m |= bit(c - w_);
        if (y + 1 < k_) m |= bit(c + w_);
        return m;
    }
    bool reachable(int from, std::uint64_t targets, std::uint64_t free) const {
        if (targets & bit(from)) return true;
        std::uint64_t seen = bit(from), frontier = seen;
        while (frontier) {
            std::uint64_t next = 0;
            for (std::uint64_t f = frontier; f; f &= f - 1) next |= neighbours(__builtin_ctzll(f));
            next &= free & ~seen;
            if (next & targets) return true;
            seen |= next;
            frontier = next;
        }
        return false;
    }
    bool feasible_from(std::size_t t, std::uint64_t used) const {
        for (std::size_t u = t; u < tasks_.size(); ++u) {
            std::uint64_t free = allowed(u, used);
            if (!(free & bit(tasks_[u].start))) return false;
            if (!reachable(tasks_[u].start, tasks_[u].targets & free, free)) return false;
        }
        return true;
    }
    bool route(std::size_t t, std::uint64_t used) {
        if (t == tasks_.size()) return true;
        if (!feasible_from(t, used)) return false;
        return extend(t, tasks_[t].start, used | bit(tasks_[t].start));
    }
    bool extend(std::size_t t, int head, std::uint64_t used) {
        if (tasks_[t].targets & bit(head)) return route(t + 1, used);
        std::uint64_t free = allowed(t, used);
        if (!reachable(head, tasks_[t].targets & free, free | bit(head))) return false;
        for (std::uint64_t n = neighbours(head) & free; n; n &= n - 1) {
            int c = __builtin_ctzll(n);
            // Later tasks must stay routable around this step.
            if (!feasible_from(t + 1, used | bit(c)) ) continue;
            if (extend(t, c, used | bit(c))) return true;
        }
        return false;
    }

    int k_, w_;
    std::vector<Task> tasks_;
    std::vector<std::uint64_t> reserved_;
    std::uint64_t all_reserved_ = 0;
};

bool realizable(int k, int slack, const std::vector<int>& seq) {
    const int W = 1 + slack;
    const auto [near, far] = induced_pairings(seq);
    // Near side: local x = global x, cut column W-1.
    {
        SideRouter R(k, W);
        auto at = [&](int row) { return R.cell(W - 1, row - 1); };
        std::vector<SideRouter::Task> tasks{{at(seq.front()), R.column(0)}};
        std::vector<std::uint64_t> reserved{SideRouter::bit(at(seq.front()))};
        for (auto [a, b] : near) {
            tasks.push_back({at(a), SideRouter::bit(at(b))});
            reserved.push_back(SideRouter::bit(at(a)) | SideRouter::bit(at(b)));
        }
        if (!R.solve(tasks, 0, reserved)) return false;
    }
    // Far side: local x = global x - W, cut column 0, east column W-1.
    {
        SideRouter R(k, W);
        auto at = [&](int row) { return R.cell(0, row - 1); };
        const std::uint64_t east = R.column(W - 1);
        std::vector<SideRouter::Task> tasks;
        std::vector<std::uint64_t> reserved;
        for (auto [a, b] : far) {
            tasks.push_back({at(a), SideRouter::bit(at(b))});
            reserved.push_back(SideRouter::bit(at(a)) | SideRouter::bit(at(b)));
        }
        // Only the last segment may touch the east column, and it stops there.
        for (const auto& t : tasks)
            if ((SideRouter::bit(t.start) | t.targets) & east) return false;
        tasks.push_back({at(seq.back()), east});
        reserved.push_back(SideRouter::bit(at(seq.back())) | east);
        if (!R.solve(tasks, 0, reserved)) return false;
    }
    return true;
}

void odd_sequences(int k, std::vector<int>& cur, std::vector<char>& used, std::vector<std::vector<int>>& out) {
    if (cur.size() % 2 == 1) out.push_back(cur);
    for (int r = 1; r <= k; ++r) {
        if (used[static_cast<std::size_t>(r)]) continue;
        used[static_cast<std::size_t>(r)] = 1;
        cur.push_back(r);
        odd_sequences(k, cur, used, out);
        cur.pop_back();
        used[static_cast<std::size_t>(r)] = 0;
    }
}

}  // namespace

Census brute_force_crossing_census(int k, int slack, int threads) {
    if (k < 1 || slack < 0) throw std::invalid_argument("k must be positive and slack non-negative");
    if (k > kCensusMaxK || slack > kCensusMaxSlack) throw std::invalid_argument("census limits exceeded (k <= 6, slack <= 6)");
    std::vector<std::vector<int>> candidates;
    std::vector<int> cur;
    std::vector<char> used(static_cast<std::size_t>(k + 1), 0);
    odd_sequences(k, cur, used, candidates);

    std::vector<char> ok(candidates.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < candidates.size(); i = next++) ok[i] = realizable(k, slack, candidates[i]) ? 1 : 0;
    };
    threads = std::max(1, threads);
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    Census c;
    c.k = k;
    c.slack = slack;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!ok[i]) continue;
        const auto& s = candidates[i];
        c.sequences.insert(s);
        CensusClass cls{s, s.front(), s.back()};
        std::sort(cls.E.begin(), cls.E.end());
        ++c.per_class[cls];
    }
    return c;
}

std::set<std::vector<int>> enumerate_path_crossings(int k, int slack) {
    const int width = 2 * (1 + slack), c0 = slack;
    if (k * width > 24) throw std::invalid_argument("grid too large for literal enumeration");
    std::set<std::vector<int>> out;
    std::vector<char> seen(static_cast<std::size_t>(k * width), 0);
    std::vector<int> crossings;
    std::function<void(int, int)> walk = [&](int x, int y) {
        if (x == width - 1) {
            out.insert(crossings);
            return;
        }
        static constexpr int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
        for (int i = 0; i < 4; ++i) {
            int nx = x + dx[i], ny = y + dy[i];
            if (nx < 0 || nx >= width || ny < 0 || ny >= k) continue;
            auto& s = seen[static_cast<std::size_t>(ny * width + nx)];
            if (s) continue;
            bool cross = std::min(x, nx) == c0 && std::max(x, nx) == c0 + 1;
            if (cross) crossings.push_back(y + 1);
            s = 1;
            walk(nx, ny);
            s = 0;
            if (cross) crossings.pop_back();
        }
    };
    for (int y = 0; y < k; ++y) {
        seen[static_cast<std::size_t>(y * width)] = 1;
        walk(0, y);
        seen[static_cast<std::size_t>(y * width)] = 0;
    }
    return out;
}

}  // namespace tilerect
