#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tilerect/assembler.hpp"
#include "tilerect/atam.hpp"

namespace tilerect {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(long long n, long long r);
BigInt catalan(long long p);

// Pairs are row indices, unordered within a pair.
using Pairing = std::vector<std::pair<int, int>>;

// '(' at the rank of the smaller element, ')' at the rank of the larger, ranks
// taken in E \ {excluded} ascending.
std::string pairing_to_parens(const Pairing& P, const std::vector<int>& E, int excluded);
// All non-crossing perfect pairings of E \ {excluded}.
std::vector<Pairing> enumerate_pairings(const std::vector<int>& E, int excluded);
bool is_balanced(const std::string& parens);

struct CrossingSpec {
    int k = 0;
    std::vector<int> E;  // sorted, odd size
    int f = 0;
    int lst = 0;
    int e() const { return static_cast<int>(E.size()); }
    int p() const { return (e() - 1) / 2; }
};

// side 0 = near column c0, 1 = far column c1.
struct Endpoint {
    int side = 0;
    int row = 0;
    friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

// Follows both pairings from (c0,f); |pi| = 2e exactly when every edge is used.
std::vector<Endpoint> greedy_reconstruct(const CrossingSpec& spec, const std::string& x0, const std::string& x1);

BigInt crossing_upper_bound(int k, int e);

struct SubmovieBound {
    BigInt bound;         // g^k 2^(3k+2) k
    BigInt intermediate;  // sum over odd e of C(k,e) (e C_p)^2 g^e
};
SubmovieBound submovie_count_bound(int k, const BigInt& g);
BigInt theorem1_threshold(int k, const BigInt& g);
// Least G >= 1 with (128 G)^k >= N, i.e. ceil(N^(1/k) / 128).
BigInt glue_lower_bound(int k, const BigInt& N);
BigInt tile_lower_bound(int k, const BigInt& N);

// Vertical cut between columns c0 and c0+1 (all z).
struct Window {
    int c0 = 0;
    bool left_of(const Vec3& p) const { return p.x <= c0; }
    bool touches(const Vec3& p) const { return p.x == c0 || p.x == c0 + 1; }
    Window shifted(const Vec3& d) const { return Window{c0 + d.x}; }
};

struct MovieStep {
    Vec3 pos;
    Dir side;
    Glue glue;
    friend bool operator==(const MovieStep&, const MovieStep&) = default;
};
using WindowMovie = std::vector<MovieStep>;

enum class MovieMode { Full, BondForming, Restricted };

// Restricted mode treats the sequence itself as the path and requires every
// tile after the seed to bind to its predecessor and to nothing earlier.
WindowMovie extract_movie(const TAS& T, const AssemblySequence& seq, const Window& w, MovieMode mode);
WindowMovie translate(const WindowMovie& m, const Vec3& d);
bool is_simple_path_sequence(const TAS& T, const AssemblySequence& seq);

// alpha_L u (beta_R - delta), sides taken relative to the seed.
Assembly splice(const TAS& T, const AssemblySequence& alpha, const Window& w, const AssemblySequence& beta, const Vec3& delta,
                MovieMode mode = MovieMode::Restricted);
// tau = 1: contains the seed and is connected through bonds; checked by replaying a BFS order.
bool replay_producible(const TAS& T, const Assembly& a);

// Crossing sequences r_1..r_e of simple paths in a k x 2(1+slack) grid that
// start anywhere in the west column and stop on first reaching the east column.
struct CensusClass {
    std::vector<int> E;
    int f = 0;
    int lst = 0;
    friend auto operator<=>(const CensusClass&, const CensusClass&) = default;
};
struct Census {
    int k = 0, slack = 0;
    std::set<std::vector<int>> sequences;
    std::map<CensusClass, long long> per_class;
};
inline constexpr int kCensusMaxK = 6;
inline constexpr int kCensusMaxSlack = 6;
Census brute_force_crossing_census(int k, int slack, int threads = 1);
// Literal path enumeration; exponential, for cross-checking tiny grids.
std::set<std::vector<int>> enumerate_path_crossings(int k, int slack);

// Near pairing over E\{f} and far pairing over E\{lst} induced by a crossing sequence.
std::pair<Pairing, Pairing> induced_pairings(const std::vector<int>& seq);

}  // namespace tilerect
