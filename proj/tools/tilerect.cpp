// tilerect: generation, verification, bounds, crossing audit and rendering.
// Exit codes: 0 ok, 1 usage, 2 conflict (or audit failure), 3 escape,
// 4 not terminal or wrong shape, 5 format or I/O error.

#include <chrono>
#include <filesystem>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "tilerect/assembler.hpp"
#include "tilerect/io.hpp"
#include "tilerect/movies.hpp"
#include "tilerect/rectgen.hpp"
#include "tilerect/render.hpp"

using namespace tilerect;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitAuditFail = 2;
constexpr int kExitFormat = 5;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string sha256(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream s;
    s << "sha256:";
    for (unsigned int i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return s.str();
}

// out.tiles.json -> out.tiles.manifest.json, picture.svg -> picture.manifest.json
std::string manifest_path(const std::string& out) {
    for (const char* ext : {".json", ".svg"}) {
        std::string e(ext);
        if (out.size() > e.size() && out.compare(out.size() - e.size(), e.size(), e) == 0) return out.substr(0, out.size() - e.size()) + ".manifest.json";
    }
    return out + ".manifest.json";
}

int worker_count() {
    if (const char* v = std::getenv("TILERECT_THREADS")) {
        int n = std::atoi(v);
        if (n >= 1) return n;
    }
    return 1;
}

class Manifest {
public:
    explicit Manifest(std::string subcommand) : start_(std::chrono::steady_clock::now()) {
        doc_["subcommand"] = std::move(subcommand);
        doc_["parameters"] = json::object();
        doc_["inputs"] = json::object();
        doc_["outputs"] = json::object();
        doc_["verdicts"] = json::object();
        doc_["seed"] = nullptr;
    }
    json& operator[](const char* key) { return doc_[key]; }
    void input(const std::string& path, const std::string& bytes) { doc_["inputs"][path] = sha256(bytes); }
    void output(const std::string& path, const std::string& bytes) { doc_["outputs"][path] = sha256(bytes); }
    void write(const std::string& path) {
        doc_["wallClockSeconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        write_file(path, doc_.dump(2) + "\n");
    }

private:
    json doc_;
    std::chrono::steady_clock::time_point start_;
};

BigInt parse_big(const std::string& s, const char* flag) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw UsageError(std::string(flag) + " must be a positive integer");
    BigInt v(s);
    if (v < 1) throw UsageError(std::string(flag) + " must be a positive integer");
    return v;
}

std::string str(const BigInt& v) { return v.str(); }

int cmd_gen(long long k, long long N, const std::string& out) {
    Manifest man("gen");
    man["parameters"] = {{"k", k}, {"N", N}, {"out", out}};
    GeneratedTileSet g;
    try {
        g = generate_tileset(k, N);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto& p = g.params;
    const std::string text = serialize_tas(g.tas);
    write_file(out, text);
    man.output(out, text);
    json units = json::object();
    for (const auto& [u, n] : g.unit_tiles) units[u] = n;
    man["constructionParams"] = {{"d", p.d}, {"m", p.m}, {"l", p.l}, {"s", p.s}, {"c", p.c}, {"r", p.r}};
    man["tileCounts"] = {{"perUnit", units}, {"mergedDuplicates", g.merged}, {"total", g.tas.tiles.size()}};
    std::cout << "params d=" << p.d << " m=" << p.m << " l=" << p.l << " s=" << p.s << " c=" << p.c << " r=" << p.r << "\n";
    std::cout << std::left << std::setw(12) << "unit" << "tiles\n";
    for (const auto& [u, n] : g.unit_tiles) std::cout << std::setw(12) << u << n << "\n";
    std::cout << std::setw(12) << "total" << g.tas.tiles.size() << "\n";
    man.write(manifest_path(out));
    return 0;
}

int cmd_verify(const std::string& tiles_path, long long k, long long N, const std::string& mode, std::string out) {
    Manifest man("verify");
    if (out.empty()) {
        const std::string suffix = ".tiles.json";
        out = tiles_path.size() > suffix.size() && tiles_path.ends_with(suffix) ? tiles_path.substr(0, tiles_path.size() - suffix.size()) + ".asm.json"
                                                                                 : tiles_path + ".asm.json";
    }
    man["parameters"] = {{"tiles", tiles_path}, {"k", k}, {"N", N}, {"mode", mode}, {"out", out}};
    const std::string text = read_file(tiles_path);
    man.input(tiles_path, text);
    const TAS T = parse_tas(text);

    std::optional<Verdict> closure, policy;
    Assembly result;
    if (mode == "closure" || mode == "both") {
        auto rep = check_directed(T, k, N);
        closure = rep.verdict;
        result = rep.closure.configuration;
        std::cout << "closure: " << verdict_name(rep.verdict) << " (" << rep.closure.domain.size() << " positions";
        if (!rep.closure.conflicts.empty()) std::cout << ", " << rep.closure.conflicts.size() << " conflict sites";
        if (rep.closure.escape) std::cout << ", escape at (" << rep.closure.escape->x << "," << rep.closure.escape->y << "," << rep.closure.escape->z << ")";
        std::cout << ")\n";
        for (const auto& c : rep.closure.details)
            std::cout << "  conflict at (" << c.pos.x << "," << c.pos.y << "," << c.pos.z << "): " << T.tiles[c.expected].name << " vs "
                      << T.tiles[c.other].name << "\n";
        man["verdicts"]["closure"] = verdict_name(rep.verdict);
    }
    if (mode == "policy" || mode == "both") {
        auto rep = check_policy(T, k, N);
        policy = rep.verdict;
        if (!closure) result = rep.sequence.result;
        std::cout << "policy: " << verdict_name(rep.verdict) << " (" << rep.sequence.steps.size() << " placements, "
                  << rep.determinism.violations.size() << " determinism violations)" << (rep.note.empty() ? "" : " " + rep.note) << "\n";
        for (std::size_t i = 0; i < std::min<std::size_t>(rep.determinism.violations.size(), 10); ++i)
            std::cout << "  " << rep.determinism.violations[i] << "\n";
        man["verdicts"]["policy"] = verdict_name(rep.verdict);
    }
    Verdict v = closure ? *closure : *policy;
    if (closure && policy && *closure != *policy) {
        std::cout << "modes disagree\n";
        man["verdicts"]["agree"] = false;
        if (v == Verdict::DirectedAndCorrect) v = *policy;
    } else if (closure && policy) {
        man["verdicts"]["agree"] = true;
    }
    if (v == Verdict::DirectedAndCorrect) {
        const std::string doc = serialize_assembly(T.tiles, result, json{{"tiles", tiles_path}, {"k", k}, {"N", N}, {"mode", mode}});
        write_file(out, doc);
        man.output(out, doc);
    }
    man["exitCode"] = verdict_exit_code(v);
    man.write(manifest_path(out));
    return verdict_exit_code(v);
}

int cmd_bound(int k, const std::string& N_text, const std::string& glues_text, const std::string& manifest) {
    if (k < 1) throw UsageError("--k must be positive");
    if (N_text.empty() == glues_text.empty()) throw UsageError("give exactly one of --N or --glues");
    Manifest man("bound");
    BigInt g;
    if (!N_text.empty()) {
        BigInt N = parse_big(N_text, "--N");
        g = glue_lower_bound(k, N);
        std::cout << "glue_lower_bound " << str(g) << "\n";
        std::cout << "tile_lower_bound " << str(tile_lower_bound(k, N)) << "\n";
        man["parameters"] = {{"k", k}, {"N", N_text}};
        man["verdicts"]["glueLowerBound"] = str(g);
        man["verdicts"]["tileLowerBound"] = str(tile_lower_bound(k, N));
    } else {
        g = parse_big(glues_text, "--glues");
        man["parameters"] = {{"k", k}, {"glues", glues_text}};
    }
    const auto sb = submovie_count_bound(k, g);
    const BigInt thr = theorem1_threshold(k, g);
    std::cout << "glues " << str(g) << "\n";
    std::cout << "theorem1_threshold " << str(thr) << "\n";
    std::cout << "submovie_count_bound " << str(sb.bound) << "\n";
    std::cout << "submovie_count_sum " << str(sb.intermediate) << "\n";
    if (glues_text.size()) {
        std::cout << "glue_lower_bound_at_threshold " << str(glue_lower_bound(k, thr)) << "\n";
        std::cout << "tile_lower_bound_at_threshold " << str(tile_lower_bound(k, thr)) << "\n";
    }
    man["verdicts"]["threshold"] = str(thr);
    man["verdicts"]["submovieCountBound"] = str(sb.bound);
    if (!manifest.empty()) man.write(manifest);
    return 0;
}

int cmd_audit(int k, int slack, const std::string& dump, const std::string& manifest) {
    if (k < 1 || slack < 0) throw UsageError("--k must be positive and --slack non-negative");
    if (k > kCensusMaxK || slack > kCensusMaxSlack) throw UsageError("refused: census limited to k <= 6 and slack <= 6");
    Manifest man("audit-crossings");
    man["parameters"] = {{"k", k}, {"slack", slack}, {"threads", worker_count()}};
    const Census c = brute_force_crossing_census(k, slack, worker_count());
    bool pass = true;
    std::map<int, long long> per_e;
    for (const auto& [cls, n] : c.per_class) {
        per_e[static_cast<int>(cls.E.size())] += n;
        const BigInt cp = catalan((static_cast<long long>(cls.E.size()) - 1) / 2);
        if (BigInt(n) > cp * cp) {
            pass = false;
            std::cout << "class violation: E size " << cls.E.size() << " f=" << cls.f << " l=" << cls.lst << " census " << n << " > " << str(cp * cp) << "\n";
        }
    }
    for (int e = 1; e <= k; e += 2) {
        const BigInt b = crossing_upper_bound(k, e);
        const long long n = per_e[e];
        std::cout << "e=" << e << " census " << n << " bound " << str(b) << "\n";
        if (BigInt(n) > b) pass = false;
    }
    if (!pass)
        for (const auto& s : c.sequences) {
            std::cout << "sequence";
            for (int r : s) std::cout << " " << r;
            std::cout << "\n";
        }
    if (!dump.empty()) {
        std::ostringstream d;
        for (const auto& s : c.sequences) {
            for (std::size_t i = 0; i < s.size(); ++i) d << (i ? " " : "") << s[i];
            d << "\n";
        }
        write_file(dump, d.str());
        man.output(dump, d.str());
    }
    std::cout << (pass ? "PASS" : "FAIL") << " census " << c.sequences.size() << " sequences\n";
    man["verdicts"]["audit"] = pass ? "PASS" : "FAIL";
    man["verdicts"]["sequences"] = c.sequences.size();
    if (!manifest.empty()) man.write(manifest);
    return pass ? 0 : kExitAuditFail;
}

int cmd_render(const std::string& asm_path, std::string tiles_path, const std::string& out) {
    Manifest man("render");
    const std::string asm_text = read_file(asm_path);
    if (tiles_path.empty()) {
        auto prov = json::parse(asm_text, nullptr, false);
        if (prov.is_discarded() || !prov.contains("provenance") || !prov["provenance"].contains("tiles"))
            throw FormatError("assembly has no tile set provenance; pass --tiles");
        tiles_path = prov["provenance"]["tiles"].get<std::string>();
        // Recorded relative to where verify ran; fall back to the assembly's directory.
        const std::filesystem::path beside = std::filesystem::path(asm_path).parent_path() / tiles_path;
        if (!std::filesystem::exists(tiles_path) && std::filesystem::path(tiles_path).is_relative() && std::filesystem::exists(beside))
            tiles_path = beside.string();
    }
    const std::string tiles_text = read_file(tiles_path);
    man["parameters"] = {{"assembly", asm_path}, {"tiles", tiles_path}, {"out", out}};
    man.input(asm_path, asm_text);
    man.input(tiles_path, tiles_text);
    const TAS T = parse_tas(tiles_text);
    const auto doc = parse_assembly(asm_text, T.tiles);
    const std::string svg = render_svg(T.tiles, doc.assembly);
    write_file(out, svg);
    man.output(out, svg);
    const auto t = expected_tally(T.tiles, doc.assembly);
    std::cout << "large " << t.large << " small " << t.small << " disks " << t.disks << " thick " << t.thick << " thin " << t.thin << "\n";
    man["verdicts"] = {{"large", t.large}, {"small", t.small}, {"disks", t.disks}, {"thick", t.thick}, {"thin", t.thin}};
    man.write(manifest_path(out));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thin-rectangle tile assembly toolkit"};
    app.require_subcommand(1);

    long long k = 0, N = 0;
    std::string out, tiles, mode = "closure", N_text, glues_text, manifest, dump, assembly;
    int slack = 3;

    auto* gen = app.add_subcommand("gen", "generate the tile set for a k x N rectangle");
    gen->add_option("--k", k, "rectangle height (thin side)")->required();
    gen->add_option("--N", N, "rectangle width")->required();
    gen->add_option("--out", out, "output .tiles.json")->required();

    auto* verify = app.add_subcommand("verify", "check directedness and shape");
    verify->add_option("--tiles", tiles)->required();
    verify->add_option("--k", k)->required();
    verify->add_option("--N", N)->required();
    verify->add_option("--mode", mode)->check(CLI::IsMember({"closure", "policy", "both"}));
    verify->add_option("--out", out, "output .asm.json (default beside the tile set)");

    auto* bound = app.add_subcommand("bound", "lower bounds and pumping threshold");
    int kb = 0;
    bound->add_option("--k", kb)->required();
    bound->add_option("--N", N_text);
    bound->add_option("--glues", glues_text);
    bound->add_option("--manifest", manifest);

    auto* audit = app.add_subcommand("audit-crossings", "census of crossing sequences against the counting bound");
    int ka = 0;
    audit->add_option("--k", ka)->required();
    audit->add_option("--slack", slack);
    audit->add_option("--dump", dump, "write one crossing sequence per line");
    audit->add_option("--manifest", manifest);

    auto* render = app.add_subcommand("render", "draw an assembly as SVG");
    render->add_option("--assembly", assembly)->required();
    render->add_option("--tiles", tiles, "tile set (default: the one recorded in the assembly)");
    render->add_option("--out", out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    try {
        if (*gen) return cmd_gen(k, N, out);
        if (*verify) return cmd_verify(tiles, k, N, mode, out);
        if (*bound) return cmd_bound(kb, N_text, glues_text, manifest);
        if (*audit) return cmd_audit(ka, slack, dump, manifest);
        if (*render) return cmd_render(assembly, tiles, out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    }
    return kExitUsage;
}
