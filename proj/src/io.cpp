#include "tilerect/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace tilerect {

using nlohmann::json;

namespace {

json glue_json(const Glue& g) { return json{{"label", g.label}, {"strength", g.strength}}; }

json position_json(const Vec3& p) { return json::array({p.x, p.y, p.z}); }

Vec3 position_from(const json& j) {
    if (!j.is_array() || j.size() != 3) throw FormatError("position must be [x,y,z]");
    return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

void check_version(const json& doc) {
    if (!doc.is_object()) throw FormatError("document must be a JSON object");
    if (!doc.contains("formatVersion")) throw FormatError("missing formatVersion");
    int v = doc.at("formatVersion").get<int>();
    if (v != kFormatVersion) throw FormatError("unsupported formatVersion " + std::to_string(v));
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
}

// Wraps library exceptions raised by missing or mistyped fields.
template <class F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed document: ") + e.what());
    }
}

}  // namespace

std::string serialize_tas(const TAS& T) {
    if (T.tiles.size() == 0) throw FormatError("tile set must be non-empty");
    std::vector<const TileType*> order;
    for (const auto& t : T.tiles.tiles()) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->name < b->name; });
    json tiles = json::array();
    for (const auto* t : order) {
        json glues = json::object();
        for (Dir d : kDirs) glues[std::string(1, dir_char(d))] = glue_json(t->glue(d));
        tiles.push_back(json{{"name", t->name}, {"glues", glues}});
    }
    json doc{{"formatVersion", kFormatVersion},
             {"temperature", T.temperature},
             {"barely3d", T.barely3d},
             {"planar", T.planar},
             {"seed", json{{"tile", T.tiles[T.seed_tile].name}, {"position", position_json(T.seed_pos)}}},
             {"tiles", tiles}};
    return doc.dump();
}

TAS parse_tas(const std::string& text) {
    json doc = parse_json(text);
    return guarded([&] {
        check_version(doc);
        const json& tiles = doc.at("tiles");
        if (!tiles.is_array() || tiles.empty()) throw FormatError("tile set must be non-empty");
        std::vector<TileType> out;
        std::set<std::string> names;
        for (const json& r : tiles) {
            TileType t;
            t.name = r.at("name").get<std::string>();
            if (!names.insert(t.name).second) throw FormatError("duplicate tile name: " + t.name);
            for (const auto& [key, g] : r.at("glues").items()) {
                if (key.size() != 1 || std::string("NESWUD").find(key[0]) == std::string::npos)
                    throw FormatError("unknown glue side: " + key);
                Glue glue{g.at("label").get<std::string>(), g.at("strength").get<int>()};
                if (glue.strength < 0) throw FormatError("negative glue strength on " + t.name);
                if (glue.strength > 0 && glue.label.empty()) throw FormatError("empty label on a positive glue of " + t.name);
                t.glue(parse_dir(key[0])) = glue;
            }
            out.push_back(std::move(t));
        }
        TAS T;
        T.tiles = TileSet(std::move(out));
        const std::string seed = doc.at("seed").at("tile").get<std::string>();
        auto id = T.tiles.find(seed);
        if (!id) throw FormatError("unknown tile: " + seed);
        T.seed_tile = *id;
        T.seed_pos = position_from(doc.at("seed").at("position"));
        T.temperature = doc.at("temperature").get<int>();
        if (T.temperature < 1) throw FormatError("temperature must be positive");
        T.barely3d = doc.value("barely3d", true);
        T.planar = doc.value("planar", false);
        return T;
    });
}

std::string serialize_assembly(const TileSet& ts, const Assembly& a, const json& provenance) {
    json cells = json::array();
    for (const auto& [p, t] : a.sorted()) cells.push_back(json{{"x", p.x}, {"y", p.y}, {"z", p.z}, {"tile", ts[t].name}});
    json doc{{"formatVersion", kFormatVersion}, {"tiles", cells}};
    if (!provenance.is_null()) doc["provenance"] = provenance;
    return doc.dump();
}

AssemblyDocument parse_assembly(const std::string& text, const TileSet& ts) {
    json doc = parse_json(text);
    return guarded([&] {
        check_version(doc);
        AssemblyDocument out;
        for (const json& c : doc.at("tiles")) {
            Vec3 p{c.at("x").get<int>(), c.at("y").get<int>(), c.at("z").get<int>()};
            const std::string name = c.at("tile").get<std::string>();
            auto id = ts.find(name);
            if (!id) throw FormatError("unknown tile: " + name);
            if (out.assembly.contains(p))
                throw FormatError("duplicate position (" + std::to_string(p.x) + "," + std::to_string(p.y) + "," + std::to_string(p.z) + ")");
            out.assembly.place(p, *id);
        }
        if (doc.contains("provenance")) out.provenance = doc.at("provenance");
        return out;
    });
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace tilerect
