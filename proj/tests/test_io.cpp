#include <gtest/gtest.h>

#include "tilerect/assembler.hpp"
#include "tilerect/io.hpp"
#include "tilerect/rectgen.hpp"

using namespace tilerect;
using nlohmann::json;

namespace {

TAS small_system() {
    TileType a, b;
    a.name = "zeta";
    a.glue(Dir::E) = {"x", 1};
    a.glue(Dir::U) = {"up", 2};
    b.name = "alpha";
    b.glue(Dir::W) = {"x", 1};
    TAS T;
    T.tiles = TileSet({a, b});
    T.seed_tile = 0;
    T.seed_pos = {3, -1, 0};
    return T;
}

std::string format_error(const std::string& text) {
    try {
        parse_tas(text);
    } catch (const FormatError& e) {
        return e.what();
    }
    return "no error";
}

std::string tas_doc(const json& tiles, const std::string& seed = "a") {
    json doc{{"formatVersion", 1}, {"temperature", 1}, {"seed", {{"tile", seed}, {"position", {0, 0, 0}}}}, {"tiles", tiles}};
    return doc.dump();
}

json tile_rec(const std::string& name) { return json{{"name", name}, {"glues", json::object()}}; }

}  // namespace

TEST(TileSetDocument, RoundTripIsCanonical) {
    auto T = small_system();
    const std::string text = serialize_tas(T);
    auto back = parse_tas(text);
    EXPECT_EQ(serialize_tas(back), text);
    EXPECT_EQ(back.tiles[back.seed_tile].name, "zeta");
    EXPECT_EQ(back.seed_pos, (Vec3{3, -1, 0}));
    EXPECT_EQ(back.tiles[*back.tiles.find("zeta")].glue(Dir::U), (Glue{"up", 2}));
    // Sorted records and keys, no whitespace.
    EXPECT_LT(text.find("\"name\":\"alpha\""), text.find("\"name\":\"zeta\""));
    EXPECT_EQ(text.find(' '), std::string::npos);
    EXPECT_EQ(text.rfind("{\"barely3d\":true,\"formatVersion\":1,", 0), 0u);
}

TEST(TileSetDocument, ReorderedInputCanonicalizes) {
    json doc = json::parse(serialize_tas(small_system()));
    std::swap(doc["tiles"][0], doc["tiles"][1]);
    doc["tiles"][0]["glues"].erase("D");
    EXPECT_EQ(serialize_tas(parse_tas(doc.dump(2))), serialize_tas(small_system()));
}

TEST(TileSetDocument, GeneratedSystemMatchesGoldenFile) {
    const std::string golden = read_file(std::string(TILERECT_TEST_DATA) + "/t_11_56.tiles.json");
    EXPECT_EQ(serialize_tas(parse_tas(golden)), golden);
    EXPECT_EQ(serialize_tas(generate_tileset(11, 56).tas), golden);
}

TEST(TileSetDocument, Errors) {
    EXPECT_EQ(format_error(tas_doc(json::array())), "tile set must be non-empty");
    EXPECT_EQ(format_error(tas_doc(json::array({tile_rec("a"), tile_rec("a")}))), "duplicate tile name: a");
    EXPECT_EQ(format_error(tas_doc(json::array({tile_rec("a")}), "b")), "unknown tile: b");
    EXPECT_EQ(format_error(R"({"formatVersion":2,"tiles":[]})"), "unsupported formatVersion 2");
    EXPECT_EQ(format_error(R"({"tiles":[]})"), "missing formatVersion");
    json bad_side = tile_rec("a");
    bad_side["glues"]["Q"] = {{"label", "x"}, {"strength", 1}};
    EXPECT_EQ(format_error(tas_doc(json::array({bad_side}))), "unknown glue side: Q");
    json negative = tile_rec("a");
    negative["glues"]["N"] = {{"label", "x"}, {"strength", -1}};
    EXPECT_EQ(format_error(tas_doc(json::array({negative}))), "negative glue strength on a");
    EXPECT_EQ(format_error("{not json").rfind("invalid JSON", 0), 0u);
    EXPECT_EQ(format_error(R"({"formatVersion":1,"tiles":[{"glues":{}}]})").rfind("malformed document", 0), 0u);
}

TEST(AssemblyDocument, RoundTripWithProvenance) {
    auto T = small_system();
    Assembly a;
    a.place({3, -1, 0}, 0);
    a.place({4, -1, 0}, 1);
    json prov{{"k", 2}, {"N", 1}};
    const std::string text = serialize_assembly(T.tiles, a, prov);
    auto doc = parse_assembly(text, T.tiles);
    EXPECT_EQ(doc.assembly, a);
    EXPECT_EQ(doc.provenance, prov);
    EXPECT_EQ(serialize_assembly(T.tiles, doc.assembly, doc.provenance), text);
    EXPECT_TRUE(parse_assembly(serialize_assembly(T.tiles, a), T.tiles).provenance.is_null());
}

TEST(AssemblyDocument, GeneratedTerminalAssemblyRoundTrips) {
    auto g = generate_tileset(11, 56);
    auto a = run_policy_sequence(g.tas).result;
    const std::string text = serialize_assembly(g.tas.tiles, a);
    EXPECT_EQ(parse_assembly(text, g.tas.tiles).assembly, a);
}

TEST(AssemblyDocument, Errors) {
    auto T = small_system();
    auto err = [&](const std::string& text) {
        try {
            parse_assembly(text, T.tiles);
        } catch (const FormatError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_EQ(err(R"({"formatVersion":1,"tiles":[{"x":0,"y":0,"z":0,"tile":"alpha"},{"x":0,"y":0,"z":0,"tile":"zeta"}]})"),
              "duplicate position (0,0,0)");
    EXPECT_EQ(err(R"({"formatVersion":1,"tiles":[{"x":0,"y":0,"z":0,"tile":"beta"}]})"), "unknown tile: beta");
    EXPECT_EQ(err(R"({"formatVersion":3,"tiles":[]})"), "unsupported formatVersion 3");
}

TEST(Files, MissingFileIsReported) {
    try {
        read_file("/nonexistent/dir/x.json");
        FAIL();
    } catch (const std::runtime_error& e) {
        EXPECT_STREQ(e.what(), "cannot open /nonexistent/dir/x.json");
    }
}
