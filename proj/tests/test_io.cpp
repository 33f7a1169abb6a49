#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zemac/io.hpp"

using namespace zemac;
namespace io = zemac::io;

namespace {

const char* kAdderJson = R"({
  "x1": ["0", "1"], "x2": ["0", "1"], "w": ["0"], "y": ["0", "1", "2"],
  "transitions": [
    {"x1": "0", "x2": "0", "w": "0", "y": "0"},
    {"x1": "0", "x2": "1", "w": "0", "y": "1"},
    {"x1": "1", "x2": "0", "w": "0", "y": "1"},
    {"x1": "1", "x2": "1", "w": "0", "y": "2"}
  ]
})";

} // namespace

TEST_CASE("channel round-trip") {
    Channel ch = io::channel_from_json(io::Json::parse(kAdderJson));
    CHECK(ch.table_size() == 4);
    CHECK(ch.output("1", "1", "0") == "2");

    SUBCASE("missing transition is reported with the offending triple") {
        io::Json j = io::Json::parse(kAdderJson);
        j["transitions"].erase(3);
        CHECK_THROWS_WITH_AS(io::channel_from_json(j),
                             "missing transition for input (1, 1, 0)", ValidationError);
    }
    SUBCASE("missing field") {
        io::Json j = io::Json::parse(kAdderJson);
        j.erase("w");
        CHECK_THROWS_AS(io::channel_from_json(j), ValidationError);
    }
}

TEST_CASE("world and structure round-trip") {
    World w = io::world_from_json(io::Json::parse(
        R"({"variables": ["X", "Y"], "outcomes": [["0","0"],["0","1"],["1","1"]]})"));
    CHECK(w.size() == 3);
    io::Json back = io::world_to_json(w);
    CHECK(io::world_from_json(back).size() == 3);

    Channel ch = io::channel_from_json(io::Json::parse(kAdderJson));
    io::Json sj = io::Json::parse(
        R"({"n": 1, "u": [{"label": "u1", "a": [["0"],["1"]], "b": [["0"]]}]})");
    CooperationStructure s = io::structure_from_json(ch, sj);
    CHECK(s.n() == 1);
    CHECK(io::structure_from_json(ch, io::structure_to_json(s)).entries().size() == 1);
}

TEST_CASE("code serialization keeps the decoder tables") {
    Channel ch = io::channel_from_json(io::Json::parse(kAdderJson));
    CooperationStructure s = io::structure_from_json(
        ch, io::Json::parse(
                R"({"n": 1, "u": [{"label": "u1", "a": [["0"],["1"]], "b": [["0"]]}]})"));
    SynthesisResult r = synthesize_code(ch, s);
    io::Json j = io::synthesis_to_json(r);
    Code loaded = io::code_from_json(j);
    CHECK(loaded.mu == r.code.mu);
    REQUIRE(loaded.decoder.has_value());
    CHECK(loaded.decoder->stage0 == r.code.decoder->stage0);
    CHECK(verify_zero_error(ch, loaded.spec(), loaded).ok);
}

TEST_CASE("canonical writer is byte-stable") {
    io::Json j;
    j["cells"] = std::uint64_t{3};
    j["bits"] = std::log2(3.0);
    CHECK(io::dump_json(j) == "{\n  \"cells\": 3,\n  \"bits\": 1.584963\n}\n");

    SUBCASE("scalar arrays print inline") {
        io::Json arr;
        arr["seq"] = io::Json::array({"0", "1"});
        CHECK(io::dump_json(arr) == "{\n  \"seq\": [\"0\", \"1\"]\n}\n");
    }
    SUBCASE("six fractional digits always") {
        io::Json v;
        v["bits"] = 1.0;
        CHECK(io::dump_json(v) == "{\n  \"bits\": 1.000000\n}\n");
    }
    SUBCASE("string escaping") {
        io::Json v;
        v["s"] = "a\"b\\c\n";
        CHECK(io::dump_json(v) == "{\n  \"s\": \"a\\\"b\\\\c\\n\"\n}\n");
    }
}

TEST_CASE("csv exports") {
    Channel ch = io::channel_from_json(io::Json::parse(kAdderJson));
    RateRegion region = capacity_region(ch, 1, {});
    std::string csv = io::region_csv(region);
    CHECK(csv.rfind("mu0,mu1,mu2,maximal\n", 0) == 0);
    CHECK(csv.find("3,1,1,1\n") != std::string::npos);
    CHECK(csv.find("2,1,1,0\n") != std::string::npos);

    OracleRegion oracle = oracle_region(ch, 1, {});
    std::string ocsv = io::oracle_region_csv(oracle);
    CHECK(ocsv.rfind("mu0,mu1,mu2,achievable\n", 0) == 0);
    CHECK(ocsv.find("3,1,1,1\n") != std::string::npos);
    CHECK(ocsv.find("3,2,1,0\n") != std::string::npos);
}

TEST_CASE("verify report serialization") {
    Channel ch = io::channel_from_json(io::Json::parse(kAdderJson));
    Code code;
    code.n = 1;
    code.mu = {1, 2, 2};
    code.gamma1[{1, 1}] = {"0"};
    code.gamma1[{1, 2}] = {"1"};
    code.gamma2[{1, 1}] = {"0"};
    code.gamma2[{1, 2}] = {"1"};
    VerifyReport report = verify_zero_error(ch, code.spec(), code);
    io::Json j = io::verify_to_json(report);
    CHECK(j["ok"] == false);
    CHECK(j["certificate"]["y"] == io::Json::array({"1"}));
    CHECK(j["certificate"]["other"]["m2"] == 2);
}
