#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <findim/cli_support.hpp>
#include <findim/json_io.hpp>

#include "test_support.hpp"

using namespace findim;

TEST_CASE("complex json round trip") {
    std::mt19937 rng(91);
    for (int t = 0; t < 10; ++t) {
        Complex c = testsupport::random_complex(rng, -1, 2, 5);
        Json j = complex_to_json(c);
        Complex back = complex_from_json(j, "roundtrip");
        CHECK(back == c);
        CHECK(complex_to_json(back) == j);
    }
}

TEST_CASE("chain map json round trip") {
    std::mt19937 rng(92);
    for (int t = 0; t < 10; ++t) {
        Complex x = testsupport::random_complex(rng, 0, 2, 3);
        Complex z = testsupport::random_complex(rng, 0, 2, 3);
        ChainMap f = testsupport::random_extension(rng, x, z);
        Json j = Json::object();
        j["blocks"] = chain_map_blocks_to_json(f);
        ChainMap back = chain_map_from_json(j, f.source(), f.target(), "roundtrip");
        CHECK(back == f);
    }
}

TEST_CASE("group algebra element json round trip") {
    std::mt19937 rng(93);
    for (int t = 0; t < 6; ++t) {
        GroupAlgebraElement e = testsupport::random_algebra_element(rng, 4, 5);
        GroupAlgebraElement back = algebra_element_from_json(algebra_element_to_json(e));
        CHECK(back == e);
    }
}

TEST_CASE("instance parsing validates references and shapes") {
    Json good = Json::parse(R"({
        "version": "1",
        "objects": {
            "x": {"degrees": {"0": 1}, "differentials": {}},
            "y": {"degrees": {"0": 2}, "differentials": {}}
        },
        "maps": {
            "f": {"source": "x", "target": "y", "blocks": {"0": [["1"], ["-1/2"]]}}
        },
        "tasks": [{"command": "dim", "object": "y"}]
    })");
    InstanceFile instance = instance_from_json(good);
    CHECK(instance.objects.size() == 2);
    CHECK(instance.map("f").block(0)(1, 0) == Rational(-1) / 2);
    CHECK(instance.tasks.size() == 1);

    Json bad_ref = good;
    bad_ref["maps"]["f"]["source"] = "ghost";
    CHECK_THROWS_AS(instance_from_json(bad_ref), SchemaError);

    Json bad_shape = good;
    bad_shape["maps"]["f"]["blocks"]["0"] = Json::parse(R"([["1"]])");
    CHECK_THROWS_AS(instance_from_json(bad_shape), SchemaError);

    Json bad_task = good;
    bad_task["tasks"][0]["object"] = "ghost";
    CHECK_THROWS_AS(instance_from_json(bad_task), SchemaError);

    Json bad_diff = Json::parse(R"({
        "objects": {"x": {"degrees": {"0": 1, "1": 1}, "differentials": {"1": [["1/3x"]]}}}
    })");
    CHECK_THROWS_AS(instance_from_json(bad_diff), SchemaError);
}

TEST_CASE("filtration report serialization round-trips through the schema") {
    std::mt19937 rng(94);
    Complex x = testsupport::random_complex(rng, 0, 1, 2);
    Complex z = testsupport::random_complex(rng, 0, 1, 2);
    ChainMap f = testsupport::random_extension(rng, x, z);
    FiltrationReport report = filtration_report(f, 2, Sign::plus);
    Json j = filtration_report_to_json(report);
    Json wrapped = Json::object();
    wrapped["command"] = "filtration";
    wrapped["version"] = cli::engine_version;
    wrapped["map"] = "f";
    for (auto& [key, value] : j.items()) wrapped[key] = value;
    CHECK_NOTHROW(cli::validate_report_schema(wrapped));
    CHECK(Json::parse(wrapped.dump(2)) == wrapped);
}

TEST_CASE("report schema validation rejects malformed reports") {
    Json bad = Json::object();
    bad["command"] = "powers";
    CHECK_THROWS_AS(cli::validate_report_schema(bad), SchemaError);
    Json unknown = Json::object();
    unknown["command"] = "mystery";
    unknown["version"] = "1.0.0";
    CHECK_THROWS_AS(cli::validate_report_schema(unknown), SchemaError);
}

TEST_CASE("partition parsing for the cli") {
    CHECK(cli::partition_from_string("2,1") == Partition({2, 1}));
    CHECK(cli::partition_from_string(" 3 , 3 ,1") == Partition({3, 3, 1}));
    CHECK_THROWS_AS(cli::partition_from_string("1,2"), SchemaError);
    CHECK_THROWS_AS(cli::partition_from_string("a"), SchemaError);
}

TEST_CASE("exit code mapping distinguishes verdict failures") {
    CHECK(cli::exit_code_for_verdict(true) == cli::exit_ok);
    CHECK(cli::exit_code_for_verdict(false) == cli::exit_verdict);
}
