#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "gtstokes/io.hpp"
#include "gtstokes/sampling.hpp"
#include "gtstokes/verify.hpp"

using namespace gtstokes;

TEST_CASE("matrix json round trip") {
    const ComplexMatrix a = sample_herm0(90, 0, 3);
    CHECK((matrix_from_json(matrix_to_json(a)) - a).norm() == 0.0);
    // hermitian upper-triangle form restores the lower triangle
    CHECK((matrix_from_json(matrix_to_json(a, true)) - a).norm() == 0.0);
}

TEST_CASE("matrix json validation errors") {
    CHECK_THROWS_AS(matrix_from_json(json{{"entries", json::array()}}), StructuralError);
    json bad;
    bad["n"] = 2;
    bad["entries"] = json::array({json::array({json::array({1.0, 0.0})}),
                                  json::array({json::array({1.0, 0.0})})});
    CHECK_THROWS_AS(matrix_from_json(bad), StructuralError);
    json bad_entry;
    bad_entry["n"] = 1;
    bad_entry["entries"] = json::array({json::array({json::array({1.0})})});
    CHECK_THROWS_AS(matrix_from_json(bad_entry), StructuralError);
}

TEST_CASE("gt coordinates serialization shape") {
    const ComplexMatrix a = sample_herm0(91, 0, 3);
    const json j = gt_coordinates_to_json(gt_coordinates(a));
    REQUIRE(j.contains("actions"));
    REQUIRE(j.contains("angles"));
    REQUIRE(j.contains("moduli"));
    CHECK(j["actions"].size() == 3);
    CHECK(j["angles"].size() == 2);
    CHECK(j["angles"][1].size() == 2);
}

TEST_CASE("load matrix reports parse failures with context") {
    const std::string path = "bad_matrix.json";
    {
        std::ofstream f(path);
        f << "{ not json";
    }
    CHECK_THROWS_WITH(load_matrix(path), Catch::Matchers::ContainsSubstring("parse error"));
    std::remove(path.c_str());
}

TEST_CASE("report serialization and determinism") {
    RunConfig cfg;
    cfg.seed = 7;
    cfg.n = 3;
    cfg.sample_count = 4;
    const Report a = verify_gt(cfg);
    const Report b = verify_gt(cfg);
    REQUIRE(a.checks.size() == b.checks.size());
    for (size_t i = 0; i < a.checks.size(); ++i) {
        CHECK(a.checks[i].name == b.checks[i].name);
        // identical seeds give byte-identical residuals
        CHECK(format_g17(a.checks[i].residual) == format_g17(b.checks[i].residual));
    }
    const json j = a.to_json();
    CHECK(j["suite"] == "gt");
    CHECK(j.contains("pass"));
    CHECK(a.to_csv().find("name,residual") == 0);
}

TEST_CASE("parallel execution does not change results") {
    RunConfig serial;
    serial.seed = 11;
    serial.n = 3;
    serial.sample_count = 6;
    serial.jobs = 1;
    RunConfig parallel = serial;
    parallel.jobs = 4;
    const Report a = verify_gt(serial);
    const Report b = verify_gt(parallel);
    REQUIRE(a.checks.size() == b.checks.size());
    for (size_t i = 0; i < a.checks.size(); ++i)
        CHECK(format_g17(a.checks[i].residual) == format_g17(b.checks[i].residual));
}

TEST_CASE("format g17 round trips doubles") {
    for (double x : {1.0 / 3.0, 2.718281828459045, -1e-17}) {
        const std::string s = format_g17(x);
        CHECK(std::stod(s) == x);
    }
}
