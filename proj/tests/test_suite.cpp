#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "vp/body.hpp"
#include "vp/errors.hpp"
#include "vp/suite.hpp"

using namespace vp;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    std::filesystem::path dir = std::filesystem::temp_directory_path() / "vp-suite-tests";
    std::filesystem::create_directories(dir);
    std::filesystem::path p = dir / name;
    std::ofstream out(p);
    out << content;
    return p;
}

} // namespace

TEST_CASE("manifest validation") {
    SUBCASE("missing seed is an error") {
        nlohmann::json j = {{"checks", {{{"name", "santalo"}}}}};
        CHECK_THROWS_AS(manifest_from_json(j, "."), input_error);
    }
    SUBCASE("missing body file fails before any check runs") {
        nlohmann::json j = {
            {"checks",
             {{{"name", "santalo"},
               {"seed", 1},
               {"params", {{"body", "does-not-exist.json"}}}}}}};
        CHECK_THROWS_AS(manifest_from_json(j, "."), input_error);
    }
    SUBCASE("empty manifest runs to an empty report") {
        nlohmann::json j = {{"checks", nlohmann::json::array()}};
        RunManifest manifest = manifest_from_json(j, ".");
        RunResult result = run_manifest(manifest);
        CHECK(result.all_pass);
        CHECK(result.rows.empty());
    }
    SUBCASE("unknown format is rejected") {
        nlohmann::json j = {{"checks", nlohmann::json::array()}, {"format", "xml"}};
        CHECK_THROWS_AS(manifest_from_json(j, "."), input_error);
    }
}

TEST_CASE("manifest run over a body file") {
    std::filesystem::path body = write_temp("cube3.json", body_to_json(make_cube(3)).dump());
    nlohmann::json j = {
        {"checks",
         {{{"name", "santalo"}, {"seed", 7}, {"params", {{"body", body.filename().string()}}}},
          {{"name", "bipolar"}, {"seed", 8}, {"params", {{"body", body.filename().string()}}}}}},
        {"format", "csv"}};
    RunManifest manifest = manifest_from_json(j, body.parent_path().string());
    RunResult result = run_manifest(manifest, 2);
    CHECK(result.all_pass);
    REQUIRE(result.rows.size() == 3); // santalo upper + lower, bipolar
    CHECK(result.rows[0].report.name == "santalo-upper");
    CHECK(result.rows[0].report.lhs == doctest::Approx(32.0 / 3.0).epsilon(1e-9));
    std::string csv = report_csv(result.rows);
    CHECK(csv.rfind("vp-report-v1\n", 0) == 0);
    CHECK(csv.find("santalo-lower") != std::string::npos);
}

TEST_CASE("json report rows are deterministic for fixed seeds") {
    nlohmann::json body_inline = body_to_json(make_hexagon_zonotope());
    nlohmann::json j = {
        {"checks",
         {{{"name", "lemma33"},
           {"seed", 42},
           {"params", {{"body_inline", body_inline}, {"method", "mc"}, {"samples", 20000}}}},
          {{"name", "zonoid"}, {"seed", 43}, {"params", {{"body_inline", body_inline}}}}}}};
    RunManifest manifest = manifest_from_json(j, ".");
    RunResult a = run_manifest(manifest, 2);
    RunResult b = run_manifest(manifest, 1);
    CHECK(report_json(a.rows)["rows"].dump() == report_json(b.rows)["rows"].dump());
}

TEST_CASE("named check dispatch covers the function checks") {
    CHECK(run_named_check("rho", {{"body", "cube"}, {"dim", 2}}, 1)[0].pass);
    CHECK(run_named_check("eta", {{"dim", 1}, {"lattice_radius", 40}}, 1)[0].pass);
    CHECK(run_named_check("poisson", {{"fn", "sinc2"}, {"dim", 1}, {"lattice_radius", 10}}, 1)[0].pass);
    CHECK(run_named_check("plancherel", {{"fn", "gaussian"}, {"dim", 1}}, 1)[0].pass);
    CHECK(run_named_check("lemma34", {{"fn", "tent"}, {"p", 1.0}}, 1)[0].pass);
    nlohmann::json disk_params = {{"fn", "indicator"},
                                  {"body_inline", body_to_json(ConvexBody::ball(2))},
                                  {"extent", 8.0},
                                  {"m", 129}};
    CHECK(run_named_check("functional-santalo", disk_params, 1)[0].pass);
    CHECK_THROWS_AS(run_named_check("no-such-check", {}, 1), input_error);
}
