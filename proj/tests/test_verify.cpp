#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "rmkit/verify.hpp"
#include "support.hpp"

using namespace rmkit;

namespace {

std::string temp_path(const char* stem) {
    static int counter = 0;
    auto dir = std::filesystem::temp_directory_path();
    return (dir / (std::string(stem) + std::to_string(counter++) + ".json"))
        .string();
}

const Json& point_result(const VerificationReport& r, long key1, long key2) {
    for (const PointResult& p : r.points)
        if (p.key1 == key1 && p.key2 == key2) return p.payload;
    FAIL("grid point not present");
    static Json dummy;
    return dummy;
}

}  // namespace

TEST_CASE("grid guards reject out-of-range specs") {
    GridSpec g;
    g.D_max = 101;
    CHECK_THROWS_AS(g.validate(), BoundExceededError);
    g = GridSpec{};
    g.D_max = 1;
    CHECK_THROWS_AS(g.validate(), BoundExceededError);
    g = GridSpec{};
    g.f_max = 11;
    CHECK_THROWS_AS(g.validate(), BoundExceededError);
    g = GridSpec{};
    g.k_max = 0;
    CHECK_THROWS_AS(g.validate(), BoundExceededError);
    g = GridSpec{};
    g.k_max = 257;
    CHECK_THROWS_AS(g.validate(), BoundExceededError);
    g = GridSpec{};
    g.norm_bound = 1001;
    CHECK_THROWS_AS(g.validate(), BoundExceededError);
    g = GridSpec{};
    g.N_max = 31;
    CHECK_THROWS_AS(g.validate(), BoundExceededError);
    g = GridSpec{};
    g.points = {{12, 1}};  // 12 = 4*3 is not squarefree
    CHECK_THROWS_AS(g.validate(), NonCanonicalRadicandError);
    g = GridSpec{};
    g.points = {{5, 11}};
    CHECK_THROWS_AS(g.validate(), BoundExceededError);
    GridSpec ok;
    CHECK_NOTHROW(ok.validate());
}

TEST_CASE("parse_grid_points reads explicit point lists") {
    auto pts = parse_grid_points("(2,1),(5,1),(3,1)");
    REQUIRE(pts.size() == 3);
    CHECK(pts[0] == std::pair<Int, Int>{2, 1});
    CHECK(pts[1] == std::pair<Int, Int>{5, 1});
    CHECK(pts[2] == std::pair<Int, Int>{3, 1});
    CHECK(parse_grid_points(" ( 2 , 2 ) ").size() == 1);
    CHECK_THROWS_AS(parse_grid_points(""), ParseError);
    CHECK_THROWS_AS(parse_grid_points("(2,1),"), ParseError);
    CHECK_THROWS_AS(parse_grid_points("(2,1"), ParseError);
    CHECK_THROWS_AS(parse_grid_points("2,1"), ParseError);
}

TEST_CASE("target names round-trip") {
    for (Target t : {Target::lemma1, Target::lemma3, Target::lemma4,
                     Target::theorem1})
        CHECK(target_from_name(target_name(t)) == t);
    CHECK_THROWS_AS(target_from_name("lemma2"), ParseError);
}

TEST_CASE("level-target verification reports index N for 2..15") {
    GridSpec g;
    g.N_max = 15;
    VerificationReport r = run_verification(Target::lemma4, g);
    CHECK(r.points.size() == 14);
    CHECK(r.asserted_pass == 14);
    CHECK(r.asserted_fail == 0);
    CHECK(r.all_asserted_pass);
    CHECK(r.recorded == 0);
    CHECK(r.discrepancy_flagged == 0);
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        long N = static_cast<long>(i) + 2;
        CHECK(r.points[i].key1 == N);
        CHECK(r.points[i].payload.at("index").get<std::int64_t>() == N);
        CHECK(r.points[i].payload.at("order_ok").get<bool>());
    }
}

TEST_CASE("unit-stabilizer verification records the minimal-power table") {
    GridSpec g;
    g.points = parse_grid_points("(2,1),(5,1),(3,1),(2,2)");
    VerificationReport r = run_verification(Target::lemma1, g);
    CHECK(r.points.size() == 4);
    CHECK(r.all_asserted_pass);
    CHECK(r.recorded == 4);  // one power probe per point
    CHECK(point_result(r, 2, 1).at("k").get<std::int64_t>() == 1);
    CHECK(point_result(r, 5, 1).at("k").get<std::int64_t>() == 10);
    CHECK(point_result(r, 3, 1).at("k").get<std::int64_t>() == 6);
    CHECK(point_result(r, 2, 2).at("k").get<std::int64_t>() == 4);
    // Points arrive sorted by (D, f).
    CHECK(r.points[0].key1 == 2);
    CHECK(r.points[0].key2 == 1);
    CHECK(r.points[1].key1 == 2);
    CHECK(r.points[1].key2 == 2);
    CHECK(r.points[2].key1 == 3);
    CHECK(r.points[3].key1 == 5);
}

TEST_CASE("norm-minimizer verification splits asserted and flagged points") {
    GridSpec g;  // default D_max 30, f_max 3
    VerificationReport r = run_verification(Target::lemma3, g);
    // 18 squarefree radicands in 2..30, three conductors each.
    CHECK(r.points.size() == 54);
    CHECK(r.all_asserted_pass);
    // Five radicands are 1 mod 4 (5, 13, 17, 21, 29): every such point is
    // recorded; f=2 points are flagged by the integrality filter, and the
    // odd-f recovery disagreement flags the rest.
    CHECK(r.recorded == 15);
    CHECK(r.discrepancy_flagged == 15);

    const Json& p52 = point_result(r, 5, 2);
    CHECK(p52.at("case1_even_f").get<bool>());
    const Json& p51 = point_result(r, 5, 1);
    CHECK(p51.at("min_is_f2D").get<bool>());
    CHECK_FALSE(p51.at("agreement").get<bool>());
    CHECK(p51.at("search").at("min_norm").get<std::int64_t>() == 5);
    const Json& p21 = point_result(r, 2, 1);
    CHECK(p21.at("agreement").get<bool>());
    CHECK(p21.at("claimed") ==
          Json({{"D", 2}, {"f", 1}, {"sign", "real"}}));
}

TEST_CASE("chained verification nests the three harnesses") {
    GridSpec g;
    g.points = parse_grid_points("(2,1),(5,1),(29,3)");
    VerificationReport r = run_verification(Target::theorem1, g);
    CHECK(r.points.size() == 3);
    CHECK(r.all_asserted_pass);

    const Json& p21 = point_result(r, 2, 1);
    CHECK(p21.at("lemma3").at("agreement").get<bool>());
    CHECK(p21.at("lemma1").at("k").get<std::int64_t>() == 1);
    CHECK_FALSE(p21.at("lemma4_skipped").get<bool>());
    CHECK(p21.at("lemma4").at("index").get<std::int64_t>() == 2);

    const Json& p51 = point_result(r, 5, 1);
    CHECK(p51.at("lemma4").at("index").get<std::int64_t>() == 5);

    // N = 3 * 29 = 87 exceeds the level enumeration range: skip is recorded.
    const Json& p293 = point_result(r, 29, 3);
    CHECK(p293.at("lemma4_skipped").get<bool>());
    CHECK(p293.at("lemma4").is_null());
}

TEST_CASE("reports are deterministic across thread counts") {
    GridSpec g;
    g.D_max = 15;
    g.f_max = 2;
    VerificationReport one = run_verification(Target::theorem1, g, 1);
    VerificationReport four = run_verification(Target::theorem1, g, 4);
    Json a = json_of(one), b = json_of(four);
    a.erase("duration_ms");
    b.erase("duration_ms");
    CHECK(a == b);
}

TEST_CASE("report JSON carries schema and summary fields") {
    GridSpec g;
    g.points = parse_grid_points("(2,1)");
    VerificationReport r = run_verification(Target::lemma1, g);
    Json j = json_of(r);
    CHECK(j.at("schema_version").get<int>() == 1);
    CHECK(j.at("tool_version").get<std::string>() == RMKIT_VERSION);
    CHECK(j.at("target").get<std::string>() == "lemma1");
    CHECK(j.at("grid").at("points").size() == 1);
    CHECK(j.at("summary").at("asserted_pass").get<std::int64_t>() == 1);
    CHECK(j.at("summary").at("asserted_fail").get<std::int64_t>() == 0);
    CHECK(j.at("summary").at("recorded").get<std::int64_t>() == 1);
    CHECK(j.at("summary").at("discrepancy_flagged").get<std::int64_t>() == 0);
    CHECK(j.at("all_asserted_pass").get<bool>());
    CHECK(j.contains("duration_ms"));
    // Grid spec round-trips through its JSON form.
    CHECK(grid_from_json(j.at("grid")) == g);
}

TEST_CASE("written reports re-parse and re-verify") {
    GridSpec g;
    g.points = parse_grid_points("(2,1),(5,1)");
    VerificationReport r = run_verification(Target::theorem1, g);
    std::string path = temp_path("rmkit_report_");
    write_report(r, path);

    RecheckOutcome rc = recheck_report_file(path);
    CHECK(rc.match);
    CHECK(rc.all_asserted_pass);
    std::remove(path.c_str());
}

TEST_CASE("recheck catches a tampered report") {
    GridSpec g;
    g.points = parse_grid_points("(5,1)");
    VerificationReport r = run_verification(Target::lemma1, g);
    Json stored = json_of(r);
    stored["points"][0]["result"]["k"] = 9;  // the true value is 10
    RecheckOutcome rc = recheck_report(stored);
    CHECK_FALSE(rc.match);
    CHECK(rc.diagnostic.find("recheck mismatch") != std::string::npos);
}

TEST_CASE("recheck rejects an unsupported schema") {
    GridSpec g;
    g.points = parse_grid_points("(2,1)");
    Json stored = json_of(run_verification(Target::lemma1, g));
    stored["schema_version"] = 2;
    RecheckOutcome rc = recheck_report(stored);
    CHECK_FALSE(rc.match);
    CHECK(rc.diagnostic == "unsupported schema_version");
}

TEST_CASE("write_report rejects an unwritable path") {
    GridSpec g;
    g.points = parse_grid_points("(2,1)");
    VerificationReport r = run_verification(Target::lemma1, g);
    CHECK_THROWS_AS(write_report(r, "/nonexistent-dir/report.json"), Error);
}

TEST_CASE("recheck_report_file propagates read and parse failures") {
    CHECK_THROWS_AS(recheck_report_file("/nonexistent-dir/report.json"), Error);
    std::string path = temp_path("rmkit_badjson_");
    {
        std::ofstream out(path);
        out << "this is not json";
    }
    CHECK_THROWS_AS(recheck_report_file(path), ParseError);
    std::remove(path.c_str());
}

TEST_CASE("verification rejects invalid grids before running") {
    GridSpec g;
    g.D_max = 200;
    CHECK_THROWS_AS(run_verification(Target::lemma1, g), BoundExceededError);
}
