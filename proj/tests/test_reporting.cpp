#include <doctest.h>

#include <fstream>
#include <sstream>

#include "bettibounds/parser.hpp"
#include "bettibounds/report.hpp"

using namespace bettibounds;

namespace {

std::string strip_timestamp(const std::string& rendered) {
    std::string out;
    std::istringstream in(rendered);
    std::string line;
    while (std::getline(in, line))
        if (line.find("\"timestamp\"") == std::string::npos) out += line + "\n";
    return out;
}

}  // namespace

TEST_CASE("jobspec parsing") {
    std::istringstream in(R"(
# batch of two jobs
[job]
name = circle
mode = bound
measure = degree
formula = "x0^2 + x1^2 - 1 = 0"
n = 2

[job]
mode = verify
formula = "x0^2 + x1^2 - 1 <= 0"
box = 5/2
res = 32
o_const.quantified_exponent = 2
field = gfp:32003
out = disk.json
)");
    const auto jobs = parse_jobspec(in, "<test>");
    REQUIRE(jobs.size() == 2);
    CHECK(jobs[0].name == "circle");
    CHECK(jobs[0].mode == JobSpec::Mode::Bound);
    CHECK(jobs[0].formula == "x0^2 + x1^2 - 1 = 0");
    CHECK(jobs[0].n == 2);
    CHECK(jobs[1].name == "job-2");
    CHECK(jobs[1].mode == JobSpec::Mode::Verify);
    CHECK(jobs[1].box == Rat(5, 2));
    CHECK(jobs[1].res == 32);
    CHECK(jobs[1].o_constants.at("quantified_exponent") == 2);
    CHECK(jobs[1].field == "gfp:32003");
    CHECK(jobs[1].out == "disk.json");
}

TEST_CASE("jobspec rejects malformed input") {
    auto expect_reject = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(parse_jobspec(in, "<test>"), std::invalid_argument);
    };
    expect_reject("mode = bound\n");                                 // key before [job]
    expect_reject("[job]\nmode = bound\n");                          // missing formula
    expect_reject("[job]\nmode = bound\nformula = x0 = 0\n");        // unquoted formula
    expect_reject("[job]\nmode = bound\nformula = \"x0 = 0\"\nwat = 1\n");  // unknown key
    expect_reject("[job]\nmode = dance\nformula = \"x0 = 0\"\n");    // unknown mode
    expect_reject("[job]\nmode = verify\n");                         // verify needs formula
    expect_reject("[job]\nmode = bound\nformula = \"x0 = 0\"\nres = 1\n");
    expect_reject("[job]\nmode = bound\nformula = \"x0 = 0\"\nfield = gf3\n");
    expect_reject("");                                               // no jobs at all
    expect_reject("[job]\nmode = bound\nformula = \"x0 = 0\"\nlambda = nope\n");
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3") == Rat(3));
    CHECK(parse_rational("1/64") == Rat(1, 64));
    CHECK(parse_rational("10/4") == Rat(5, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
}

TEST_CASE("bound JSON carries theorem, inputs, o-constants, value, trace") {
    const auto deg = degree_measure();
    OConstants consts;
    consts.set("projection_sum", 3);
    const Bound b = projection_bound(*deg, 1, 2, 1, 2, {ComplexityVector{2}}, consts);
    const Json j = bound_to_json(b);
    CHECK(j["theorem"] == "projection");
    CHECK(j["o_constants"]["projection_sum"] == 3);
    CHECK(j["value"] == b.value.str());
    CHECK(j["inputs"].contains("measure"));
    CHECK(j["trace"].is_array());
    CHECK(!j["trace"].empty());
}

TEST_CASE("reports validate and stamp a trailing timestamp") {
    JobSpec job;
    job.name = "circle";
    job.mode = JobSpec::Mode::Bound;
    job.formula = "x0^2 + x1^2 - 1 = 0";

    const auto deg = degree_measure();
    const RouteResult route =
        route_formula_bound(*deg, parse_formula(*job.formula), 2, OConstants{});
    const Json report = bound_report(job, route, 2);
    CHECK_NOTHROW(validate_report(report));

    const std::string rendered = render_report(report);
    CHECK(rendered.find("\"timestamp\"") != std::string::npos);

    // Identical spec implies byte-identical output modulo the timestamp.
    const std::string again = render_report(report);
    CHECK(strip_timestamp(rendered) == strip_timestamp(again));

    Json broken = report;
    broken.erase("bound");
    CHECK_THROWS_AS(validate_report(broken), std::invalid_argument);
    Json wrong_schema = report;
    wrong_schema["schema"] = "x";
    CHECK_THROWS_AS(validate_report(wrong_schema), std::invalid_argument);
}

TEST_CASE("atomic report writing") {
    JobSpec job;
    job.name = "t";
    job.mode = JobSpec::Mode::Bound;
    job.formula = "x0 = 0";
    const auto deg = degree_measure();
    const RouteResult route = route_formula_bound(*deg, parse_formula("x0 = 0", 1), 1, OConstants{});
    const std::string path = "test_report_out.json";
    write_report_atomic(path, bound_report(job, route, 1));
    std::ifstream in(path);
    REQUIRE(in.good());
    const Json back = Json::parse(in);
    CHECK(back["schema"] == "bettibounds.report.v1");
    CHECK(back["bound"]["value"] == "1");
    std::remove(path.c_str());
}

TEST_CASE("verify report shape") {
    JobSpec job;
    job.name = "v";
    job.mode = JobSpec::Mode::Verify;
    job.formula = "x0^2 + x1^2 - 1 <= 0";
    const auto deg = degree_measure();
    const auto dom = verify_domination(*deg, parse_formula(*job.formula), "auto", 2, 16,
                                       OConstants{}, CoefficientField::gf2());
    const Json j = verify_report(job, dom);
    CHECK_NOTHROW(validate_report(j));
    CHECK(j["dominates"] == true);
    CHECK(j["oracle"]["betti"].size() == 2);
}
