#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "mcmo/xfoil_client.hpp"

using namespace mcmo;

namespace {

namespace fs = std::filesystem;

const char* kPolarFixture = R"(
       XFOIL         Version 6.99

 Calculated polar for: test section

 1 1 Reynolds number fixed          Mach number fixed

 xtrf =   1.000 (top)        1.000 (bottom)
 Mach =   0.000     Re =     1.000 e 6     Ncrit =   9.000

   alpha    CL        CD       CDp       CM     Top_Xtr  Bot_Xtr
  ------ -------- --------- --------- -------- -------- --------
   4.000   0.8500   0.00850   0.00350  -0.0500   0.5500   0.7500
   6.000   1.05e+0  9.20e-3   0.00410  -0.0520   0.4900   0.7100
)";

// Writes an executable fake-solver script and returns its path.
std::string write_fake_solver(const std::string& name, const std::string& body) {
    const fs::path dir = fs::temp_directory_path() / "mcmo_fake_solver";
    fs::create_directories(dir);
    const fs::path path = dir / name;
    {
        std::ofstream out(path);
        out << "#!/bin/sh\n" << body;
    }
    fs::permissions(path, fs::perms::owner_all | fs::perms::group_read | fs::perms::others_read);
    return path.string();
}

// Extracts the polar filename requested on stdin (the line after PACC) and
// writes canned content there.
std::string polar_writing_body(const std::string& polar_content) {
    return "polar=$(awk '/^PACC$/{getline; if ($0 != \"\") {print; exit}}')\n"
           "[ -n \"$polar\" ] || exit 9\n"
           "cat > \"$polar\" <<'POLAR_EOF'\n" +
           polar_content + "POLAR_EOF\n";
}

XfoilConfig test_config(const std::string& binary) {
    XfoilConfig cfg;
    cfg.binary = binary;
    cfg.timeout_ms = 5000;
    cfg.workdir = (fs::temp_directory_path() / "mcmo_xfoil_test").string();
    return cfg;
}

}  // namespace

TEST_SUITE("xfoil_client") {

TEST_CASE("polar parsing") {
    SUBCASE("fixture with header, leading whitespace, scientific notation") {
        const auto points = parse_polar(kPolarFixture);
        REQUIRE(points.size() == 2);
        CHECK(points[0].alpha == doctest::Approx(4.0));
        CHECK(points[0].cl == doctest::Approx(0.85));
        CHECK(points[0].cd == doctest::Approx(0.0085));
        CHECK(points[1].cl == doctest::Approx(1.05));
        CHECK(points[1].cd == doctest::Approx(0.0092));
    }
    SUBCASE("headerless numeric table") {
        const auto points = parse_polar("  2.0  0.5  0.01\n  3.0  0.6  0.011\n");
        REQUIRE(points.size() == 2);
        CHECK(points[1].alpha == doctest::Approx(3.0));
    }
    SUBCASE("empty accumulation parses to no points") {
        CHECK(parse_polar("").empty());
        const std::string headers_only =
            "   alpha    CL        CD\n  ------ -------- ---------\n";
        CHECK(parse_polar(headers_only).empty());
    }
    SUBCASE("malformed rows are rejected with a line number") {
        const std::string bad =
            "   alpha    CL        CD\n  ------ -------- ---------\n   4.0  garbage  0.01\n";
        CHECK_THROWS_WITH_AS(parse_polar(bad), doctest::Contains("line 3"), std::runtime_error);
        CHECK_THROWS_AS(parse_polar("this is not a polar at all"), std::runtime_error);
    }
}

TEST_CASE("command script carries the session parameters") {
    XfoilConfig cfg;
    cfg.binary = "xfoil";
    cfg.ncrit = 7.5;
    cfg.iter_limit = 250;
    const auto script = xfoil_command_script(cfg, "foo.dat", "polar.txt", 4.25, 2.5e6);
    CHECK(script.find("LOAD foo.dat") != std::string::npos);
    CHECK(script.find("VISC 2500000") != std::string::npos);
    CHECK(script.find("N 7.5") != std::string::npos);
    CHECK(script.find("ITER 250") != std::string::npos);
    CHECK(script.find("polar.txt") != std::string::npos);
    CHECK(script.find("ALFA 4.25") != std::string::npos);
    CHECK(script.find("QUIT") != std::string::npos);
}

TEST_CASE("process client failure variants (fake solver)") {
    const auto geometry = kt_transform(-0.15, 0.05, 10.0, 80);

    SUBCASE("successful session parses the coefficients") {
        const auto solver = write_fake_solver("ok.sh", polar_writing_body(kPolarFixture));
        const auto result = external_evaluate(test_config(solver), geometry, 4.0, 1e6);
        REQUIRE(aero_ok(result));
        const auto c = std::get<AeroCoefficients>(result);
        CHECK(c.cl == doctest::Approx(0.85));
        CHECK(c.cd == doctest::Approx(0.0085));
    }
    SUBCASE("timeout kills the process") {
        const auto solver = write_fake_solver("slow.sh", "sleep 30\n");
        auto cfg = test_config(solver);
        cfg.timeout_ms = 100;
        const auto result = external_evaluate(cfg, geometry, 4.0, 1e6);
        REQUIRE_FALSE(aero_ok(result));
        CHECK(std::get<AeroFailure>(result).kind == AeroFailureKind::Timeout);
    }
    SUBCASE("nonzero exit maps to a process error") {
        const auto solver = write_fake_solver("broken.sh", "exit 3\n");
        const auto result = external_evaluate(test_config(solver), geometry, 4.0, 1e6);
        REQUIRE_FALSE(aero_ok(result));
        CHECK(std::get<AeroFailure>(result).kind == AeroFailureKind::ProcessError);
    }
    SUBCASE("missing polar file maps to a parse error") {
        const auto solver = write_fake_solver("silent.sh", "exit 0\n");
        const auto result = external_evaluate(test_config(solver), geometry, 4.0, 1e6);
        REQUIRE_FALSE(aero_ok(result));
        CHECK(std::get<AeroFailure>(result).kind == AeroFailureKind::ParseError);
    }
    SUBCASE("malformed polar maps to a parse error") {
        const auto solver = write_fake_solver(
            "garbled.sh", polar_writing_body("   alpha  CL  CD\n ---- ---- ----\n 4.0 xx 0.01\n"));
        const auto result = external_evaluate(test_config(solver), geometry, 4.0, 1e6);
        REQUIRE_FALSE(aero_ok(result));
        CHECK(std::get<AeroFailure>(result).kind == AeroFailureKind::ParseError);
    }
    SUBCASE("no row at the requested alpha maps to non-convergence") {
        const auto solver = write_fake_solver(
            "wrong_alpha.sh",
            polar_writing_body("   alpha  CL  CD\n ---- ---- ----\n   2.000  0.5  0.01\n"));
        const auto result = external_evaluate(test_config(solver), geometry, 4.0, 1e6);
        REQUIRE_FALSE(aero_ok(result));
        CHECK(std::get<AeroFailure>(result).kind == AeroFailureKind::NonConverged);
    }
    SUBCASE("missing binary path is rejected up front") {
        XfoilConfig cfg;
        CHECK_THROWS_AS(XfoilEvaluator{cfg}, std::invalid_argument);
        const auto result = external_evaluate(cfg, geometry, 4.0, 1e6);
        REQUIRE_FALSE(aero_ok(result));
        CHECK(std::get<AeroFailure>(result).kind == AeroFailureKind::ProcessError);
    }
}

// Exercised only when an environment variable points at a real solver.
TEST_CASE("real solver session" * doctest::skip(std::getenv("MCMO_XFOIL_BIN") == nullptr)) {
    const char* bin = std::getenv("MCMO_XFOIL_BIN");
    REQUIRE(bin != nullptr);
    XfoilConfig cfg = test_config(bin);
    cfg.timeout_ms = 60000;
    XfoilEvaluator evaluator(cfg);
    const auto result = evaluator.evaluate({-0.15, 0.05, 10.0, 4.0}, 1e6);
    REQUIRE(aero_ok(result));
    const auto c = std::get<AeroCoefficients>(result);
    CHECK(c.cd > 0.0);
    CHECK(std::isfinite(c.cl));
}

}  // TEST_SUITE
