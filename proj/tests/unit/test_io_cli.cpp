#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "shellspec/cli.hpp"
#include "shellspec/io.hpp"

using namespace shellspec;

TEST_CASE("doubles round-trip through text")
{
    for (double x : {0.1, -1.0 / 3.0, 1e-300, 6.02e23, 0.0}) CHECK(std::stod(format_double(x)) == x);
    CHECK(number_to_json(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(std::isinf(number_from_json(json("-inf"))));
    CHECK(number_from_json(json(2.5)) == 2.5);
    CHECK_THROWS(number_from_json(json("abc")));
}

TEST_CASE("spectrum report JSON")
{
    InteractionParams p;
    p.eta = 2.0;
    const SpectrumReport r = essential_spectrum(p);
    const json j = to_json(r);
    CHECK(j.at("points") == json::array({0.0}));
    CHECK(j.at("bands")[0][0] == "-inf");
    CHECK(j.at("bands")[1][1] == "inf");
    CHECK(j.at("critical").get<bool>());
    const SpectrumReport back = spectrum_from_json(json::parse(j.dump()));
    REQUIRE(back.bands.size() == r.bands.size());
    CHECK(back.bands[0].hi == r.bands[0].hi);
    CHECK(back.isolated_points == r.isolated_points);
    CHECK(back.regime == r.regime);
}

TEST_CASE("params and curve JSON")
{
    InteractionParams p;
    p.eta = 0.25;
    p.tau = -1.5;
    p.lambda = 3.0;
    p.mass = 2.0;
    p.c = 0.5;
    const InteractionParams q = params_from_json(json::parse(to_json(p).dump()));
    CHECK(q.eta == p.eta);
    CHECK(q.tau == p.tau);
    CHECK(q.lambda == p.lambda);
    CHECK(q.mass == p.mass);
    CHECK(q.c == p.c);
    const CurveSpec c = curve_from_json(to_json(build_curve(smoothed_corner(0.3, 1.5))));
    CHECK(c.family == CurveFamily::smoothed_corner);
    CHECK(c.omega == 0.3);
    CHECK(c.width == 1.5);
    CHECK_THROWS(curve_from_json(json{{"family", "smoothed_corner"}}));
}

TEST_CASE("config parsing")
{
    const JobConfig cfg = parse_config(json::parse(R"({"command":"scan","params":{"tau":-1},
        "curve":{"family":"smoothed_corner","omega":0.05},"numerics":{"nodes":300,"window":[0.1,0.5]}})"));
    CHECK(cfg.command == Command::scan);
    CHECK(cfg.params.tau == -1.0);
    CHECK(cfg.numerics.nodes == 300);
    REQUIRE(cfg.numerics.window);
    CHECK(cfg.numerics.window->hi == 0.5);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"command":"fly"})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"command":"scan"})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"command":"bands","params":{"c":0}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"command":"certify","params":{"tau":1}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"command":"bands","numerics":{"window":[1,0]}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"([1,2])")), ConfigError);
}

TEST_CASE("bands and certify jobs write their artifacts")
{
    const auto dir = std::filesystem::temp_directory_path() / "shellspec_unit_cli";
    std::filesystem::remove_all(dir);
    std::ostringstream log;
    JobConfig cfg = parse_config(json{{"command", "bands"}, {"params", {{"eta", 2.0}}}});
    cfg.out_dir = dir.string();
    CHECK(run(cfg, log) == exit_ok);
    std::ifstream f(dir / "spectrum.json");
    REQUIRE(f);
    const json j = json::parse(f);
    CHECK(j.at("points")[0] == 0.0);

    JobConfig c2 = parse_config(json{{"command", "certify"}, {"params", {{"tau", -1.0}}}, {"certificate", {{"L", 20}, {"omega", 0.001}}}});
    c2.out_dir = dir.string();
    CHECK(run(c2, log) == exit_ok);
    std::ifstream g(dir / "certificate.json");
    REQUIRE(g);
    const json k = json::parse(g);
    CHECK(k.at("certified").get<bool>());
    CHECK(number_from_json(k.at("bracket")) == doctest::Approx(-7.21).epsilon(1e-3));
    std::filesystem::remove_all(dir);
}
