#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>

#include "dcs/config.hpp"
#include "dcs/io.hpp"
#include "dcs/surfaces.hpp"

#include "test_util.hpp"

using namespace dcs;
using namespace testutil;

namespace fs = std::filesystem;

TEST_SUITE("io") {

TEST_CASE("format_double: shortest representation round-trips exactly") {
    SplitMix64 rng(83);
    for (int k = 0; k < 1000; ++k) {
        const double v = rng.next_gaussian() * std::pow(10.0, (int)(rng.next_u64() % 21) - 10);
        const std::string s = format_double(v);
        double back = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), back);
        REQUIRE(ec == std::errc{});
        CHECK(back == v);
    }
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1e-5) == "1e-05");
}

TEST_CASE("atomic_write leaves no temp file behind") {
    const fs::path dir = fs::temp_directory_path() / "dcs_io_test";
    fs::create_directories(dir);
    const fs::path p = dir / "out.txt";
    atomic_write(p, "hello\n");
    CHECK(read_file(p) == "hello\n");
    CHECK(!fs::exists(p.string() + ".tmp"));
    atomic_write(p, "replaced\n");
    CHECK(read_file(p) == "replaced\n");
    fs::remove_all(dir);
}

TEST_CASE("config hash tracks bytes") {
    CHECK(hash_bytes_hex("a") != hash_bytes_hex("b"));
    CHECK(hash_bytes_hex("same") == hash_bytes_hex("same"));
    CHECK(hash_bytes_hex("x").size() == 16);
}

TEST_CASE("surface CSV: zeros, malformed rows, bad values") {
    const SurfaceGrid z = parse_surface_csv("0,0,0,0\n0,0,0,0\n0,0,0,0\n0,0,0,0\n", "zeros");
    CHECK(z.dims.rows == 4);
    for (double v : z.z) CHECK(v == 0.0);

    // A row with the wrong column count names the offending row.
    try {
        parse_surface_csv("1,2,3,4\n1,2,3\n1,2,3,4\n1,2,3,4\n", "bad");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_surface_csv("1,2\n3,nope\n", "bad"), ParseError);
    CHECK_THROWS_AS(parse_surface_csv("", "empty"), ParseError);
    // 3x4 grid: rows not a power of two.
    CHECK_THROWS_AS(parse_surface_csv("1,2,3,4\n1,2,3,4\n1,2,3,4\n", "odd"), ConfigError);
}

TEST_CASE("surface CSV writer round-trips through the parser") {
    const SurfaceGrid s = gen_surface(SurfaceKind::peak_valley, GridDims::make(8, 8));
    const SurfaceGrid back = parse_surface_csv(surface_to_csv(s), s.label);
    REQUIRE(back.dims == s.dims);
    for (std::size_t i = 0; i < s.z.size(); ++i) CHECK(back.z[i] == s.z[i]);
}

TEST_CASE("PGM: 8-bit and 16-bit rescale to [0,1]") {
    std::string p8 = "P5\n4 4\n255\n";
    for (int i = 0; i < 16; ++i) p8.push_back(static_cast<char>(255));
    const SurfaceGrid s8 = parse_surface_pgm(p8, "p8");
    for (double v : s8.z) CHECK(v == 1.0);

    std::string p16 = "P5\n# comment line\n2 2\n65535\n";
    const unsigned val = 32768;
    for (int i = 0; i < 4; ++i) {
        p16.push_back(static_cast<char>(val >> 8));
        p16.push_back(static_cast<char>(val & 0xff));
    }
    const SurfaceGrid s16 = parse_surface_pgm(p16, "p16");
    for (double v : s16.z) CHECK(v == doctest::Approx(32768.0 / 65535.0).epsilon(1e-12));

    CHECK_THROWS_AS(parse_surface_pgm("P2\n2 2\n255\n....", "ascii"), ParseError);
    CHECK_THROWS_AS(parse_surface_pgm("P5\n2 2\n255\nab", "short"), ParseError);
}

TEST_CASE("gen_surface: frozen formulas") {
    const SurfaceGrid sphere = gen_surface(SurfaceKind::sphere, GridDims::make(32, 32));
    CHECK(sphere.at(16, 16) == doctest::Approx(12.8).epsilon(1e-9));
    CHECK(sphere.at(0, 0) == 0.0);
    CHECK(sphere.at(0, 31) == 0.0);
    CHECK(sphere.at(31, 0) == 0.0);
    CHECK(sphere.at(31, 31) == 0.0);

    const SurfaceGrid again = gen_surface(SurfaceKind::sphere, GridDims::make(32, 32));
    for (std::size_t i = 0; i < sphere.z.size(); ++i) CHECK(sphere.z[i] == again.z[i]);

    const SurfaceGrid pv = gen_surface(SurfaceKind::peak_valley, GridDims::make(32, 32));
    double sum = 0.0, l1 = 0.0;
    for (double v : pv.z) {
        sum += v;
        l1 += std::abs(v);
    }
    CHECK(std::abs(sum) <= 0.01 * l1);

    CHECK_THROWS_AS(gen_surface(SurfaceKind::sphere, GridDims{12, 12, 144}), ConfigError);
    CHECK_THROWS_AS(surface_kind_from_string("cone"), ConfigError);
}

TEST_CASE("sweep config parses, validates and round-trips defaults") {
    const SweepConfig def = default_sweep_config();
    const std::string text = sweep_config_to_json(def);
    const SweepConfig back = parse_sweep_config(text);
    CHECK(back.trials == def.trials);
    CHECK(back.grid.lambdas == def.grid.lambdas);
    CHECK(back.grid.deltas == def.grid.deltas);
    CHECK(back.base_seed == def.base_seed);
    CHECK(back.noise.kind == def.noise.kind);
    CHECK(sweep_config_to_json(back) == text);

    // Missing surfaces names the field.
    try {
        parse_sweep_config("{}");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("surfaces") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_sweep_config("{\"surfaces\": []}"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_config("not json"), ParseError);
    CHECK_THROWS_AS(
        parse_sweep_config("{\"surfaces\":[{\"kind\":\"sphere\"}],\"grid\":{\"lambdas\":[2,1]}}"),
        ConfigError);
}

TEST_CASE("reconstruct config requires its scalars") {
    CHECK_THROWS_AS(parse_reconstruct_config("{\"surface\":{\"kind\":\"sphere\"}}"), ConfigError);
    const ReconstructConfig cfg = parse_reconstruct_config(
        "{\"surface\":{\"kind\":\"sphere\",\"rows\":16,\"cols\":16},\"lambda\":1e-4,\"delta\":2}");
    CHECK(cfg.lambda == 1e-4);
    CHECK(cfg.delta == 2.0);
    CHECK(cfg.surface.rows == 16);
}

TEST_CASE("load_surface dispatches by extension") {
    const fs::path dir = fs::temp_directory_path() / "dcs_io_test2";
    fs::create_directories(dir);
    const SurfaceGrid s = gen_surface(SurfaceKind::ramp_peak, GridDims::make(8, 8));
    atomic_write(dir / "s.csv", surface_to_csv(s));
    const SurfaceGrid back = load_surface(dir / "s.csv");
    CHECK(back.dims == s.dims);
    CHECK(back.label == "s");
    CHECK_THROWS_AS(load_surface(dir / "missing.csv"), ParseError);
    fs::remove_all(dir);
}

}  // TEST_SUITE
