#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "unclelab/io.hpp"
#include "unclelab/models.hpp"

using namespace unclelab;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("matrix json round trip is bit exact") {
    Rng rng(101);
    Matrix m = random_matrix(rng, 3, 2);
    m(0, 0) = cd(0.1, -0.3);  // not exactly representable, still must survive
    Matrix back = json_to_matrix(matrix_to_json(m));
    REQUIRE(back.rows() == 3);
    REQUIRE(back.cols() == 2);
    CHECK((back - m).norm() == 0.0);
}

TEST_CASE("ragged rows are rejected") {
    nlohmann::json bad = nlohmann::json::array();
    bad.push_back({{1.0, 0.0}, {2.0, 0.0}});
    bad.push_back({{3.0, 0.0}});
    CHECK_THROWS_AS(json_to_matrix(bad), ParseError);
}

TEST_CASE("tensor and block files round trip through disk") {
    fs::path dir = fresh_dir("uncle_lab_io_test");
    BlockMps c = ghz_tensor();
    save_json((dir / "blocks.json").string(), blocks_to_json(c));
    BlockMps back = load_blocks((dir / "blocks.json").string());
    REQUIRE(back.block_count() == 2);
    for (int b = 0; b < 2; ++b)
        for (int i = 0; i < 2; ++i)
            CHECK((back.block(b).mat(i) - c.block(b).mat(i)).norm() == 0.0);

    MpsTensor t = oracle::random_canonical(4, 2, 103);
    save_json((dir / "tensor.json").string(), tensor_to_json(t));
    MpsTensor t2 = load_tensor((dir / "tensor.json").string());
    for (int i = 0; i < 4; ++i) CHECK((t2.mat(i) - t.mat(i)).norm() == 0.0);

    // Kind tags keep the loaders honest.
    CHECK_THROWS_AS(load_blocks((dir / "tensor.json").string()), ParseError);
    fs::remove_all(dir);
}

TEST_CASE("perturbation and term round trips") {
    fs::path dir = fresh_dir("uncle_lab_io_test2");
    BlockMps c = ghz_tensor();
    Perturbation p = random_injective_perturbation(c, 3);
    save_json((dir / "pert.json").string(), perturbation_to_json(p));
    Perturbation p2 = load_perturbation((dir / "pert.json").string());
    for (int i = 0; i < 2; ++i) {
        CHECK((p2.r.mat(i) - p.r.mat(i)).norm() == 0.0);
        CHECK((p2.l.mat(i) - p.l.mat(i)).norm() == 0.0);
        CHECK((p2.pa.mat(i) - p.pa.mat(i)).norm() == 0.0);
        CHECK((p2.pb.mat(i) - p.pb.mat(i)).norm() == 0.0);
    }

    ProjectorTerm term = ghz_uncle_term();
    save_json((dir / "term.json").string(), term_to_json(term));
    ProjectorTerm term2 = load_term((dir / "term.json").string());
    CHECK(term2.support == 3);
    CHECK(term2.local_dim == 2);
    CHECK((term2.matrix - term.matrix).norm() == 0.0);

    nlohmann::json bad = term_to_json(term);
    bad["support"] = 2;  // 4 != 8 rows
    CHECK_THROWS_AS(json_to_term(bad), ParseError);
    fs::remove_all(dir);
}

TEST_CASE("load_json failure modes") {
    CHECK_THROWS_AS(load_json("/nonexistent/path/x.json"), ParseError);
    fs::path dir = fresh_dir("uncle_lab_io_test3");
    std::ofstream((dir / "broken.json").string()) << "{ not json";
    CHECK_THROWS_AS(load_json((dir / "broken.json").string()), ParseError);
    fs::remove_all(dir);
}

TEST_CASE("float formatting carries 17 significant digits") {
    CHECK(format_float(1.0) == "1");
    CHECK(format_float(0.1) == "0.10000000000000001");
    CHECK(format_float(-2.5) == "-2.5");
    double v = 3.141592653589793;
    CHECK(std::stod(format_float(v)) == v);
}

TEST_CASE("spectrum csv layout") {
    SpectrumReport rep;
    rep.sites = 4;
    rep.method = "dense";
    rep.values = RealVector(2);
    rep.values << 0.0, 0.5;
    rep.residuals = RealVector::Zero(2);
    rep.kernel_dim = 1;
    rep.gap = 0.5;
    std::string csv = spectrum_csv({rep});
    CHECK(csv == "n,index,eigenvalue\n4,0,0\n4,1,0.5\n");
}

TEST_CASE("run config embeds in reports") {
    RunConfig config;
    config.command = "spectrum";
    config.inputs = {"term.json"};
    config.n_lo = 4;
    config.n_hi = 8;
    nlohmann::json j = to_json(config);
    CHECK(j.at("command") == "spectrum");
    CHECK(j.at("n_lo") == 4);
    CHECK(j.at("seed") == 1);
    CHECK(j.at("boundary") == "periodic");
}

TEST_CASE("cache round trips when the directory is set") {
    fs::path dir = fresh_dir("uncle_lab_cache_test");
    setenv("UNCLE_LAB_CACHE", dir.string().c_str(), 1);
    std::string key = cache_key("payload-one");
    CHECK(key.size() == 16);
    CHECK(cache_key("payload-one") == key);
    CHECK(cache_key("payload-two") != key);
    CHECK(!cache_get(key).has_value());
    cache_put(key, "{\"v\":1}");
    auto hit = cache_get(key);
    REQUIRE(hit.has_value());
    CHECK(*hit == "{\"v\":1}");
    unsetenv("UNCLE_LAB_CACHE");
    CHECK(!cache_get(key).has_value());
    fs::remove_all(dir);
}

TEST_CASE("json serialization is key sorted and reproducible") {
    BlockMps c = ghz_tensor();
    std::string a = blocks_to_json(c).dump(2);
    std::string b = blocks_to_json(c).dump(2);
    CHECK(a == b);
    fs::path dir = fresh_dir("uncle_lab_io_test4");
    save_json((dir / "a.json").string(), blocks_to_json(c));
    save_json((dir / "b.json").string(), blocks_to_json(c));
    std::ifstream fa((dir / "a.json").string()), fb((dir / "b.json").string());
    std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    CHECK(!sa.empty());
    CHECK(sa.back() == '\n');
    fs::remove_all(dir);
}
