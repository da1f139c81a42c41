#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "unclelab/io.hpp"
#include "unclelab/models.hpp"
#include "unclelab/uncle.hpp"

using namespace unclelab;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(UNCLE_LAB_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) res.output.append(buf, got);
    int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p.string(), std::ios::binary);
    REQUIRE(f.good());
    return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("bad usage exits with 2") {
    CHECK(run("").code == 2);
    CHECK(run("--definitely-not-a-flag").code == 2);
    CHECK(run("inspect /nonexistent/blocks.json").code == 2);
    CHECK(run("spectrum whatever.json --boundary sideways").code == 2);
}

TEST_CASE("help exits cleanly") {
    RunResult res = run("--help");
    CHECK(res.code == 0);
    CHECK(res.output.find("inspect") != std::string::npos);
}

TEST_CASE("inspect reports per-block structure") {
    fs::path dir = fresh_dir("uncle_cli_inspect");
    save_json((dir / "blocks.json").string(), blocks_to_json(ghz_tensor()));
    RunResult res = run("inspect " + (dir / "blocks.json").string());
    CHECK(res.code == 0);
    CHECK(res.output.find("block 0: injective: true") != std::string::npos);
    CHECK(res.output.find("block 1: injective: true") != std::string::npos);
    CHECK(res.output.find("full tensor injective: false (block-diagonal span)") !=
          std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("uncle writes the limit term and its probe") {
    fs::path dir = fresh_dir("uncle_cli_uncle");
    save_json((dir / "blocks.json").string(), blocks_to_json(ghz_tensor()));
    RunResult res = run("uncle " + (dir / "blocks.json").string() + " --seed 7 --out " +
                        (dir / "out").string());
    CHECK(res.code == 0);
    ProjectorTerm term = load_term((dir / "out" / "term.json").string());
    CHECK(operator_norm(term.matrix - ghz_uncle_term().matrix) < 1e-9);
    std::string probe = slurp(dir / "out" / "probe.csv");
    CHECK(probe.rfind("eps,distance\n", 0) == 0);

    // Same seed, same bytes.
    RunResult rerun = run("uncle " + (dir / "blocks.json").string() + " --seed 7 --out " +
                          (dir / "out2").string());
    CHECK(rerun.code == 0);
    CHECK(slurp(dir / "out" / "probe.csv") == slurp(dir / "out2" / "probe.csv"));
    CHECK(slurp(dir / "out" / "term.json") != slurp(dir / "out2" / "term.json"));  // out dir differs
    nlohmann::json t1 = load_json((dir / "out" / "term.json").string());
    nlohmann::json t2 = load_json((dir / "out2" / "term.json").string());
    t1.erase("config");
    t2.erase("config");
    CHECK(t1.dump() == t2.dump());
    fs::remove_all(dir);
}

TEST_CASE("two-site blocking on the pair model is a precondition failure") {
    fs::path dir = fresh_dir("uncle_cli_sites2");
    save_json((dir / "blocks.json").string(), blocks_to_json(ghz_tensor()));
    RunResult res = run("uncle " + (dir / "blocks.json").string() + " --sites 2");
    CHECK(res.code == 3);
    CHECK(res.output.find("span fills the local space") != std::string::npos);
    CHECK(res.output.find("dim 4 of 4") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("spectrum runs over a length range and clamps count") {
    fs::path dir = fresh_dir("uncle_cli_spectrum");
    save_json((dir / "term.json").string(), term_to_json(ghz_uncle_term()));
    RunResult res = run("spectrum " + (dir / "term.json").string() +
                        " --n-range 3..5 --count 100 --format csv --out " +
                        (dir / "out").string());
    CHECK(res.code == 0);
    CHECK(res.output.find("clamped") != std::string::npos);
    std::string csv = slurp(dir / "out" / "spectrum.csv");
    CHECK(csv.rfind("n,index,eigenvalue\n", 0) == 0);
    // 8 + 16 + 32 rows plus the header.
    size_t lines = static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n'));
    CHECK(lines == 57);

    RunResult rerun = run("spectrum " + (dir / "term.json").string() +
                          " --n-range 3..5 --count 100 --format csv --out " +
                          (dir / "out").string());
    CHECK(rerun.code == 0);
    CHECK(slurp(dir / "out" / "spectrum.csv") == csv);
    fs::remove_all(dir);
}

TEST_CASE("spectrum json embeds the run config") {
    fs::path dir = fresh_dir("uncle_cli_spectrum_json");
    save_json((dir / "term.json").string(), term_to_json(ghz_parent_term()));
    RunResult res = run("spectrum " + (dir / "term.json").string() +
                        " --n-range 4..4 --format json --out " + (dir / "out").string());
    CHECK(res.code == 0);
    nlohmann::json rep = load_json((dir / "out" / "spectrum.json").string());
    CHECK(rep.at("format") == kFormatVersion);
    CHECK(rep.at("config").at("command") == "spectrum");
    CHECK(rep.at("config").at("n_lo") == 4);
    CHECK(rep.at("spectra").size() == 1);
    CHECK(rep.at("spectra")[0].at("kernel_dim") == 2);
    fs::remove_all(dir);
}

TEST_CASE("cached spectra are reused") {
    fs::path dir = fresh_dir("uncle_cli_cache");
    fs::create_directories(dir / "cache");
    save_json((dir / "term.json").string(), term_to_json(ghz_parent_term()));
    std::string base = "spectrum " + (dir / "term.json").string() +
                       " --n-range 4..5 --format csv --out ";
    std::string env = "UNCLE_LAB_CACHE=" + (dir / "cache").string() + " ";
    std::string cmd1 = env + std::string(UNCLE_LAB_BIN) + " " + base + (dir / "o1").string();
    std::string cmd2 = env + std::string(UNCLE_LAB_BIN) + " " + base + (dir / "o2").string();
    CHECK(std::system((cmd1 + " > /dev/null 2>&1").c_str()) == 0);
    CHECK(!fs::is_empty(dir / "cache"));
    CHECK(std::system((cmd2 + " > /dev/null 2>&1").c_str()) == 0);
    CHECK(slurp(dir / "o1" / "spectrum.csv") == slurp(dir / "o2" / "spectrum.csv"));
    fs::remove_all(dir);
}

TEST_CASE("sweep bundles run end to end") {
    fs::path dir = fresh_dir("uncle_cli_sweep");
    RunResult res = run("sweep " + std::string(UNCLE_LAB_CONFIG_DIR) +
                        "/ghz-gapless.json --n-range 4..7 --out " + (dir / "out").string());
    CHECK(res.code == 0);
    nlohmann::json rep = load_json((dir / "out" / "gaps.json").string());
    CHECK(rep.at("bundle") == "ghz-gapless");
    CHECK(rep.at("uncle_gap_slope").get<double>() < 0.0);
    CHECK(rep.at("gaps").size() == 4);
    std::string csv = slurp(dir / "out" / "gaps.csv");
    CHECK(csv.rfind("n,parent_gap,uncle_gap\n", 0) == 0);

    RunResult rerun = run("sweep " + std::string(UNCLE_LAB_CONFIG_DIR) +
                          "/ghz-gapless.json --n-range 4..7 --out " + (dir / "out").string());
    CHECK(rerun.code == 0);
    CHECK(slurp(dir / "out" / "gaps.csv") == csv);
    fs::remove_all(dir);
}

TEST_CASE("window sweep on one short ring") {
    fs::path dir = fresh_dir("uncle_cli_windows");
    RunResult res = run("sweep " + std::string(UNCLE_LAB_CONFIG_DIR) +
                        "/dense-windows.json --n-range 11..11 --out " + (dir / "out").string());
    CHECK(res.code == 0);
    nlohmann::json rep = load_json((dir / "out" / "windows.json").string());
    CHECK(rep.at("bundle") == "dense-windows");
    CHECK(rep.at("lambda_hat").get<double>() > 0.0);
    CHECK(rep.at("scan").size() == 1);
    CHECK(rep.at("scan")[0].at("method") == "dense");
    CHECK(rep.at("scan")[0].at("parent_subgap_hit") == false);
    fs::remove_all(dir);
}

TEST_CASE("demo subcommands") {
    CHECK(run("demo xy").code == 0);
    RunResult zero = run("demo zero");
    CHECK(zero.code == 0);
    CHECK(zero.output.find("kernel_dim=2") != std::string::npos);
    CHECK(run("demo nope").code == 2);
}
