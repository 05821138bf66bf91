#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "frob/network.hpp"
#include "frob/report.hpp"

using namespace frob;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(FROB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& sub) const { return (path / sub).string(); }
};

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("compile-holder gallery path produces artifacts and exit 0") {
    TempDir dir("frob_cli_compile");
    CHECK(run_cli("compile-holder --target square --k 10 --out " + (dir / "a")) == 0);
    CHECK(fs::exists(dir / "a/network.json"));
    CHECK(fs::exists(dir / "a/report.csv"));
    CHECK(fs::exists(dir / "a/summary.txt"));
    // deserialized certificate matches
    const auto [net, cert] = deserialize(read_text_file(dir / "a/network.json"));
    CHECK(net.width() == 10);
    CHECK(std::abs(kappa(net) - cert.kappa) <= 1e-12 * cert.kappa);
}

TEST_CASE("verify flags corruption with exit 4") {
    TempDir dir("frob_cli_verify");
    REQUIRE(run_cli("compile-holder --target product --k 4 --out " + (dir / "a")) == 0);
    auto [net, cert] = deserialize(read_text_file(dir / "a/network.json"));
    auto& w = net.hidden[0].weight;
    w.entry_val_mut(w.row_begin(0)) *= 2.0;
    write_text_file(dir / "corrupt.json", serialize(net, cert));
    CHECK(run_cli("verify --net " + (dir / "corrupt.json")) == 4);
    CHECK(run_cli("verify --net " + (dir / "a/network.json")) == 0);
}

TEST_CASE("config validation exit codes") {
    TempDir dir("frob_cli_cfg");
    // fewer than 3 sweep budgets
    CHECK(run_cli("rate-sweep --target holder-square --budgets 1e10 --out " + (dir / "s")) == 2);
    // unknown config key
    write_text_file(dir / "bad.json", R"({"command": "report", "dir": ".", "surprise": 1})");
    CHECK(run_cli("--config " + (dir / "bad.json")) == 2);
    // infeasible budget
    CHECK(run_cli("compile-holder --target holder-square --budget 2 --out " + (dir / "b")) == 3);
    // report with no inputs
    CHECK(run_cli("report --dir " + (dir / "empty_missing")) == 2);
}

TEST_CASE("reports are byte-identical across reruns with the same seed") {
    TempDir dir("frob_cli_det");
    const std::string sweep_args =
        " --target holder-square --budgets 1e10,1e11,1e12 --probes 501 --seed 7 --out ";
    REQUIRE(run_cli("rate-sweep" + sweep_args + (dir / "r1")) == 0);
    REQUIRE(run_cli("rate-sweep" + sweep_args + (dir / "r2")) == 0);
    CHECK(read_text_file(dir / "r1/sweep.csv") == read_text_file(dir / "r2/sweep.csv"));
    CHECK(read_text_file(dir / "r1/summary.txt") == read_text_file(dir / "r2/summary.txt"));

    const std::string erm_args =
        " --target binarytree-d4 --n-grid 32,64 --seeds 1,2 --epochs 10 --width 8 --depth 2 "
        "--mc 2000 --out ";
    REQUIRE(run_cli("erm-sweep" + erm_args + (dir / "e1")) == 0);
    REQUIRE(run_cli("erm-sweep" + erm_args + (dir / "e2")) == 0);
    CHECK(read_text_file(dir / "e1/erm.csv") == read_text_file(dir / "e2/erm.csv"));

    // report rendering is idempotent
    REQUIRE(run_cli("report --dir " + (dir / "r1")) == 0);
    const std::string first = read_text_file(dir / "r1/report.txt");
    REQUIRE(run_cli("report --dir " + (dir / "r1")) == 0);
    CHECK(read_text_file(dir / "r1/report.txt") == first);
}

TEST_CASE("config file drives the same runner") {
    TempDir dir("frob_cli_cfg2");
    write_text_file(dir / "run.json", std::string(R"({"command": "compile-holder", "target": "square", "k": 6, "out": ")") +
                                          (dir / "out") + "\"}");
    CHECK(run_cli("--config " + (dir / "run.json")) == 0);
    CHECK(fs::exists(dir / "out/network.json"));
}

TEST_SUITE_END();
