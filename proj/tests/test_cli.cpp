// Drives the built CLI binary end to end: exit-status contract, file
// outputs, and byte-level determinism. The binary path and scratch dir
// arrive via ALGACT_CLI / ALGACT_OUT.

#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_path() {
    const char* p = std::getenv("ALGACT_CLI");
    REQUIRE(p != nullptr);
    return p;
}

fs::path out_root() {
    const char* p = std::getenv("ALGACT_OUT");
    REQUIRE(p != nullptr);
    fs::create_directories(p);
    return p;
}

int run(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json slurp_json(const fs::path& p) { return json::parse(slurp(p)); }

}  // namespace

TEST_CASE("inverse: preset run succeeds with small residuals") {
    auto dir = out_root() / "inv_preset";
    REQUIRE(run("inverse --preset l1-dominant-z --method neumann --radius 40 --out " +
                dir.string()) == 0);
    auto rep = slurp_json(dir / "inverse_report.json");
    CHECK(rep["report"]["method"] == "neumann");
    CHECK(rep["report"]["R"] == 40);
    CHECK(rep["report"]["residual_left"].get<double>() <= 1e-8);
    CHECK(rep["report"]["residual_left_full"].get<double>() <= 1e-3);
    CHECK(rep["config"]["preset"] == "l1-dominant-z");
    // the 2^{-41} geometric tail belongs to f = 2e-g, not this preset;
    // eps below the tail makes the series run to the ball edge
    auto dir2 = out_root() / "inv_2eg";
    REQUIRE(run("inverse --group Z --f 2e-g --method neumann --radius 40 --eps 1e-13 --out " +
                dir2.string()) == 0);
    auto rep2 = slurp_json(dir2 / "inverse_report.json");
    CHECK(rep2["report"]["residual_left_full"].get<double>() <= std::pow(2.0, -41) * 1.001);
}

TEST_CASE("inverse: cg on harmonic-f2 has a monotone residual history") {
    auto dir = out_root() / "inv_harmonic";
    REQUIRE(run("inverse --preset harmonic-f2 --method cg-normal --radius 6 --out " +
                dir.string()) == 0);
    auto rep = slurp_json(dir / "inverse_report.json");
    auto hist = rep["report"]["residual_history"].get<std::vector<double>>();
    REQUIRE(hist.size() > 2);
    for (std::size_t i = 1; i < hist.size(); ++i) CHECK(hist[i] <= hist[i - 1] * (1 + 1e-12));
}

TEST_CASE("inverse: divergence exits 2 with nonzero status") {
    auto dir = out_root() / "inv_diverge";
    CHECK(run("inverse --group Z --f e-g --radius 40 --out " + dir.string()) == 2);
    CHECK(run("inverse --group Z --f e-g --method cg-normal --radius 40 --out " +
              dir.string()) == 2);
    CHECK(run("inverse --group Z --f e-g --method torus-grid --radius 40 --out " +
              dir.string()) == 2);
}

TEST_CASE("exit-status contract for config errors") {
    CHECK(run("inverse --group Q8 --f e --out /tmp") == 3);
    CHECK(run("mc --preset l1-dominant-z --alpha e --N 10") == 3);      // missing seed
    CHECK(run("verify --suite nonsense --seed 1 --out /tmp") == 3);     // unknown suite
    CHECK(run("bogus-subcommand") == 3);
}

TEST_CASE("converge: two-case limit in the CSV") {
    auto dir = out_root() / "conv";
    REQUIRE(run("converge --preset l1-dominant-z --radius 40 --m-list 1..50 "
                "--alpha e --alpha 3e-g-g^2 --alpha 0 --out " +
                dir.string()) == 0);
    auto rows = slurp_json(dir / "converge.json")["rows"];
    int checked_e = 0, checked_img = 0, checked_zero = 0;
    double final_e = 1.0;
    for (const auto& r : rows) {
        double v = r["exact"].get<double>();
        double tail = r["tail_bound"].get<double>();
        std::string a = r["alpha"].get<std::string>();
        if (a == "e") {
            CHECK(std::fabs(v) <= r["envelope"].get<double>() + 1e-12);
            final_e = v;
            ++checked_e;
        } else if (a == "3e-g-g^2") {
            CHECK(std::fabs(v - 1.0) <= tail + 1e-12);
            ++checked_img;
        } else {
            CHECK(v == 1.0);
            ++checked_zero;
        }
    }
    CHECK(checked_e == 50);
    CHECK(checked_img == 50);
    CHECK(checked_zero == 50);
    CHECK(std::fabs(final_e) < 0.05);

    // plot files are two-column text
    auto plot = slurp(dir / "converge_plot_0.txt");
    std::stringstream ss(plot);
    std::string line;
    int lines = 0;
    while (std::getline(ss, line)) {
        int m;
        double v;
        REQUIRE(std::sscanf(line.c_str(), "%d %lf", &m, &v) == 2);
        ++lines;
    }
    CHECK(lines == 50);
}

TEST_CASE("mc: estimate is consistent with the exact value") {
    auto dir = out_root() / "mc";
    REQUIRE(run("mc --preset harmonic-f2 --radius 5 --m 3 --alpha e --N 20000 --seed 1 --out " +
                dir.string()) == 0);
    auto rep = slurp_json(dir / "mc.json")["reports"][0];
    double exact = rep["exact"].get<double>();
    double re = rep["mc_re"].get<double>(), im = rep["mc_im"].get<double>();
    double se = rep["stderr"].get<double>(), tail = rep["tail_bound"].get<double>();
    CHECK(std::fabs(re - exact) <= 5 * se + tail);
    CHECK(std::fabs(im) <= 5 * se + 1e-12);
    CHECK(rep["N"] == 20000);
    CHECK(rep["seed"] == 1);
}

TEST_CASE("sample: m = 0 yields the all-zero window") {
    auto dir = out_root() / "sample0";
    REQUIRE(run("sample --preset l1-dominant-z --radius 20 --m 0 --window-radius 2 --N 20 "
                "--seed 9 --out " +
                dir.string()) == 0);
    auto csv = slurp(dir / "samples.csv");
    std::stringstream ss(csv);
    std::string line;
    int rows = 0;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 's') continue;
        CHECK(line.substr(line.rfind(',') + 1) == "0");
        ++rows;
    }
    CHECK(rows == 20 * 5);  // 20 samples, window B_2 in Z has 5 points
}

TEST_CASE("determinism: identical config and seed give byte-identical files") {
    auto dir = out_root() / "det";
    std::string cmd = "mc --preset l1-dominant-z --radius 30 --m 2 --alpha e --alpha 3e-g-g^2 "
                      "--N 5000 --seed 42 --out " +
                      dir.string();
    REQUIRE(run(cmd) == 0);
    auto j1 = slurp(dir / "mc.json");
    auto c1 = slurp(dir / "mc.csv");
    REQUIRE(run(cmd) == 0);
    CHECK(slurp(dir / "mc.json") == j1);
    CHECK(slurp(dir / "mc.csv") == c1);

    // a different seed changes the Monte Carlo side
    std::string cmd2 = "mc --preset l1-dominant-z --radius 30 --m 2 --alpha e --alpha 3e-g-g^2 "
                       "--N 5000 --seed 43 --out " +
                       dir.string();
    REQUIRE(run(cmd2) == 0);
    CHECK(slurp(dir / "mc.csv") != c1);

    // sample files too
    auto sdir = out_root() / "det_sample";
    std::string scmd = "sample --preset l1-dominant-z --radius 20 --m 2 --window-radius 2 "
                       "--N 50 --seed 11 --out " +
                       sdir.string();
    REQUIRE(run(scmd) == 0);
    auto s1 = slurp(sdir / "samples.csv");
    REQUIRE(run(scmd) == 0);
    CHECK(slurp(sdir / "samples.csv") == s1);
}

TEST_CASE("verify: all suites pass, bad suite rejected") {
    auto dir = out_root() / "verify";
    REQUIRE(run("verify --suite all --seed 7 --out " + dir.string()) == 0);
    auto rep = slurp_json(dir / "verify.json");
    CHECK(rep["pass"] == true);
    CHECK(rep["results"].size() == 4);
    for (const auto& r : rep["results"]) CHECK(r["pass"] == true);

    REQUIRE(run("verify --suite oracle --seed 3 --out " + dir.string()) == 0);
    auto rep2 = slurp_json(dir / "verify.json");
    CHECK(rep2["results"].size() == 1);
}

TEST_CASE("config file with flag override") {
    auto dir = out_root() / "cfgfile";
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "exp.json");
        out << R"({"preset":"l1-dominant-z","radius":30,"m":2,"alphas":["e"],"N":500,"seed":13,"out":")"
            << (dir / "from_file").string() << R"("})";
    }
    REQUIRE(run("mc --config " + (dir / "exp.json").string()) == 0);
    auto rep = slurp_json(dir / "from_file" / "mc.json");
    CHECK(rep["config"]["radius"] == 30);
    CHECK(rep["config"]["N"] == 500);

    // flag overrides the file
    REQUIRE(run("mc --config " + (dir / "exp.json").string() + " --N 600 --out " +
                (dir / "override").string()) == 0);
    auto rep2 = slurp_json(dir / "override" / "mc.json");
    CHECK(rep2["config"]["N"] == 600);
    CHECK(rep2["config"]["radius"] == 30);
}
