#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string err;
};

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("pca_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

Result run(const std::string& args, const fs::path& dir) {
    auto err = dir / "stderr.txt";
    std::string cmd = std::string(PCA_CLI) + " " + args + " > " + (dir / "stdout.txt").string() + " 2> " +
                      err.string();
    int status = std::system(cmd.c_str());
    std::ifstream f(err);
    std::stringstream ss;
    ss << f.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path write_ini(const fs::path& dir, const std::string& body) {
    auto p = dir / "run.ini";
    std::ofstream(p) << body;
    return p;
}

// (t, id) -> mean
std::map<std::pair<int, std::string>, double> read_series(const fs::path& p) {
    std::map<std::pair<int, std::string>, double> out;
    std::ifstream f(p);
    std::string line;
    std::getline(f, line);
    while (std::getline(f, line)) {
        std::stringstream ls(line);
        std::string t, id, mean;
        std::getline(ls, t, ',');
        std::getline(ls, id, ',');
        std::getline(ls, mean, ',');
        out[{std::stoi(t), id}] = std::stod(mean);
    }
    return out;
}

}  // namespace

TEST(Cli, ThermalWritesTable) {
    auto d = scratch("thermal");
    auto ini = write_ini(d, "[lattice]\nn_x = 5\n[thermal]\ntemperatures = 1\n");
    auto r = run("--config " + ini.string() + " thermal --out " + (d / "out").string(), d);
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream f(d / "out" / "thermal.csv");
    std::string header, line;
    std::getline(f, header);
    EXPECT_EQ(header, "T,species,p,occupation_trace,occupation_analytic,fermi_dirac");
    int rows = 0;
    while (std::getline(f, line)) ++rows;
    EXPECT_EQ(rows, 5);
    EXPECT_TRUE(fs::exists(d / "out" / "summary.json"));
}

TEST(Cli, ExhaustiveSamplingEqualsEvolution) {
    auto d = scratch("sample");
    auto ini = write_ini(d, "[experiment]\nseed = 11\n[lattice]\nn_x = 5\nspecies = dirac\nn_t = 4\n");
    auto a = run("--config " + ini.string() + " evolve --out " + (d / "evolve").string(), d);
    ASSERT_EQ(a.code, 0) << a.err;
    auto b = run("--config " + ini.string() + " --mode exhaustive sample --out " + (d / "sample").string(), d);
    ASSERT_EQ(b.code, 0) << b.err;
    auto q = read_series(d / "evolve" / "series.csv");
    auto c = read_series(d / "sample" / "series.csv");
    ASSERT_FALSE(q.empty());
    ASSERT_EQ(q.size(), c.size());
    for (const auto& [k, v] : q) EXPECT_NEAR(c.at(k), v, 1e-12) << k.first << " " << k.second;
}

TEST(Cli, SummaryIsReproducible) {
    auto d = scratch("repro");
    auto ini = write_ini(d, "[lattice]\nn_x = 5\nspecies = dirac\nn_t = 3\n");
    for (const char* o : {"one", "two"}) {
        auto r = run("--config " + ini.string() + " --seed 5 --mode mc sample --out " + (d / o).string(), d);
        ASSERT_EQ(r.code, 0) << r.err;
    }
    auto s1 = slurp(d / "one" / "summary.json");
    EXPECT_FALSE(s1.empty());
    EXPECT_EQ(s1, slurp(d / "two" / "summary.json"));
    EXPECT_EQ(slurp(d / "one" / "series.csv"), slurp(d / "two" / "series.csv"));
}

TEST(Cli, ValidationErrorsNameTheConstraint) {
    auto d = scratch("errors");
    auto even = write_ini(d, "[lattice]\nn_x = 4\n");
    auto r = run("--config " + even.string() + " thermal --out " + (d / "out").string(), d);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("n_x odd"), std::string::npos) << r.err;
    auto bad = write_ini(d, "[lattice]\nspecies = quark\n");
    r = run("--config " + bad.string() + " vacuum --out " + (d / "out").string(), d);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("quark"), std::string::npos) << r.err;
    auto ens = write_ini(d, "[lattice]\nn_x = 5\n[sampling]\nensemble = /nonexistent/e.txt\n");
    r = run("--config " + ens.string() + " evolve --out " + (d / "out").string(), d);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("ensemble"), std::string::npos) << r.err;
    // argument parsing errors are rejected before any work
    EXPECT_NE(run("--mode fast sample", d).code, 0);
    EXPECT_NE(run("", d).code, 0);
}
