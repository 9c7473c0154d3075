#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include "pbasis/basis_file.hpp"
#include "pbasis/cli.hpp"
#include "pbasis/constructions.hpp"
#include "pbasis/winding.hpp"

using namespace pbasis;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("pbasis_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write(const std::string& name, const ProductBasis& b) const {
        io::save_basis(b, path(name));
        return path(name);
    }

    fs::path dir_;
};

std::string slurp(const std::string& p) {
    std::ifstream f(p);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_F(CliTest, ConstructGenTiles1) {
    const auto r = run({"construct", "--family", "gentiles1", "--n", "4", "--out", path("g.json")});
    EXPECT_EQ(r.code, cli::kOk);
    const auto b = io::load_basis(path("g.json"));
    EXPECT_EQ(b.size(), 9);
    EXPECT_EQ(b.family, Family::GenTiles1);
}

TEST_F(CliTest, ConstructGenTiles2ToStdout) {
    const auto r = run({"construct", "--family", "gentiles2", "--m", "3", "--n", "4"});
    EXPECT_EQ(r.code, cli::kOk);
    const auto b = io::basis_from_json(json::parse(r.out));
    EXPECT_EQ(b.size(), 7);
    EXPECT_EQ(b.dA, 3);
    EXPECT_EQ(b.dB, 4);
}

TEST_F(CliTest, ConstructCartesian) {
    const auto r = run({"construct", "--family", "cartesian", "--m", "2", "--n", "2"});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_EQ(io::basis_from_json(json::parse(r.out)).size(), 4);
}

TEST_F(CliTest, ConstructInvalidDimension) {
    const auto r = run({"construct", "--family", "gentiles1", "--n", "5"});
    EXPECT_EQ(r.code, cli::kInvalidDimension);
    EXPECT_NE(r.err.find("even n >= 4"), std::string::npos) << r.err;
    EXPECT_EQ(run({"construct", "--family", "gentiles2", "--m", "5", "--n", "4"}).code, cli::kInvalidDimension);
}

TEST_F(CliTest, UnknownFamilyIsAParseError) {
    EXPECT_NE(run({"construct", "--family", "tiles", "--n", "4"}).code, cli::kOk);
    EXPECT_NE(run({}).code, cli::kOk);
}

TEST_F(CliTest, VerifyUpb) {
    const auto p = write("g6.json", gen_tiles1(6));
    const auto r = run({"verify", p, "--restarts", "50", "--format", "json"});
    EXPECT_EQ(r.code, cli::kOk);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["verdict"], "UPB_Numeric");
    EXPECT_EQ(j["complement_dim"], 11);
    EXPECT_EQ(j["num_states"], 25);
}

TEST_F(CliTest, VerifyCompleteBasis) {
    const auto r = run({"verify", write("c.json", cartesian_basis(2, 3))});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.out.find("verdict: CompleteBasis"), std::string::npos) << r.out;
}

TEST_F(CliTest, VerifyExtendible) {
    auto b = cartesian_basis(2, 2);
    b.states.pop_back();
    const auto r = run({"verify", write("e.json", b), "--restarts", "20"});
    EXPECT_EQ(r.code, cli::kExtendible);
    EXPECT_NE(r.out.find("Extendible"), std::string::npos);
}

TEST_F(CliTest, VerifyInconclusive) {
    const auto r = run({"verify", write("g4.json", gen_tiles1(4)), "--restarts", "20", "--eta", "0.1"});
    EXPECT_EQ(r.code, cli::kInconclusive);
}

TEST_F(CliTest, VerifyBadInputs) {
    auto b = cartesian_basis(2, 2);
    b.states[1] = b.states[0];
    EXPECT_EQ(run({"verify", write("dup.json", b)}).code, cli::kBadInput);
    std::ofstream(path("junk.json")) << "[1, 2";
    EXPECT_EQ(run({"verify", path("junk.json")}).code, cli::kBadInput);
    EXPECT_EQ(run({"verify", path("missing.json")}).code, cli::kBadInput);
}

TEST_F(CliTest, VerifyJsonIsDeterministic) {
    const auto p = write("g4.json", gen_tiles2(4, 4));
    const auto a = run({"verify", p, "--restarts", "40", "--seed", "9", "--format", "json"});
    const auto b = run({"verify", p, "--restarts", "40", "--seed", "9", "--format", "json", "--threads", "3"});
    EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, SeedFromEnvironment) {
    const auto p = write("g4.json", gen_tiles1(4));
    const auto explicit_seed = run({"verify", p, "--restarts", "5", "--seed", "31", "--format", "json"});
    ::setenv("PB_SEED", "31", 1);
    const auto env_seed = run({"verify", p, "--restarts", "5", "--format", "json"});
    ::unsetenv("PB_SEED");
    const auto default_seed = run({"verify", p, "--restarts", "5", "--format", "json"});
    EXPECT_EQ(explicit_seed.out, env_seed.out);
    EXPECT_EQ(json::parse(env_seed.out)["seed"], 31);
    EXPECT_EQ(json::parse(default_seed.out)["seed"], 0);
}

TEST_F(CliTest, RenderGenTiles1) {
    const auto r = run({"render", write("g4.json", gen_tiles1(4))});
    ASSERT_EQ(r.code, cli::kOk);
    const std::string expected =
        "B\\A    0   1   2   3  \n"
        "0      H0  H0  V2  V3 \n"
        "1      V0  H1  H1  V3 \n"
        "2      V0  V1  H2  H2 \n"
        "3      H3  V1  V2  H3 \n";
    EXPECT_EQ(r.out.substr(0, expected.size()), expected);
    EXPECT_NE(r.out.find("V0: V[m=1,k=0]"), std::string::npos);
    EXPECT_EQ(r.out.find(" F"), std::string::npos);
}

TEST_F(CliTest, RenderGenTiles2CoversEveryCell) {
    const auto r = run({"render", write("t.json", gen_tiles2(3, 5))});
    ASSERT_EQ(r.code, cli::kOk);
    const auto legend = r.out.find("legend:");
    ASSERT_NE(legend, std::string::npos);
    EXPECT_EQ(r.out.substr(0, legend).find(" . "), std::string::npos) << r.out;
}

TEST_F(CliTest, RenderWithoutTiles) {
    const auto r = run({"render", write("c.json", cartesian_basis(2, 2))});
    EXPECT_EQ(r.code, cli::kBadInput);
    EXPECT_NE(r.err.find("NoTileMetadata"), std::string::npos) << r.err;
}

TEST_F(CliTest, Boundent) {
    const auto r = run({"boundent", write("g4.json", gen_tiles1(4)), "--restarts", "30", "--out", path("rho.json")});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.out.find("ppt: true"), std::string::npos);
    EXPECT_NE(r.out.find("entangled (range criterion)"), std::string::npos);
    EXPECT_NE(r.out.find("rank: 7"), std::string::npos);
    EXPECT_TRUE(fs::exists(path("rho.json")));
    EXPECT_EQ(run({"boundent", write("c.json", cartesian_basis(2, 2))}).code, cli::kNotAUpb);
}

TEST_F(CliTest, WindThenUnwind) {
    const auto w = run({"wind", "--cartesian", "2", "3", "--moves", "1", "--seed", "4", "--out", path("w.json")});
    ASSERT_EQ(w.code, cli::kOk) << w.err;
    const auto wound = io::load_basis(path("w.json"));
    EXPECT_EQ(wound.provenance.size(), 1u);

    const auto u = run({"unwind", path("w.json"), "--depth", "2", "--out", path("u.json")});
    EXPECT_EQ(u.code, cli::kOk) << u.err;
    EXPECT_NE(u.out.find("certified unwinding sequence"), std::string::npos) << u.out;
    EXPECT_TRUE(is_cartesian(io::load_basis(path("u.json"))));

    const auto uj = run({"unwind", path("w.json"), "--format", "json"});
    EXPECT_EQ(uj.code, cli::kOk);
    EXPECT_TRUE(json::parse(uj.out).is_object());
}

TEST_F(CliTest, WindIsDeterministic) {
    const auto a = run({"wind", "--cartesian", "3", "3", "--moves", "3", "--seed", "12"});
    const auto b = run({"wind", "--cartesian", "3", "3", "--moves", "3", "--seed", "12"});
    ASSERT_EQ(a.code, cli::kOk);
    EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, WindFromFile) {
    const auto p = write("c.json", cartesian_basis(2, 2));
    EXPECT_EQ(run({"wind", p, "--moves", "2", "--seed", "1"}).code, cli::kOk);
}

TEST_F(CliTest, WindAndUnwindErrors) {
    const auto g6 = write("g6.json", gen_tiles1(6));
    EXPECT_EQ(run({"unwind", g6}).code, cli::kIncompleteBasis);
    EXPECT_EQ(run({"wind", g6, "--moves", "1"}).code, cli::kIncompleteBasis);
    EXPECT_EQ(run({"wind", "--cartesian", "1", "1", "--moves", "1"}).code, cli::kNoValidSplit);
}

TEST(CliBinary, ExitCodesReachTheShell) {
    const std::string exe = PBASIS_CLI_PATH;
    auto status = [&](const std::string& args) {
        const int raw = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    EXPECT_EQ(status("construct --family gentiles1 --n 4"), 0);
    EXPECT_EQ(status("construct --family gentiles1 --n 5"), 2);
}

TEST_F(CliTest, UnwindCartesianIsEmpty) {
    const auto r = run({"unwind", write("c.json", cartesian_basis(3, 3))});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.out.find("certified unwinding sequence: 0 move(s)"), std::string::npos) << r.out;
}

TEST_F(CliTest, UnwindNotFoundIsReportedAsSuch) {
    ProductBasis b;
    b.dA = b.dB = 3;
    const double s = 1.0 / std::sqrt(2.0);
    auto e = [](int i) {
        ComplexVector v = ComplexVector::Zero(3);
        v(i) = 1.0;
        return v;
    };
    b.states.push_back({e(1), e(1), "c", std::nullopt});
    for (double sign : {1.0, -1.0}) {
        b.states.push_back({e(0), s * (e(0) + sign * e(1)), "", std::nullopt});
        b.states.push_back({e(2), s * (e(1) + sign * e(2)), "", std::nullopt});
        b.states.push_back({s * (e(1) + sign * e(2)), e(0), "", std::nullopt});
        b.states.push_back({s * (e(0) + sign * e(1)), e(2), "", std::nullopt});
    }
    const auto r = run({"unwind", write("d.json", b), "--depth", "2"});
    EXPECT_EQ(r.code, cli::kInconclusive);
    EXPECT_NE(r.out.find("not unwound within depth 2"), std::string::npos) << r.out;
}

TEST_F(CliTest, BoundentGenTiles2) {
    const auto r = run({"boundent", write("t.json", gen_tiles2(3, 4)), "--restarts", "30"});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.out.find("ppt: true"), std::string::npos);
    EXPECT_NE(r.out.find("rank: 5"), std::string::npos);
}

TEST_F(CliTest, RenderGenTiles2SmallTiles) {
    const auto r = run({"render", write("t.json", gen_tiles2(3, 4))});
    ASSERT_EQ(r.code, cli::kOk);
    // S[j] occupies (j, j) and (j+1 mod 3, j); its tag appears twice on row j.
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    for (int j = 0; j < 3; ++j) {
        std::getline(lines, line);
        const std::string tag = "S" + std::to_string(j);
        const auto first = line.find(tag);
        ASSERT_NE(first, std::string::npos) << line;
        EXPECT_NE(line.find(tag, first + 1), std::string::npos) << line;
    }
}
