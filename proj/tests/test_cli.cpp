#include "hawkeslob/cli.hpp"
#include "hawkeslob/io.hpp"
#include "hawkeslob/orderbook.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace hawkeslob;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "hawkeslob");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("hawkeslob_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    return nlohmann::json::parse(in);
}

} // namespace

TEST_F(CliTest, ArgumentErrorsExitWithInputCode) {
    EXPECT_EQ(invoke({}).code, cli::kExitInput);
    EXPECT_EQ(invoke({"nonsense"}).code, cli::kExitInput);
    EXPECT_EQ(invoke({"cost", "--ladder", "0:5", "--quantity", "1", "--bogus"}).code, cli::kExitInput);
    EXPECT_EQ(invoke({"fit", "--output", path("x")}).code, cli::kExitInput);
    EXPECT_EQ(invoke({"--help"}).code, cli::kExitOk);
}

TEST_F(CliTest, MissingFilesAndBadLaddersAreInputErrors) {
    EXPECT_EQ(invoke({"simulate", "--params", path("absent.txt"), "--horizon", "1", "--output", path("o")}).code,
              cli::kExitInput);
    EXPECT_EQ(invoke({"cost", "--ladder", "1:5", "--quantity", "1"}).code, cli::kExitInput);
    EXPECT_EQ(invoke({"cost", "--ladder", "0:x", "--quantity", "1"}).code, cli::kExitInput);
}

TEST_F(CliTest, CostPrintsLadderWalk) {
    const auto r = invoke({"cost", "--ladder", "0:5,1:5", "--quantity", "8", "--tick-size", "1e-5", "--output", path("c")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("3.0000000000000001e-05"), std::string::npos) << r.out;
    EXPECT_DOUBLE_EQ(read_json(path("c/cost.json"))["cost"].get<double>(), 3e-5);
}

TEST_F(CliTest, SimulateFitGofRoundTrip) {
    orderbook::SymmetricSpec spec;
    spec.assets = 1;
    spec.mu = 0.3;
    spec.self = 0.6;
    spec.side_coupling = 0.2;
    spec.decay = 2.0;
    spec.impact_exponent = 0.5;
    const auto truth = orderbook::symmetric_params(spec);
    io::write_params(path("truth.txt"), truth);
    ASSERT_EQ(invoke({"simulate", "--params", path("truth.txt"), "--horizon", "10000", "--seed", "1", "--output",
                   path("sim")}).code,
              cli::kExitOk);
    const auto events = path("sim/events.csv");
    const auto f = invoke({"fit", "--input", events, "--tick-size", "1e-5", "--output", path("fit")});
    ASSERT_EQ(f.code, cli::kExitOk) << f.err;
    const auto fitted = io::read_params(path("fit/params.txt"));
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(fitted.mu[i], truth.mu[i], 0.15 * truth.mu[i]);
        EXPECT_NEAR(fitted.kernels[i].decay, truth.kernels[i].decay, 0.15 * truth.kernels[i].decay);
        EXPECT_NEAR(fitted.impacts[i].exponent, 0.5, 0.075);
        for (std::size_t j = 0; j < 4; ++j) {
            if (truth.nu(i, j) > 0.0) {
                EXPECT_NEAR(fitted.nu(i, j), truth.nu(i, j), 0.15 * truth.nu(i, j));
            }
        }
    }
    const auto g = invoke({"gof", "--input", events, "--tick-size", "1e-5", "--params", path("fit/params.txt"), "--output",
                        path("gof")});
    ASSERT_EQ(g.code, cli::kExitOk) << g.err;
    EXPECT_GT(read_json(path("gof/gof.json"))["pooled"]["p_value"].get<double>(), 0.01);
    std::size_t residual_files = 0;
    for (const auto& entry : fs::directory_iterator(path("gof"))) {
        residual_files += entry.path().filename().string().rfind("residuals_", 0) == 0 ? 1 : 0;
    }
    EXPECT_EQ(residual_files, 4u);
}

TEST_F(CliTest, AnalyzeConstantPriceGivesZeroSignature) {
    std::ofstream(path("flat.csv")) << "timestamp_ms,asset,side,direction,price,volume\n"
                                       "0,X,a,+,1.00002,1\n"
                                       "1500,X,b,-,1.00000,1\n"
                                       "3000,X,a,-,1.00002,2\n"
                                       "4500,X,b,+,1.00000,1\n"
                                       "20000,X,a,+,1.00002,1\n";
    const auto r = invoke({"analyze", "--input", path("flat.csv"), "--tick-size", "1e-5", "--taus", "0.1,1,5", "--burn-in", "0.1",
                        "--output", path("an")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    std::ifstream table(path("an/signature_X.csv"));
    std::string line;
    std::getline(table, line);
    EXPECT_EQ(line, "tau,variance");
    int rows = 0;
    while (std::getline(table, line)) {
        EXPECT_EQ(line.substr(line.find(',') + 1), "0") << line;
        ++rows;
    }
    EXPECT_EQ(rows, 3);
}

TEST_F(CliTest, ForecastWritesSurvivalTable) {
    orderbook::SymmetricSpec spec;
    spec.assets = 1;
    io::write_params(path("p.txt"), orderbook::symmetric_params(spec));
    ASSERT_EQ(invoke({"simulate", "--params", path("p.txt"), "--horizon", "200", "--seed", "3", "--output", path("s")}).code,
              cli::kExitOk);
    const auto r = invoke({"forecast", "--input", path("s/events.csv"), "--tick-size", "1e-5", "--params", path("p.txt"),
                        "--rollouts", "500", "--output", path("f")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_TRUE(fs::exists(path("f/survival.csv")));
    const auto j = read_json(path("f/forecast.json"));
    EXPECT_TRUE(j.contains("hazard_shares"));
}

TEST_F(CliTest, StrictNonStationaryFitExitsWithCode4) {
    orderbook::SymmetricSpec spec;
    spec.assets = 1;
    spec.mu = 0.2;
    spec.self = 0.9;
    spec.side_coupling = 0.4;
    io::write_params(path("hot.txt"), orderbook::symmetric_params(spec));
    ASSERT_EQ(invoke({"simulate", "--params", path("hot.txt"), "--horizon", "1000", "--seed", "2", "--allow-nonstationary",
                   "--max-events", "4000", "--output", path("s")}).code,
              cli::kExitOk);
    EXPECT_EQ(invoke({"simulate", "--params", path("hot.txt"), "--horizon", "10", "--output", path("t")}).code,
              cli::kExitInput);
    const auto lenient = invoke({"fit", "--input", path("s/events.csv"), "--tick-size", "1e-5", "--output", path("f1")});
    EXPECT_EQ(lenient.code, cli::kExitOk) << lenient.err;
    ASSERT_FALSE(read_json(path("f1/fit_report.json"))["stationary"].get<bool>());
    const auto strict =
        invoke({"fit", "--input", path("s/events.csv"), "--tick-size", "1e-5", "--strict", "--output", path("f2")});
    EXPECT_EQ(strict.code, cli::kExitNonStationary) << strict.err;
}
