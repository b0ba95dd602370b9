#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bicrypt/cli/app.hpp"

using namespace bicrypt;
using cli::ExitCode;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = BICRYPT_FIXTURE_DIR;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "bicrypt");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int code(ExitCode c) { return static_cast<int>(c); }

}  // namespace

TEST(Cli, UsageErrors) {
    EXPECT_EQ(invoke({}).code, code(ExitCode::kUsage));
    EXPECT_EQ(invoke({"frobnicate"}).code, code(ExitCode::kUsage));
    EXPECT_EQ(invoke({"infer", "--no-such-flag"}).code, code(ExitCode::kUsage));
    EXPECT_EQ(invoke({"infer", "--noise", "loud"}).code, code(ExitCode::kUsage));
    EXPECT_EQ(invoke({"--help"}).code, code(ExitCode::kOk));
}

TEST(Cli, ParameterAndCapacityErrors) {
    EXPECT_EQ(invoke({"count", "--arch", "alexnet"}).code, code(ExitCode::kParameter));
    EXPECT_EQ(invoke({"count", "--scheme", "paillier"}).code, code(ExitCode::kParameter));
    const Outcome r = invoke({"infer", "--batch", "33", "--arch", "vgg16-cifar", "--net", "binet", "--pack", "bhw"});
    EXPECT_EQ(r.code, code(ExitCode::kCapacity));
    EXPECT_NE(r.err.find("8448"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("8192"), std::string::npos) << r.err;
}

TEST(Cli, IngestionErrors) {
    EXPECT_EQ(invoke({"infer", "--weights", "/nonexistent/weights"}).code, code(ExitCode::kIngestion));
    EXPECT_EQ(invoke({"infer", "--data", "/nonexistent/data"}).code, code(ExitCode::kIngestion));
    // Backbone weights do not fit a bi-net.
    EXPECT_EQ(invoke({"infer", "--weights", kFixtures + "/cnn3_backbone"}).code, code(ExitCode::kIngestion));
}

TEST(Cli, VerifyPassesOnFixtures) {
    const Outcome r = invoke({"verify", "--weights", kFixtures + "/cnn3_binet", "--data", kFixtures + "/mnist", "--samples",
                       "20", "--batch", "20"});
    EXPECT_EQ(r.code, code(ExitCode::kOk)) << r.out << r.err;
    EXPECT_NE(r.out.find("20/20"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("taint: PASS"), std::string::npos) << r.out;
}

TEST(Cli, VerifyFailsWithQuantizationAtZeroThreshold) {
    const Outcome r = invoke({"verify", "--noise", "quantize", "--threshold", "0", "--samples", "2", "--batch", "2"});
    EXPECT_EQ(r.code, code(ExitCode::kVerifyFailed)) << r.out << r.err;
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, MiswiredNetworkFailsTaint) {
    const Outcome r = invoke({"verify", "--net", "miswired", "--samples", "1", "--batch", "1"});
    EXPECT_EQ(r.code, code(ExitCode::kTaintFailed)) << r.out << r.err;
}

TEST(Cli, ReportsAreByteIdentical) {
    const fs::path a = fs::temp_directory_path() / "bicrypt_cli_a.json";
    const fs::path b = fs::temp_directory_path() / "bicrypt_cli_b.json";
    const fs::path c = fs::temp_directory_path() / "bicrypt_cli_c.json";
    ASSERT_EQ(invoke({"infer", "--samples", "4", "--batch", "4", "--seed", "3", "--out", a.string()}).code, 0);
    ASSERT_EQ(invoke({"infer", "--samples", "4", "--batch", "4", "--seed", "3", "--out", b.string()}).code, 0);
    ASSERT_EQ(invoke({"infer", "--samples", "4", "--batch", "4", "--seed", "3", "--parallel", "--out", c.string()}).code, 0);
    const std::string ja = slurp(a);
    EXPECT_FALSE(ja.empty());
    EXPECT_EQ(ja, slurp(b));
    EXPECT_EQ(ja, slurp(c));
    fs::remove(a);
    fs::remove(b);
    fs::remove(c);
}

TEST(Cli, CountComparesBothNetworks) {
    const Outcome r = invoke({"count", "--pack", "hw"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("cnn3/bi-net"), std::string::npos);
    EXPECT_NE(r.out.find("cnn3/backbone"), std::string::npos);
    EXPECT_NE(r.out.find("902"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("ratio"), std::string::npos);
}

TEST(Cli, SpreadAndPackDemo) {
    const Outcome s = invoke({"spread", "--stack", "10", "--size", "32", "--window", "16"});
    EXPECT_EQ(s.code, 0) << s.err;
    EXPECT_NE(s.out.find("8"), std::string::npos);
    const Outcome p = invoke({"pack-demo", "--pack", "bhw", "--batch", "4", "--height", "4", "--width", "4"});
    EXPECT_EQ(p.code, 0) << p.err;
}
