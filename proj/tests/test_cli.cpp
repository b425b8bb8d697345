#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun fhlab(const std::string& args)
{
    const std::string cmd = std::string(FHLAB_EXE) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string config(const char* name) { return std::string(FHLAB_CONFIGS) + "/" + name; }

std::vector<std::vector<std::string>> csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST(Cli, SweepOfTrivialSymbolIsExact)
{
    const CliRun r = fhlab("sweep --symbol " + config("trivial.json") + " --dyadic 16:128");
    ASSERT_EQ(r.code, 0);
    const auto rows = csv(r.out);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "logabs_det", "arg_det", "logabs_pred", "arg_pred", "ratio_minus_one_re",
                                                 "ratio_minus_one_im"}));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_EQ(std::stod(rows[i][5]), 0.0);
        EXPECT_EQ(std::stod(rows[i][6]), 0.0);
    }
}

TEST(Cli, OracleMatchesDet)
{
    const CliRun a = fhlab("oracle --symbol " + config("pure_jump.json") + " --n 8");
    const CliRun b = fhlab("det --symbol '{\"beta\": [0.3, 0]}' --n 8");
    ASSERT_EQ(a.code, 0);
    ASSERT_EQ(b.code, 0);
    const auto ra = csv(a.out), rb = csv(b.out);
    EXPECT_EQ(ra[0], (std::vector<std::string>{"n", "logabs_det", "arg_det"}));
    EXPECT_NEAR(std::stod(ra[1][1]), std::stod(rb[1][1]), 1e-10);
    EXPECT_NEAR(std::stod(ra[1][2]), std::stod(rb[1][2]), 1e-10);
}

TEST(Cli, SeventeenDigitsAndDeterminism)
{
    const CliRun a = fhlab("coeffs --symbol " + config("smooth_complex.json") + " --n 3");
    const CliRun b = fhlab("coeffs --symbol " + config("smooth_complex.json") + " --n 3");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto rows = csv(a.out);
    ASSERT_EQ(rows.size(), 8u);
    // a generic real carries 17 significant digits
    std::string digits;
    for (char c : rows[4][1])
        if (std::isdigit(static_cast<unsigned char>(c))) digits += c;
    while (!digits.empty() && digits.front() == '0') digits.erase(digits.begin());
    EXPECT_EQ(digits.size(), 17u) << rows[4][1];
}

TEST(Cli, JsonMirrorsCsvAndMetaIsOptional)
{
    const std::string base = "limset --symbol " + config("pure_jump.json") + " --n-list 32,64";
    const CliRun j = fhlab(base + " --format json");
    const CliRun n = fhlab(base + " --format json --no-meta");
    const CliRun c = fhlab(base);
    ASSERT_EQ(j.code, 0);
    const auto doc = nlohmann::json::parse(j.out);
    ASSERT_TRUE(doc.contains("meta"));
    EXPECT_EQ(doc["meta"]["command"], "limset");
    EXPECT_FALSE(nlohmann::json::parse(n.out).contains("meta"));
    const auto rows = csv(c.out);
    ASSERT_EQ(doc["rows"].size(), 2u);
    EXPECT_EQ(doc["rows"][1]["n"], 64);
    EXPECT_NEAR(doc["rows"][1]["max_eig_to_range"].get<double>(), std::stod(rows[2][1]), 0.0);
}

TEST(Cli, SpectrumColumnsAndOutFile)
{
    const std::string path = testing::TempDir() + "fhlab_spectrum.csv";
    const CliRun r = fhlab("spectrum --symbol " + config("minus_z.json") + " --n 10 --functional abs2 --out " + path);
    ASSERT_EQ(r.code, 0);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto rows = csv(ss.str());
    ASSERT_EQ(rows.size(), 12u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"index", "lambda_re", "lambda_im"}));
    std::remove(path.c_str());
}

TEST(Cli, OtherCommandsRun)
{
    EXPECT_EQ(fhlab("constants --symbol " + config("smooth_complex.json")).code, 0);
    EXPECT_EQ(fhlab("fit --symbol " + config("pure_jump.json") + " --dyadic 64:1024").code, 0);
    EXPECT_EQ(fhlab("jacobi --symbol " + config("smooth_complex.json") + " --n 20 --p 2").code, 0);
    EXPECT_EQ(fhlab("corner --symbol " + config("pure_jump.json") + " --dyadic 32:256 --p 1").code, 0);
    EXPECT_EQ(fhlab("kernel --symbol '{\"beta\": [0.2, 0]}'").code, 0);
    EXPECT_EQ(fhlab("ulemma --symbol '{\"beta\": [0.2, 0]}' --n-list 10,20").code, 0);
    const CliRun j = fhlab("jacobi --symbol " + config("pure_jump.json") + " --n 12 --p 1");
    ASSERT_EQ(j.code, 0);
    EXPECT_LT(std::stod(csv(j.out)[1][6]), 1e-9);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(fhlab("sweep").code, 1);                                                          // no symbol
    EXPECT_EQ(fhlab("bogus --symbol " + config("trivial.json")).code, 1);                       // unknown command
    EXPECT_EQ(fhlab("det --symbol '{\"beta\": \"x\"}' --n 4").code, 1);                          // bad symbol
    EXPECT_EQ(fhlab("det --symbol " + config("trivial.json") + " --n-list 8,4").code, 1);       // not ascending
    EXPECT_EQ(fhlab("det --symbol " + config("trivial.json") + " --n 4 --dyadic 2:8").code, 1); // two size options
    EXPECT_EQ(fhlab("oracle --symbol " + config("smooth_complex.json") + " --n 4").code, 1);    // tau != 1
    EXPECT_EQ(fhlab("spectrum --symbol " + config("trivial.json") + " --n 2000").code, 1);      // too large
    EXPECT_EQ(fhlab("det --symbol " + config("trivial.json") + " --n 4 --format xml").code, 1);
    EXPECT_EQ(fhlab("det --symbol " + config("trivial.json") + " --n 4 --frobnicate").code, 1);
}
