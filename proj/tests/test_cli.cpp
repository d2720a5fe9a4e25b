#include <gtest/gtest.h>

#include "radsym/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace radsym;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("radsym_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

}  // namespace

TEST(Cli, Sum) {
    Result r = run({"sum", "1", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1/18\n");
    EXPECT_EQ(json::parse(run({"sum", "5", "7", "--json"}).out)["value"], "-1/14");
    EXPECT_EQ(run({"sum", "2", "4"}).code, 1);
    EXPECT_EQ(run({"sum", "x", "4"}).code, 1);
}

TEST(Cli, Symbol) {
    EXPECT_EQ(run({"symbol", "--group", "sl2z", "--matrix", "1,1,0,1"}).out, "1\n");
    EXPECT_EQ(run({"symbol", "--matrix", "4,1,3,1"}).out, "-2\n");
    EXPECT_EQ(run({"symbol", "--matrix", "4,1,3,1", "--kind", "phi"}).out, "1\n");
    Result r = run({"symbol", "--group", "gamma0+", "--level", "11", "--cusp", "inf", "--matrix", "8,1,55,7",
                    "--digits", "60", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = json::parse(r.out);
    EXPECT_EQ(j["value"], "-1");
    EXPECT_EQ(j["method"], "atkin-lehner-sum");
    EXPECT_EQ(j["group"], "Gamma0(11)+");
    EXPECT_EQ(j["trace_class"], "hyperbolic");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"symbol", "--matrix", "1,2,3"}).code, 1);
    EXPECT_EQ(run({"symbol", "--matrix", "2,1,1,1", "--digits", "20"}).code, 1);
    EXPECT_EQ(run({"symbol", "--matrix", "2,1,1,1", "--tol", "1e-3"}).code, 1);
    EXPECT_EQ(run({"symbol", "--group", "gamma0", "--level", "2", "--matrix", "2,1,1,1"}).code, 1);
    EXPECT_EQ(run({"torsion", "--group", "gamma0", "--level", "11", "--divisor", "0:1"}).code, 1);
    EXPECT_EQ(run({"torsion", "--group", "gamma0", "--level", "11", "--divisor", "0;1"}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
    // reconstruction is impossible with denominators bounded by 1: flagged, output still written
    Result r = run({"symbol", "--group", "gamma", "--level", "3", "--matrix", "1,3,3,10", "--denom-bound", "1",
                    "--json"});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(json::parse(r.out)["value"].contains("approx"));
}

TEST(Cli, DigitsFromEnvironment) {
    setenv("RADSYM_DIGITS", "20", 1);
    EXPECT_EQ(run({"symbol", "--matrix", "2,1,1,1"}).code, 1);
    EXPECT_EQ(run({"symbol", "--matrix", "2,1,1,1", "--digits", "40"}).code, 0);
    unsetenv("RADSYM_DIGITS");
    EXPECT_EQ(run({"symbol", "--matrix", "2,1,1,1"}).code, 0);
}

TEST(Cli, BatchIsOrderedAndDeterministic) {
    std::string lines;
    for (int k = 1; k <= 12; ++k) lines += std::to_string(1 + 3 * k) + ",3," + std::to_string(3 * k) + ",1\n";
    lines += "# comment\n\n1,2,3\n";
    const std::string path = temp_file("batch.txt", lines);
    std::vector<std::string> base = {"symbol", "--group", "gamma", "--level", "3", "--input", path, "--format", "csv"};
    auto serial = base, parallel = base;
    parallel.insert(parallel.end(), {"--workers", "4"});
    Result a = run(serial), b = run(parallel), c = run(parallel);
    EXPECT_EQ(a.code, 1);  // the malformed last line
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(b.out, c.out);
    std::istringstream in(a.out);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    EXPECT_EQ(header, "matrix,value,exactness,method,trace_class");
    EXPECT_EQ(first.substr(0, 9), "\"4,3,3,1\"");
}

TEST(Cli, Period) {
    Result r = run({"period", "--matrix", "5,2,2,1", "--numeric", "--tol", "1e-8", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = json::parse(r.out);
    EXPECT_EQ(j["value"], "0");
    EXPECT_LT(j["numeric"]["difference"].get<double>(), 1e-8);
    r = run({"period", "--group", "gamma0", "--level", "11", "--divisor", "0:1,inf:-1", "--matrix", "4,1,11,3"});
    EXPECT_EQ(r.out, "-4/5\n");
    EXPECT_EQ(run({"period", "--matrix", "1,1,0,1", "--numeric"}).code, 1);
}

TEST(Cli, TorsionAndRoundTrip) {
    Result r = run({"torsion", "--group", "gamma0", "--level", "11", "--divisor", "0:-1,inf:1", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = json::parse(r.out);
    EXPECT_EQ(j["order"], 5);
    EXPECT_EQ(j["status"], "reconstructed-verified");
    EXPECT_EQ(j["generators"].size(), j["periods"].size());

    TorsionCertificate cert = cli::certificate_from_json(j, 60);
    SymbolEngine engine(cert.group);
    EXPECT_TRUE(recheck_certificate(engine, cert).empty());
    EXPECT_EQ(cli::certificate_json(cert, 60).dump(), j.dump());

    const std::string good = temp_file("cert.json", r.out);
    EXPECT_EQ(run({"verify", "certificate", "--input", good}).out.substr(0, 4), "PASS");
    j["order"] = 10;
    const std::string bad = temp_file("bad_cert.json", j.dump());
    Result v = run({"verify", "certificate", "--input", bad});
    EXPECT_EQ(v.code, 1);
    EXPECT_EQ(v.out.substr(0, 4), "FAIL");

    Result text = run({"torsion", "--group", "gamma0", "--level", "2", "--divisor", "0:-1,inf:1"});
    EXPECT_NE(text.out.find("order 1\n"), std::string::npos);
    EXPECT_NE(text.out.find("status exact\n"), std::string::npos);
}

TEST(Cli, CuspsAndCosets) {
    Result r = run({"cusps", "--group", "gamma0", "--level", "4", "--json"});
    json j = json::parse(r.out);
    ASSERT_EQ(j["cusps"].size(), 3u);
    EXPECT_EQ(j["cusps"][0]["cusp"], "inf");
    EXPECT_EQ(json::parse(run({"cosets", "--group", "gamma0", "--level", "5", "--json"}).out)["index"], 6);
    EXPECT_EQ(run({"cosets", "--group", "gamma", "--level", "2", "--in", "gamma0", "--in-level", "2"}).out.substr(0, 8),
              "index 2\n");
}

TEST(Cli, VerifySuites) {
    for (std::vector<std::string> args : {std::vector<std::string>{"verify", "cocycle"},
                                          {"verify", "coset-sum", "--level", "2"},
                                          {"verify", "lemma", "--tol", "1e-8"},
                                          {"verify", "oracle", "--level", "5"},
                                          {"verify", "reciprocity", "--limit", "60"},
                                          {"verify", "cocycle", "--group", "gamma0", "--level", "4", "--count", "20"}}) {
        Result r = run(args);
        EXPECT_EQ(r.code, 0) << args[1] << ": " << r.out << r.err;
        EXPECT_EQ(r.out.substr(0, 4), "PASS") << args[1];
    }
    EXPECT_EQ(run({"verify", "nothing"}).code, 1);
    EXPECT_EQ(run({"verify", "cocycle", "--seed", "7"}).out, run({"verify", "cocycle", "--seed", "7"}).out);
}
