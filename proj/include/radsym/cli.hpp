#pragma once

// The radsym command line: argument handling, output formatting and the
// property suites behind `radsym verify`.

#include "radsym/periods.hpp"
#include "radsym/symbols.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace radsym::cli {

enum ExitCode { Ok = 0, DomainFailure = 1, PrecisionFailure = 2 };

struct Config {
    unsigned digits = 60;
    double tol = 1e-8;
    Int denom_bound = 0;
    std::string format = "text";  // text | json | csv
    unsigned workers = 1;
    std::uint64_t seed = 1;

    /// digits >= 30, 0 < tol <= 1e-4, known format, workers >= 1.
    void validate() const;
    PrecisionCtx precision() const;
};

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string family_token(Family f);
nlohmann::json value_json(const SymbolValue& v, unsigned digits);
SymbolValue value_from_json(const nlohmann::json& j, unsigned digits);
nlohmann::json certificate_json(const TorsionCertificate& cert, unsigned digits);
TorsionCertificate certificate_from_json(const nlohmann::json& j, unsigned digits);

struct VerifyOptions {
    GroupId group = GroupId::sl2z();
    long level = 0;  // 0 picks the suite default
    long count = 0;  // 0 picks the suite default
    long limit = 200;
    double tol = 1e-8;
    std::uint64_t seed = 1;
    std::string input;
    PrecisionCtx precision;
};

struct SuiteReport {
    std::string suite;
    bool passed = true;
    long cases = 0;
    std::vector<std::string> counterexamples;  // first few failures
};

const std::vector<std::string>& suite_names();
/// reciprocity | cocycle | coset-sum | lemma | oracle | certificate
SuiteReport verify_suite(const std::string& name, const VerifyOptions& opts);

}  // namespace radsym::cli
