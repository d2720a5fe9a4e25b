#include "radsym/cli.hpp"

#include "radsym/dedekind.hpp"

#include <CLI11.hpp>
#include <mpfr.h>

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

namespace radsym::cli {

using nlohmann::json;

// ---------------------------------------------------------------- config

void Config::validate() const {
    if (digits < 30) throw DomainError("--digits must be at least 30, got " + std::to_string(digits));
    if (!(tol > 0 && tol <= 1e-4)) throw DomainError("--tol must lie in (0, 1e-4]");
    if (format != "text" && format != "json" && format != "csv") throw DomainError("unknown format '" + format + "'");
    if (workers < 1) throw DomainError("--workers must be positive");
    if (denom_bound < 0) throw DomainError("--denom-bound must be non-negative");
}

PrecisionCtx Config::precision() const {
    PrecisionCtx ctx;
    ctx.digits = digits;
    ctx.denom_bound = denom_bound;
    return ctx;
}

// ---------------------------------------------------------------- json

std::string family_token(Family f) {
    switch (f) {
        case Family::SL2Z: return "sl2z";
        case Family::GammaN: return "gamma";
        case Family::Gamma0N: return "gamma0";
        case Family::Gamma1N: return "gamma1";
        case Family::Gamma0NPlus: return "gamma0+";
    }
    return "";
}

json value_json(const SymbolValue& v, unsigned digits) {
    if (v.is_rational()) return v.rational().get_str();
    return json{{"approx", v.to_string(digits)}, {"err", v.error()}};
}

SymbolValue value_from_json(const json& j, unsigned digits) {
    if (j.is_string()) return SymbolValue::exact(parse_rat(j.get<std::string>()));
    if (j.is_number_integer()) return SymbolValue::exact(Rat(j.get<long>()));
    if (!j.is_object() || !j.contains("approx")) throw DomainError("malformed value " + j.dump());
    Real x(0, digits);
    const std::string text = j.at("approx").get<std::string>();
    if (mpfr_set_str(x.backend().data(), text.c_str(), 10, MPFR_RNDN) != 0)
        throw DomainError("malformed decimal '" + text + "'");
    return SymbolValue::approx(x, j.value("err", 0.0));
}

namespace {

json group_json(const GroupId& G) {
    return {{"family", family_token(G.family)}, {"level", G.level}, {"name", G.name()}};
}

json period_json(const PeriodValue& p, unsigned digits) {
    return {{"element", p.element.to_string()},
            {"kind", p.kind},
            {"value", value_json(p.value, digits)},
            {"exactness", p.value.kind_name()}};
}

}  // namespace

json certificate_json(const TorsionCertificate& cert, unsigned digits) {
    json j;
    j["group"] = group_json(cert.group);
    j["divisor"] = cert.divisor.to_string();
    j["order"] = cert.order ? json(cert.order->get_si()) : json(nullptr);
    j["status"] = cert.status_name();
    j["generators"] = json::array();
    for (const auto& g : cert.generators) j["generators"].push_back(g.to_string());
    j["periods"] = json::array();
    for (const auto& p : cert.periods) j["periods"].push_back(period_json(p, digits));
    j["notes"] = cert.notes;
    return j;
}

TorsionCertificate certificate_from_json(const json& j, unsigned digits) {
    try {
        TorsionCertificate cert;
        const json& g = j.at("group");
        cert.group = GroupId::parse(g.at("family").get<std::string>(), g.at("level").get<long>());
        cert.divisor = Divisor::parse(cert.group, j.at("divisor").get<std::string>());
        for (const auto& s : j.at("generators")) cert.generators.push_back(GroupElement::parse(s.get<std::string>()));
        for (const auto& p : j.at("periods")) {
            PeriodValue v;
            v.element = GroupElement::parse(p.at("element").get<std::string>());
            v.kind = p.at("kind").get<std::string>();
            v.value = value_from_json(p.at("value"), digits);
            if (p.value("exactness", "") == "reconstructed")
                v.value = SymbolValue::reconstructed(v.value.rational(), 0);
            v.divisor = cert.divisor;
            cert.periods.push_back(std::move(v));
        }
        const std::string status = j.at("status").get<std::string>();
        if (status == "exact") cert.status = TorsionCertificate::Status::Exact;
        else if (status == "reconstructed-verified") cert.status = TorsionCertificate::Status::ReconstructedVerified;
        else if (status == "non-rational-flag") cert.status = TorsionCertificate::Status::NonRational;
        else throw DomainError("unknown certificate status '" + status + "'");
        if (!j.at("order").is_null()) cert.order = Int(j.at("order").get<long>());
        if (j.contains("notes")) cert.notes = j.at("notes").get<std::vector<std::string>>();
        return cert;
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed certificate: ") + e.what());
    }
}

// ---------------------------------------------------------------- helpers

namespace {

template <class F>
void parallel_for(std::size_t n, unsigned workers, F&& fn) {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) fn(i);
    };
    const unsigned k = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
    if (k == 1) return work();
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < k; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
}

GroupElement random_sl2z(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    for (;;) {
        Int a = dist(rng), c = dist(rng);
        Int g, x, y;
        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
        if (g == 1) return {a, -y, c, x};
    }
}

GroupElement random_word(const std::vector<GroupElement>& gens, std::mt19937_64& rng, int length) {
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    std::bernoulli_distribution flip(0.5);
    GroupElement g;
    for (int i = 0; i < length; ++i) g = g * (flip(rng) ? gens[pick(rng)] : gens[pick(rng)].inverse());
    return g;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read '" + path + "'");
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        line = line.substr(start);
        line.erase(line.find_last_not_of(" \t\r") + 1);
        lines.push_back(line);
    }
    return lines;
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

std::string trace_class(const GroupElement& g) {
    const MotionClass mc = classify(g);
    return mc.tag == Motion::Elliptic ? mc.name() + "(" + std::to_string(mc.order) + ")" : mc.name();
}

struct Failure {
    int code;
    std::string message;
};

Failure describe(std::exception_ptr e) {
    try {
        std::rethrow_exception(e);
    } catch (const PrecisionError& x) {
        return {PrecisionFailure, x.what()};
    } catch (const DomainError& x) {
        return {DomainFailure, x.what()};
    } catch (const std::exception& x) {
        return {DomainFailure, x.what()};
    }
}

// ---------------------------------------------------------------- verify suites

struct Collector {
    SuiteReport report;
    explicit Collector(std::string name) { report.suite = std::move(name); }
    void check(bool ok, const std::function<std::string()>& what) {
        ++report.cases;
        if (ok) return;
        report.passed = false;
        if (report.counterexamples.size() < 5) report.counterexamples.push_back(what());
    }
};

SuiteReport suite_reciprocity(const VerifyOptions& o) {
    Collector c("reciprocity");
    const long L = o.limit;
    for (long a = 1; a <= L; ++a)
        for (long k = 1; k <= L; ++k) {
            if (std::gcd(a, k) != 1) continue;
            const Rat lhs = dedekind_sum(a, k) + dedekind_sum(k, a);
            const Rat rhs = make_rat(a * a + k * k + 1, 12 * a * k) - Rat(1, 4);
            c.check(lhs == rhs, [&] { return "s(" + std::to_string(a) + "," + std::to_string(k) + ")"; });
        }
    for (long k = 1; k <= std::min(L, 200L); ++k)
        for (long a = 0; a < k; ++a) {
            if (std::gcd(a, k) != 1) continue;
            c.check(dedekind_sum(a, k) == dedekind_sum_direct(a, k),
                    [&] { return "recursion vs direct at (" + std::to_string(a) + "," + std::to_string(k) + ")"; });
        }
    return c.report;
}

SuiteReport suite_cocycle(const VerifyOptions& o) {
    Collector c("cocycle");
    std::mt19937_64 rng(o.seed);
    const GroupId& G = o.group;
    if (G.is_full_modular()) {
        const long n = o.count ? o.count : 10000;
        for (long i = 0; i < n; ++i) {
            const GroupElement x = random_sl2z(rng, 1000), y = random_sl2z(rng, 1000), xy = x * y;
            const Rat d = cocycle_defect(Rat(3), GroupElement(), x, y, phi_classical(x), phi_classical(y),
                                         phi_classical(xy));
            c.check(d == 0, [&] { return x.to_string() + " ; " + y.to_string(); });
        }
        return c.report;
    }
    SymbolEngine engine(G, o.precision);
    const auto gens = generating_set(G);
    const long n = o.count ? o.count : 200;
    for (long i = 0; i < n; ++i) {
        const GroupElement x = random_word(gens, rng, 3), y = random_word(gens, rng, 3), xy = x * y;
        for (const auto& cusp : engine.cusp_list()) {
            const SymbolValue px = engine.phi(cusp.cusp, x), py = engine.phi(cusp.cusp, y),
                              pxy = engine.phi(cusp.cusp, xy);
            const bool ok = px.is_rational() && py.is_rational() && pxy.is_rational() &&
                            cocycle_defect(G, cusp.cusp, x, y, px.rational(), py.rational(), pxy.rational()) == 0;
            c.check(ok, [&] { return "cusp " + cusp.cusp.to_string() + ": " + x.to_string() + " ; " + y.to_string(); });
        }
    }
    return c.report;
}

SuiteReport suite_coset_sum(const VerifyOptions& o) {
    Collector c("coset-sum");
    const long N = o.level ? o.level : 2;
    const GroupId G = GroupId::gamma(N);
    SymbolEngine engine(G, o.precision);
    const auto gens = schreier_generators(G);
    std::mt19937_64 rng(o.seed);
    const long n = o.count ? o.count : 20;
    for (long i = 0; i < n;) {
        const GroupElement g = random_word(gens, rng, 4);
        if (classify(g).tag != Motion::Hyperbolic) continue;
        ++i;
        const SymbolValue sum = lift_coset_sum(G, GroupId::sl2z(), engine.psi_fn(Cusp::infinity()), g);
        const Rat expected = psi_classical(g);
        const bool ok = sum.is_rational() && sum.rational() == expected && sum.error() < 1e-20;
        c.check(ok, [&] {
            return g.to_string() + ": sum " + sum.to_string() + " (" + sum.kind_name() + "), expected " +
                   expected.get_str();
        });
    }
    return c.report;
}

SuiteReport suite_lemma(const VerifyOptions& o) {
    Collector c("lemma");
    std::mt19937_64 rng(o.seed);
    const long n = o.count ? o.count : 10;
    for (long i = 0; i < n;) {
        const GroupElement g = random_sl2z(rng, 12);
        if (classify(g).tag != Motion::Hyperbolic) continue;
        const double t = std::fabs(g.trace().get_d());
        if (t > 30 || std::sqrt(t * t - 4) / (2 * std::fabs(g.c().get_d())) < 0.3) continue;
        ++i;
        const NumericPeriod p = period_numeric(g, o.tol * 1e-2);
        const double expected = psi_classical(g).get_d();
        c.check(std::fabs(p.value - expected) < o.tol && std::fabs(p.imaginary) < o.tol, [&] {
            std::ostringstream s;
            s << std::setprecision(17) << g.to_string() << ": integral " << p.value << ", Psi " << expected;
            return s.str();
        });
    }
    return c.report;
}

SuiteReport suite_oracle(const VerifyOptions& o) {
    Collector c("oracle");
    std::vector<long> levels = {2, 3, 5, 7, 11};
    if (o.level) levels = {o.level};
    for (long N : levels) {
        const GroupId G = GroupId::gamma0(N);
        SymbolEngine engine(G, o.precision);
        for (const auto& g : schreier_generators(G)) {
            const SymbolValue diff = engine.psi(Cusp(0, 1), g) - engine.psi(Cusp::infinity(), g);
            const Rat oracle = x0_period_exact(N, g);
            c.check(diff.is_rational() && Rat(N - 1) * diff.rational() == oracle, [&] {
                return "N=" + std::to_string(N) + " " + g.to_string() + ": (N-1)(Psi_0 - Psi_inf) = " +
                       (Rat(N - 1) * diff).to_string() + ", oracle " + oracle.get_str();
            });
        }
    }
    return c.report;
}

SuiteReport suite_certificate(const VerifyOptions& o) {
    Collector c("certificate");
    if (o.input.empty()) throw DomainError("verify certificate needs --input");
    std::ifstream in(o.input);
    if (!in) throw DomainError("cannot read '" + o.input + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed JSON: ") + e.what());
    }
    const TorsionCertificate cert = certificate_from_json(j, o.precision.digits);
    SymbolEngine engine(cert.group, o.precision);
    const auto issues = recheck_certificate(engine, cert);
    c.report.cases = static_cast<long>(cert.periods.size());
    c.report.passed = issues.empty();
    c.report.counterexamples = issues;
    return c.report;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"reciprocity", "cocycle", "coset-sum", "lemma", "oracle",
                                                   "certificate"};
    return names;
}

SuiteReport verify_suite(const std::string& name, const VerifyOptions& opts) {
    if (name == "reciprocity") return suite_reciprocity(opts);
    if (name == "cocycle") return suite_cocycle(opts);
    if (name == "coset-sum") return suite_coset_sum(opts);
    if (name == "lemma") return suite_lemma(opts);
    if (name == "oracle") return suite_oracle(opts);
    if (name == "certificate") return suite_certificate(opts);
    throw DomainError("unknown suite '" + name + "'");
}

// ---------------------------------------------------------------- commands

namespace {

struct GroupArgs {
    std::string family = "sl2z";
    long level = 1;
    GroupId resolve() const { return GroupId::parse(family, family == "sl2z" || family == "SL2Z" ? 1 : level); }
};

void add_group(CLI::App* cmd, GroupArgs& g) {
    cmd->add_option("--group", g.family, "sl2z | gamma | gamma0 | gamma1 | gamma0+")->capture_default_str();
    cmd->add_option("--level", g.level, "level N")->capture_default_str();
}

int cmd_sum(const Config& cfg, const std::string& a, const std::string& c, std::ostream& out) {
    Int ai, ci;
    if (ai.set_str(a, 10) != 0 || ci.set_str(c, 10) != 0) throw DomainError("sum expects two integers");
    const Rat s = dedekind_sum(ai, ci);
    if (cfg.format == "json") out << json{{"a", a}, {"c", c}, {"value", s.get_str()}}.dump() << "\n";
    else if (cfg.format == "csv") out << "a,c,value\n" << a << "," << c << "," << s.get_str() << "\n";
    else out << s.get_str() << "\n";
    return Ok;
}

struct SymbolArgs {
    GroupArgs group;
    std::string cusp = "inf";
    std::vector<std::string> matrices;
    std::string input;
    std::string kind = "psi";
};

int cmd_symbol(const Config& cfg, const SymbolArgs& args, std::ostream& out, std::ostream& err) {
    const GroupId G = args.group.resolve();
    const Cusp cusp = Cusp::parse(args.cusp);
    if (args.kind != "psi" && args.kind != "phi") throw DomainError("--kind must be psi or phi");
    std::vector<std::string> lines = args.matrices;
    if (!args.input.empty())
        for (auto& l : read_lines(args.input)) lines.push_back(std::move(l));
    if (lines.empty()) throw DomainError("symbol needs --matrix or --input");
    SymbolEngine engine(G, cfg.precision());

    struct Row {
        std::optional<Evaluation> eval;
        std::string trace;
        std::optional<Failure> failure;
    };
    std::vector<Row> rows(lines.size());
    parallel_for(lines.size(), cfg.workers, [&](std::size_t i) {
        try {
            const GroupElement g = GroupElement::parse(lines[i]);
            rows[i].trace = trace_class(g);
            Evaluation e = engine.evaluate(cusp, g);
            if (args.kind == "phi") e.value = engine.phi(cusp, g);
            rows[i].eval = std::move(e);
        } catch (...) {
            rows[i].failure = describe(std::current_exception());
        }
    });

    int code = Ok;
    json array = json::array();
    if (cfg.format == "csv") out << "matrix,value,exactness,method,trace_class\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        if (r.failure) {
            code = std::max(code, r.failure->code);
            err << "radsym: " << lines[i] << ": " << r.failure->message << "\n";
            if (cfg.format == "json") array.push_back({{"matrix", lines[i]}, {"error", r.failure->message}});
            else if (cfg.format == "csv") out << csv_quote(lines[i]) << ",,error,,\n";
            continue;
        }
        const SymbolValue& v = r.eval->value;
        if (!v.is_rational()) code = std::max<int>(code, PrecisionFailure);
        if (cfg.format == "json") {
            array.push_back({{"matrix", lines[i]},
                             {"value", value_json(v, cfg.digits)},
                             {"exactness", v.kind_name()},
                             {"method", r.eval->method},
                             {"group", G.name()},
                             {"cusp", cusp.to_string()},
                             {"symbol", args.kind},
                             {"trace_class", r.trace}});
        } else if (cfg.format == "csv") {
            out << csv_quote(lines[i]) << "," << v.to_string(cfg.digits) << "," << v.kind_name() << ","
                << r.eval->method << "," << r.trace << "\n";
        } else if (lines.size() == 1) {
            out << v.to_string(cfg.digits) << "\n";
        } else {
            out << lines[i] << "\t" << v.to_string(cfg.digits) << "\n";
        }
    }
    if (cfg.format == "json") out << (lines.size() == 1 && args.input.empty() ? array[0] : array).dump(2) << "\n";
    return code;
}

struct PeriodArgs {
    GroupArgs group;
    std::string matrix;
    std::string divisor;
    bool numeric = false;
};

int cmd_period(const Config& cfg, const PeriodArgs& args, std::ostream& out) {
    const GroupElement g = GroupElement::parse(args.matrix);
    json j{{"element", g.to_string()}, {"trace_class", trace_class(g)}};
    int code = Ok;
    std::ostringstream text;
    if (!args.divisor.empty()) {
        const GroupId G = args.group.resolve();
        SymbolEngine engine(G, cfg.precision());
        const Divisor D = Divisor::parse(G, args.divisor);
        const PeriodValue p = period_of(engine, D, g);
        j["group"] = G.name();
        j["divisor"] = D.to_string();
        j["kind"] = p.kind;
        j["value"] = value_json(p.value, cfg.digits);
        j["exactness"] = p.value.kind_name();
        if (!p.value.is_rational()) code = PrecisionFailure;
        text << p.value.to_string(cfg.digits) << "\n";
    } else {
        // period of the completed E2 on SL2(Z): Psi(g)
        if (!g.is_sl2z()) throw DomainError(g.to_string() + " is not in SL2(Z)");
        const Rat psi = psi_classical(g);
        j["group"] = GroupId::sl2z().name();
        j["value"] = psi.get_str();
        j["exactness"] = "exact";
        text << psi.get_str() << "\n";
        if (args.numeric) {
            const NumericPeriod p = period_numeric(g, cfg.tol * 1e-2);
            const double diff = std::fabs(p.value - psi.get_d());
            j["numeric"] = {{"value", p.value},
                            {"error", p.error},
                            {"imaginary", p.imaginary},
                            {"difference", diff},
                            {"integrated", p.integrated.to_string()},
                            {"tol", cfg.tol}};
            std::ostringstream s;
            s << std::setprecision(15) << "numeric " << p.value << " (difference " << std::setprecision(3) << diff
              << ", tol " << cfg.tol << ")\n";
            text << s.str();
            if (diff >= cfg.tol || std::fabs(p.imaginary) >= cfg.tol) code = PrecisionFailure;
        }
    }
    if (cfg.format == "json") out << j.dump(2) << "\n";
    else if (cfg.format == "csv") out << "matrix,value\n" << csv_quote(g.to_string()) << "," << text.str().substr(0, text.str().find('\n')) << "\n";
    else out << text.str();
    return code;
}

struct TorsionArgs {
    GroupArgs group;
    std::string divisor;
};

int cmd_torsion(const Config& cfg, const TorsionArgs& args, std::ostream& out) {
    const GroupId G = args.group.resolve();
    SymbolEngine engine(G, cfg.precision());
    const Divisor D = Divisor::parse(G, args.divisor);
    const TorsionCertificate cert = torsion_certificate(engine, D, cfg.workers);
    const int code = cert.status == TorsionCertificate::Status::NonRational ? PrecisionFailure : Ok;
    if (cfg.format == "json") {
        out << certificate_json(cert, cfg.digits).dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "generator,kind,period,exactness\n";
        for (const auto& p : cert.periods)
            out << csv_quote(p.element.to_string()) << "," << p.kind << "," << p.value.to_string(cfg.digits) << ","
                << p.value.kind_name() << "\n";
    } else {
        out << "group " << G.name() << "\ndivisor " << (D.is_zero() ? "0" : D.to_string()) << "\nstatus "
            << cert.status_name() << "\norder " << (cert.order ? cert.order->get_str() : "none") << "\n";
        for (const auto& p : cert.periods)
            out << "  " << std::left << std::setw(24) << p.element.to_string() << std::setw(12) << p.kind
                << p.value.to_string(cfg.digits) << "\n";
        for (const auto& n : cert.notes) out << "note: " << n << "\n";
    }
    return code;
}

int cmd_cusps(const Config& cfg, const GroupArgs& args, std::ostream& out) {
    const GroupId G = args.resolve();
    const auto list = cusps(G);
    if (cfg.format == "json") {
        json a = json::array();
        for (const auto& c : list)
            a.push_back({{"cusp", c.cusp.to_string()}, {"width", c.width.get_str()}, {"base", c.sigma.base.to_string()}});
        out << json{{"group", G.name()}, {"cusps", a}}.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        out << "cusp,width\n";
        for (const auto& c : list) out << c.cusp.to_string() << "," << c.width.get_str() << "\n";
    } else {
        for (const auto& c : list) out << c.cusp.to_string() << "\twidth " << c.width.get_str() << "\n";
    }
    return Ok;
}

struct CosetArgs {
    GroupArgs group;
    std::string in_family = "sl2z";
    long in_level = 1;
};

int cmd_cosets(const Config& cfg, const CosetArgs& args, std::ostream& out) {
    const GroupId G1 = args.group.resolve();
    const GroupId G = GroupArgs{args.in_family, args.in_level}.resolve();
    const auto reps = cosets(G1, G);
    if (cfg.format == "json") {
        json a = json::array();
        for (const auto& r : reps) a.push_back(r.to_string());
        out << json{{"subgroup", G1.name()}, {"group", G.name()}, {"index", reps.size()}, {"representatives", a}}
                   .dump(2)
            << "\n";
    } else if (cfg.format == "csv") {
        out << "representative\n";
        for (const auto& r : reps) out << csv_quote(r.to_string()) << "\n";
    } else {
        out << "index " << reps.size() << "\n";
        for (const auto& r : reps) out << r.to_string() << "\n";
    }
    return Ok;
}

int cmd_verify(const Config& cfg, const std::string& suite, VerifyOptions opts, const GroupArgs& group,
               std::ostream& out) {
    opts.group = group.resolve();
    opts.tol = cfg.tol;
    opts.seed = cfg.seed;
    opts.precision = cfg.precision();
    const SuiteReport r = verify_suite(suite, opts);
    if (cfg.format == "json") {
        out << json{{"suite", r.suite}, {"passed", r.passed}, {"cases", r.cases}, {"counterexamples", r.counterexamples}}
                   .dump(2)
            << "\n";
    } else {
        out << (r.passed ? "PASS " : "FAIL ") << r.suite << " (" << r.cases << " cases)\n";
        for (const auto& c : r.counterexamples) out << "  counterexample: " << c << "\n";
    }
    return r.passed ? Ok : DomainFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dedekind sums, Rademacher symbols and cuspidal periods for congruence groups", "radsym"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    bool json_flag = false;
    std::string denom = "0";
    app.add_option("--digits", cfg.digits, "working precision in decimal digits (>= 30)")
        ->envname("RADSYM_DIGITS")
        ->capture_default_str();
    app.add_option("--tol", cfg.tol, "numeric tolerance in (0, 1e-4]")->capture_default_str();
    app.add_option("--denom-bound", denom, "denominator bound for rational reconstruction (0 = automatic)");
    app.add_option("--format", cfg.format, "text | json | csv")->capture_default_str();
    app.add_flag("--json", json_flag, "shorthand for --format json");
    app.add_option("--workers", cfg.workers, "worker threads for batch evaluation")->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed for randomized suites")->capture_default_str();

    std::string sum_a, sum_c;
    auto* sum = app.add_subcommand("sum", "Dedekind sum s(a, c)");
    sum->add_option("a", sum_a)->required();
    sum->add_option("c", sum_c)->required();

    SymbolArgs symbol_args;
    auto* symbol = app.add_subcommand("symbol", "Rademacher symbol Psi (or Phi) at a cusp");
    add_group(symbol, symbol_args.group);
    symbol->add_option("--cusp", symbol_args.cusp, "p/q or inf")->capture_default_str();
    symbol->add_option("--matrix", symbol_args.matrices, "a,b,c,d or a,b,c,d;e (repeatable)");
    symbol->add_option("--input", symbol_args.input, "file with one matrix per line");
    symbol->add_option("--kind", symbol_args.kind, "psi | phi")->capture_default_str();

    PeriodArgs period_args;
    auto* period = app.add_subcommand("period", "period of E2 (SL2(Z)) or of a cuspidal divisor");
    add_group(period, period_args.group);
    period->add_option("--matrix", period_args.matrix, "a,b,c,d")->required();
    period->add_option("--divisor", period_args.divisor, "cusp:multiplicity list, e.g. 0:-1,inf:1");
    period->add_flag("--numeric", period_args.numeric, "also integrate E2 along the axis");

    TorsionArgs torsion_args;
    auto* torsion = app.add_subcommand("torsion", "order of a cuspidal divisor class");
    add_group(torsion, torsion_args.group);
    torsion->add_option("--divisor", torsion_args.divisor, "cusp:multiplicity list")->required();

    GroupArgs cusps_args;
    auto* cusps_cmd = app.add_subcommand("cusps", "cusp representatives and widths");
    add_group(cusps_cmd, cusps_args);

    CosetArgs coset_args;
    auto* cosets_cmd = app.add_subcommand("cosets", "coset representatives of a subgroup");
    add_group(cosets_cmd, coset_args.group);
    cosets_cmd->add_option("--in", coset_args.in_family, "ambient family")->capture_default_str();
    cosets_cmd->add_option("--in-level", coset_args.in_level, "ambient level")->capture_default_str();

    std::string suite;
    VerifyOptions verify_opts;
    GroupArgs verify_group;
    auto* verify = app.add_subcommand("verify", "run a property suite");
    verify->add_option("suite", suite, "reciprocity | cocycle | coset-sum | lemma | oracle | certificate")
        ->required()
        ->check(CLI::IsMember(suite_names()));
    add_group(verify, verify_group);
    verify->add_option("--count", verify_opts.count, "number of random cases (0 = suite default)");
    verify->add_option("--limit", verify_opts.limit, "range for exhaustive suites")->capture_default_str();
    verify->add_option("--input", verify_opts.input, "certificate JSON for the certificate suite");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : DomainFailure;
    }

    try {
        if (json_flag) cfg.format = "json";
        if (cfg.denom_bound.set_str(denom, 10) != 0) throw DomainError("malformed --denom-bound");
        cfg.validate();
        if (*sum) return cmd_sum(cfg, sum_a, sum_c, out);
        if (*symbol) return cmd_symbol(cfg, symbol_args, out, err);
        if (*period) return cmd_period(cfg, period_args, out);
        if (*torsion) return cmd_torsion(cfg, torsion_args, out);
        if (*cusps_cmd) return cmd_cusps(cfg, cusps_args, out);
        if (*cosets_cmd) return cmd_cosets(cfg, coset_args, out);
        if (*verify) {
            verify_opts.level = verify->count("--level") ? verify_group.level : 0;
            return cmd_verify(cfg, suite, verify_opts, verify_group, out);
        }
    } catch (...) {
        const Failure f = describe(std::current_exception());
        err << "radsym: " << f.message << "\n";
        return f.code;
    }
    return DomainFailure;
}

}  // namespace radsym::cli
