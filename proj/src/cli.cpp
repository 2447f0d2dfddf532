#include "hypercubic/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypercubic/asymptotics.hpp"
#include "hypercubic/fibration.hpp"
#include "hypercubic/oracle.hpp"
#include "hypercubic/tamagawa.hpp"
#include "hypercubic/verify.hpp"

namespace hypercubic::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::int64_t kBruteSurfaceCap = 80;
constexpr std::int64_t kBruteThreefoldCap = 30;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class CheckFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string surface;
    std::optional<std::int64_t> a;
    std::optional<std::int64_t> bound;
    std::string bounds;
    std::optional<std::int64_t> radius;
    std::string method = "fiber";
    bool check = false;
    std::int64_t primes = 20;
    std::int64_t mu = 1;
    std::int64_t lambda = 0;
    double quad_tol = 1e-10;
    std::string format;
    unsigned threads = 0;
    std::string out_path;
    bool force = false;
    std::string suite;
};

double rounded(long double x) { return std::stod(format_real(x)); }

std::string format_or(const RunConfig& cfg, const std::string& fallback) {
    const std::string f = cfg.format.empty() ? fallback : cfg.format;
    if (f != "json" && f != "csv" && f != "text")
        throw UsageError("--format must be json, csv or text");
    return f;
}

SurfaceSpec surface_of(const RunConfig& cfg) {
    if (cfg.surface == "threefold") {
        if (cfg.a)
            throw UsageError("--a only applies to --surface cayley");
        return SurfaceSpec::threefold();
    }
    if (cfg.surface == "cayley") {
        if (!cfg.a)
            throw UsageError("--surface cayley requires --a");
        if (*cfg.a == 0)
            throw UsageError("a must be nonzero");
        if (!is_squarefree(*cfg.a))
            throw UsageError("a must be squarefree");
        return SurfaceSpec::cayley(*cfg.a);
    }
    if (cfg.surface.empty())
        throw UsageError("--surface is required (cayley or threefold)");
    throw UsageError("--surface must be cayley or threefold");
}

std::string surface_label(const SurfaceSpec& spec) {
    return spec.kind() == SurfaceKind::Threefold ? "threefold" : "cayley";
}

std::string a_field(const SurfaceSpec& spec) {
    return spec.kind() == SurfaceKind::Cayley ? std::to_string(spec.a()) : "";
}

void put_surface(Json& j, const SurfaceSpec& spec) {
    j["surface"] = surface_label(spec);
    if (spec.kind() == SurfaceKind::Cayley)
        j["a"] = spec.a();
}

std::int64_t positive(std::int64_t v, const char* what) {
    if (v < 1)
        throw UsageError(std::string(what) + " must be a positive integer");
    return v;
}

std::int64_t radius_of(const RunConfig& cfg, std::int64_t fallback) {
    const std::int64_t r = cfg.radius.value_or(fallback);
    if (r < 1 || r > kMaxSeriesRadius)
        throw UsageError("--radius must be in [1, " + std::to_string(kMaxSeriesRadius) + "]");
    return r;
}

std::int64_t bound_of(const RunConfig& cfg) {
    if (!cfg.bound)
        throw UsageError("--bound is required");
    const std::int64_t b = positive(*cfg.bound, "--bound");
    if (b > kFibrationMaxBound)
        throw UsageError("--bound must not exceed " + std::to_string(kFibrationMaxBound));
    return b;
}

std::vector<std::int64_t> bounds_of(const RunConfig& cfg) {
    std::vector<std::int64_t> out;
    if (!cfg.bounds.empty()) {
        std::stringstream ss(cfg.bounds);
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::size_t used = 0;
            std::int64_t v = 0;
            try {
                v = std::stoll(item, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != item.size())
                throw UsageError("--bounds must be a comma-separated list of integers");
            positive(v, "--bounds entry");
            if (v > kFibrationMaxBound)
                throw UsageError("--bounds entries must not exceed " + std::to_string(kFibrationMaxBound));
            out.push_back(v);
        }
    } else if (cfg.bound) {
        out.push_back(bound_of(cfg));
    }
    if (out.empty())
        throw UsageError("--bounds (or --bound) is required");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::int64_t brute_count(const SurfaceSpec& spec, std::int64_t b, const RunConfig& cfg) {
    const std::int64_t cap = spec.kind() == SurfaceKind::Threefold ? kBruteThreefoldCap : kBruteSurfaceCap;
    if (b > cap && !cfg.force)
        throw UsageError("brute-force bound " + std::to_string(b) + " is above the cap " + std::to_string(cap) +
                         " for this surface; pass --force to run it anyway");
    if (b > kOracleMaxBound)
        throw UsageError("brute-force bound must not exceed " + std::to_string(kOracleMaxBound));
    return count(spec, HeightBound(b), cfg.threads);
}

// ---------------------------------------------------------------------------

void cmd_count(const RunConfig& cfg, std::ostream& out) {
    const auto spec = surface_of(cfg);
    const std::int64_t b = bound_of(cfg);
    if (cfg.method != "fiber" && cfg.method != "brute")
        throw UsageError("--method must be fiber or brute");
    const std::string format = format_or(cfg, "text");
    const bool brute = cfg.method == "brute";
    const std::int64_t n = brute ? brute_count(spec, b, cfg) : total_count(spec, HeightBound(b), cfg.threads);
    if (cfg.check) {
        const std::int64_t other = brute ? total_count(spec, HeightBound(b), cfg.threads) : brute_count(spec, b, cfg);
        if (other != n)
            throw CheckFailure("count mismatch for " + spec.name() + " B=" + std::to_string(b) + ": " + cfg.method +
                               " gives " + std::to_string(n) + ", " + (brute ? "fiber" : "brute") + " gives " +
                               std::to_string(other));
    }
    if (format == "json") {
        Json j;
        put_surface(j, spec);
        j["B"] = b;
        j["method"] = cfg.method;
        j["count"] = n;
        if (cfg.check)
            j["check"] = "match";
        out << j.dump() << '\n';
    } else if (format == "csv") {
        out << "surface,a,B,method,count\n"
            << surface_label(spec) << ',' << a_field(spec) << ',' << b << ',' << cfg.method << ',' << n << '\n';
    } else {
        out << "surface: " << spec.name() << '\n'
            << "B: " << b << '\n'
            << "method: " << cfg.method << '\n'
            << "count: " << n << '\n';
        if (cfg.check)
            out << "check: match\n";
    }
}

void cmd_constant(const RunConfig& cfg, std::ostream& out) {
    const auto spec = surface_of(cfg);
    const std::int64_t radius = radius_of(cfg, 100);
    const std::string format = format_or(cfg, "text");

    std::vector<std::int64_t> radii;
    for (std::int64_t r : {radius / 4, radius / 2, radius})
        if (r >= 1 && (radii.empty() || radii.back() != r))
            radii.push_back(r);
    std::vector<LeadingConstant> rows;
    for (auto r : radii)
        rows.push_back(spec.kind() == SurfaceKind::Cayley ? leading_constant_cayley(spec.a(), r, cfg.threads)
                                                          : leading_constant_threefold(r, cfg.threads));
    const LeadingConstant& c = rows.back();

    if (format == "json") {
        Json j;
        put_surface(j, spec);
        j["radius"] = radius;
        j["terms"] = c.series.terms_used;
        j["series"] = rounded(c.series.partial_sum);
        j["tail_bound"] = rounded(c.series.tail_bound);
        j["constant"] = rounded(c.value);
        j["uncertainty"] = rounded(c.uncertainty);
        Json doubling = Json::array();
        for (const auto& row : rows) {
            Json d;
            d["radius"] = row.series.radius;
            d["series"] = rounded(row.series.partial_sum);
            d["tail_bound"] = rounded(row.series.tail_bound);
            d["constant"] = rounded(row.value);
            doubling.push_back(d);
        }
        j["doubling"] = doubling;
        out << j.dump() << '\n';
    } else if (format == "csv") {
        out << "surface,a,radius,terms,series,tail_bound,constant,uncertainty\n";
        for (const auto& row : rows)
            out << surface_label(spec) << ',' << a_field(spec) << ',' << row.series.radius << ','
                << row.series.terms_used << ',' << format_real(row.series.partial_sum) << ','
                << format_real(row.series.tail_bound) << ',' << format_real(row.value) << ','
                << format_real(row.uncertainty) << '\n';
    } else {
        out << "surface: " << spec.name() << '\n'
            << "radius: " << radius << '\n'
            << "terms: " << c.series.terms_used << '\n'
            << "series: " << format_real(c.series.partial_sum) << '\n'
            << "tail_bound: " << format_real(c.series.tail_bound) << '\n'
            << "constant: " << format_real(c.value) << " +- " << format_real(c.uncertainty) << '\n'
            << "doubling:\n";
        for (const auto& row : rows)
            out << "  R=" << row.series.radius << " series=" << format_real(row.series.partial_sum)
                << " tail_bound=" << format_real(row.series.tail_bound) << '\n';
    }
}

void cmd_converge(const RunConfig& cfg, std::ostream& out) {
    const auto spec = surface_of(cfg);
    const auto bounds = bounds_of(cfg);
    const std::int64_t radius = radius_of(cfg, 1000);
    const std::string format = format_or(cfg, "csv");
    const LeadingConstant constant = spec.kind() == SurfaceKind::Cayley
                                         ? leading_constant_cayley(spec.a(), radius, cfg.threads)
                                         : leading_constant_threefold(radius, cfg.threads);
    std::vector<CountReport> reports;
    for (auto b : bounds)
        reports.push_back(compare(spec, b, constant, cfg.threads));

    if (format == "json") {
        Json rows = Json::array();
        for (const auto& r : reports) {
            Json j;
            put_surface(j, spec);
            j["B"] = r.bound;
            j["count"] = r.exact_count;
            j["predicted"] = rounded(r.predicted);
            j["rel_error"] = rounded(r.rel_error);
            rows.push_back(j);
        }
        out << rows.dump() << '\n';
        return;
    }
    const char sep = format == "csv" ? ',' : ' ';
    out << "surface" << sep << "a" << sep << "B" << sep << "count" << sep << "predicted" << sep << "rel_error\n";
    for (const auto& r : reports)
        out << surface_label(spec) << sep << a_field(spec) << sep << r.bound << sep << r.exact_count << sep
            << format_real(r.predicted) << sep << format_real(r.rel_error) << '\n';
}

void cmd_tamagawa(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.primes < 2)
        throw UsageError("--primes must be at least 2");
    if (cfg.mu == 0 && cfg.lambda == 0)
        throw UsageError("--mu and --lambda must not both be zero");
    if (gcd(cfg.mu, cfg.lambda) != 1)
        throw UsageError("--mu and --lambda must be coprime");
    if (!(cfg.quad_tol > 0))
        throw UsageError("--quad-tol must be positive");
    const std::int64_t radius = radius_of(cfg, 100);
    const std::string format = format_or(cfg, "text");

    std::vector<LocalDensity> densities;
    for (auto p : primes_up_to(cfg.primes))
        densities.push_back(omega_p(p));
    const long double product = euler_product(cfg.primes);
    const long double inverse_zeta = 1 / zeta3();
    const long double closed = omega_infinity_closed(cfg.mu, cfg.lambda);
    std::optional<QuadratureResult> quad;
    std::string quad_problem;
    try {
        quad = omega_infinity_quadrature(cfg.mu, cfg.lambda, cfg.quad_tol);
    } catch (const QuadratureError& e) {
        quad_problem = e.what();
    }
    const bool quad_ok = quad && std::fabs(quad->value - closed) <= static_cast<long double>(cfg.quad_tol);
    const auto fiber = tamagawa_fiber(cfg.mu, cfg.lambda);
    const auto peyre = peyre_consistency(radius);

    auto rational_text = [](const Rational& q) {
        std::ostringstream os;
        os << q;
        return os.str();
    };

    if (format == "json") {
        Json j;
        Json table = Json::array();
        for (const auto& d : densities) {
            Json row;
            row["p"] = d.p;
            row["omega_p"] = rational_text(d.value);
            table.push_back(row);
        }
        j["omega_p"] = table;
        j["euler_product"] = {{"primes", cfg.primes},
                              {"value", rounded(product)},
                              {"inverse_zeta3", rounded(inverse_zeta)},
                              {"difference", rounded(product - inverse_zeta)}};
        Json inf;
        inf["mu"] = cfg.mu;
        inf["lambda"] = cfg.lambda;
        inf["closed"] = rounded(closed);
        inf["quadrature"] = quad ? Json(rounded(quad->value)) : Json(nullptr);
        inf["error_estimate"] = quad ? Json(rounded(quad->error_estimate)) : Json(nullptr);
        inf["status"] = quad_ok ? "PASS" : "FAIL";
        j["omega_infinity"] = inf;
        j["tau"] = rounded(fiber.tau);
        j["invariants"] = {{"alpha", FiberInvariants::alpha},
                           {"beta", FiberInvariants::beta},
                           {"gamma", rational_text(FiberInvariants::gamma())},
                           {"delta", FiberInvariants::delta}};
        j["peyre"] = {{"radius", radius}, {"fibers", peyre.fibers_checked}, {"status", peyre.passed() ? "PASS" : "FAIL"}};
        out << j.dump() << '\n';
    } else {
        const char* sep = format == "csv" ? "," : " ";
        if (format == "csv") {
            out << "quantity,key,value\n";
            for (const auto& d : densities)
                out << "omega_p," << d.p << ',' << rational_text(d.value) << '\n';
            out << "euler_product," << cfg.primes << ',' << format_real(product) << '\n'
                << "inverse_zeta3,," << format_real(inverse_zeta) << '\n'
                << "omega_infinity_closed,(" << cfg.mu << ' ' << cfg.lambda << ")," << format_real(closed) << '\n'
                << "omega_infinity_quadrature,(" << cfg.mu << ' ' << cfg.lambda << "),"
                << (quad ? format_real(quad->value) : "nan") << '\n'
                << "tau,(" << cfg.mu << ' ' << cfg.lambda << ")," << format_real(fiber.tau) << '\n'
                << "peyre," << radius << ',' << (peyre.passed() ? "PASS" : "FAIL") << '\n';
        } else {
            out << "omega_p = #P^2(F_p)/p^2:\n";
            for (const auto& d : densities)
                out << "  p=" << d.p << sep << rational_text(d.value) << '\n';
            out << "euler product over p<=" << cfg.primes << ": " << format_real(product) << '\n'
                << "1/zeta(3): " << format_real(inverse_zeta) << '\n'
                << "difference: " << format_real(product - inverse_zeta) << '\n'
                << "omega_inf at (mu:lambda)=(" << cfg.mu << ':' << cfg.lambda << "):\n"
                << "  closed form: " << format_real(closed) << '\n';
            if (quad)
                out << "  quadrature: " << format_real(quad->value) << " (error estimate "
                    << format_real(quad->error_estimate) << ")\n";
            out << "  agreement: " << (quad_ok ? "PASS" : "FAIL") << '\n'
                << "tau_L: " << format_real(fiber.tau) << '\n'
                << "alpha=" << FiberInvariants::alpha << " beta=" << FiberInvariants::beta
                << " gamma=" << rational_text(FiberInvariants::gamma()) << " delta=" << FiberInvariants::delta << '\n'
                << "consistency gamma*tau_L vs threefold constant (" << peyre.fibers_checked
                << " fibres, radius " << radius << "): " << (peyre.passed() ? "PASS" : "FAIL") << '\n';
        }
    }
    if (!quad_problem.empty())
        err << quad_problem << '\n';
    if (!quad_ok || !peyre.passed())
        throw CheckFailure("tamagawa consistency check failed");
}

void cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::string format = format_or(cfg, "text");
    std::vector<const Suite*> selected;
    if (cfg.suite.empty()) {
        for (const auto& s : verify_suites())
            selected.push_back(&s);
    } else {
        std::stringstream ss(cfg.suite);
        std::string name;
        while (std::getline(ss, name, ',')) {
            const auto& all = verify_suites();
            auto it = std::find_if(all.begin(), all.end(), [&](const Suite& s) { return s.name == name; });
            if (it == all.end())
                throw UsageError("unknown suite '" + name + "'");
            selected.push_back(&*it);
        }
    }
    VerifyOptions opts;
    opts.threads = cfg.threads;
    std::optional<std::string> first_failure;
    Json rows = Json::array();
    for (const Suite* suite : selected) {
        const auto start = std::chrono::steady_clock::now();
        const SuiteResult r = suite->run(opts);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        err << "timing " << r.name << ' ' << format_real(seconds) << "s\n";
        const std::string status = std::string(r.soft ? "SOFT-" : "") + (r.passed ? "PASS" : "FAIL");
        if (!r.passed && !r.soft && !first_failure)
            first_failure = r.name + ": " + r.failure;
        if (format == "json") {
            Json j;
            j["suite"] = r.name;
            j["criterion"] = suite->criterion;
            j["status"] = status;
            j["checks"] = r.checks;
            j["notes"] = r.notes;
            j["failure"] = r.failure;
            rows.push_back(j);
        } else if (format == "csv") {
            if (rows.empty())
                out << "suite,criterion,status,checks\n";
            rows.push_back(r.name);
            out << r.name << ',' << suite->criterion << ',' << status << ',' << r.checks << '\n';
        } else {
            out << '[' << status << "] " << r.name << " (criterion " << suite->criterion << ", " << r.checks
                << " checks): " << suite->summary << '\n';
            for (const auto& note : r.notes)
                out << "    " << note << '\n';
            if (!r.passed)
                out << "    first failure: " << r.failure << '\n';
        }
    }
    if (format == "json")
        out << rows.dump() << '\n';
    else if (format == "text")
        out << (first_failure ? "verify: FAILED" : "verify: all hard checks passed") << '\n';
    if (first_failure)
        throw CheckFailure(*first_failure);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Rational points of bounded height on non-normal cubic hypersurfaces", "hypercubic"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--surface", cfg.surface, "cayley or threefold");
    app.add_option("--a", cfg.a, "parameter of t0t1t2 + t3(t0^2 + a t1^2); nonzero, squarefree");
    app.add_option("--bound", cfg.bound, "height bound B");
    app.add_option("--bounds", cfg.bounds, "comma-separated height bounds");
    app.add_option("--radius", cfg.radius, "series truncation radius");
    app.add_option("--method", cfg.method, "fiber or brute");
    app.add_flag("--check", cfg.check, "cross-check the count with the other method");
    app.add_option("--primes", cfg.primes, "largest prime in the omega_p table and Euler product");
    app.add_option("--mu", cfg.mu, "fibre coordinate mu");
    app.add_option("--lambda", cfg.lambda, "fibre coordinate lambda");
    app.add_option("--quad-tol", cfg.quad_tol, "absolute quadrature tolerance");
    app.add_option("--format", cfg.format, "json, csv or text");
    app.add_option("--threads", cfg.threads, "worker threads (0: one per core)");
    app.add_option("--out", cfg.out_path, "write the report to this file");
    app.add_flag("--force", cfg.force, "lift the brute-force bound caps (may be very slow)");
    app.add_option("--suite", cfg.suite, "comma-separated verify suites");
    for (const char* name : {"count", "constant", "converge", "tamagawa", "verify"})
        app.add_subcommand(name)->callback([&cfg, name] { cfg.command = name; });
    app.get_subcommand("count")->description("N(V, B) by fibration or brute force");
    app.get_subcommand("constant")->description("leading constant from the truncated series");
    app.get_subcommand("converge")->description("exact counts against the asymptotic prediction (CSV)");
    app.get_subcommand("tamagawa")->description("local densities and the fibre Tamagawa numbers");
    app.get_subcommand("verify")->description("run the verification suites");

    std::vector<const char*> argv{"hypercubic"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    std::ostringstream report;
    try {
        if (cfg.command == "count")
            cmd_count(cfg, report);
        else if (cfg.command == "constant")
            cmd_constant(cfg, report);
        else if (cfg.command == "converge")
            cmd_converge(cfg, report);
        else if (cfg.command == "tamagawa")
            cmd_tamagawa(cfg, report, err);
        else
            cmd_verify(cfg, report, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const CheckFailure& e) {
        out << report.str();
        err << "check failed: " << e.what() << '\n';
        return kFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }

    if (cfg.out_path.empty()) {
        out << report.str();
    } else {
        std::ofstream file(cfg.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << cfg.out_path << '\n';
            return kFailure;
        }
        file << report.str();
    }
    return kSuccess;
}

}  // namespace hypercubic::cli
