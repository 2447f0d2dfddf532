#include "hypercubic/verify.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "hypercubic/asymptotics.hpp"
#include "hypercubic/fibration.hpp"
#include "hypercubic/forms.hpp"
#include "hypercubic/oracle.hpp"
#include "hypercubic/tamagawa.hpp"

namespace hypercubic {

std::string format_real(long double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12Lg", x);
    return buf;
}

namespace {

constexpr std::int64_t kOracleSurfaceBound = 50;
constexpr std::int64_t kOracleThreefoldBound = 25;
constexpr std::int64_t kFiberSetBound = 20;
constexpr std::int64_t kBridgeRadiusSq = 1'000'000;
constexpr std::int64_t kWindowBound = 50;

std::vector<SurfaceSpec> equivalence_surfaces() {
    std::vector<SurfaceSpec> out;
    for (auto a : verify_cayley_parameters())
        out.push_back(SurfaceSpec::cayley(a));
    out.push_back(SurfaceSpec::threefold());
    return out;
}

std::string describe(const std::vector<std::int64_t>& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

std::string describe(const PrimitivePair& y) { return "(" + std::to_string(y.mu) + ":" + std::to_string(y.lambda) + ")"; }

class Draw {
  public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}

    // Uniform on [lo, hi] up to a negligible modulo bias; the mapping is
    // fixed so draws are identical on every platform.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<std::int64_t>(rng_() % span);
    }

    Rational rational(std::int64_t reach) {
        const std::int64_t num = uniform(-reach, reach);
        const std::int64_t den = uniform(1, reach);
        return Rational(num, den);
    }

  private:
    std::mt19937_64 rng_;
};

}  // namespace

const std::vector<std::int64_t>& verify_cayley_parameters() {
    static const std::vector<std::int64_t> params{1, -1, 2, -2, 3, 5, -5, 6, 10, -30};
    return params;
}

SuiteResult verify_oracle_equivalence(const VerifyOptions& opts) {
    SuiteResult r;
    r.name = "oracle-equivalence";
    for (const auto& spec : equivalence_surfaces()) {
        const std::int64_t top =
            spec.kind() == SurfaceKind::Threefold ? kOracleThreefoldBound : kOracleSurfaceBound;
        // One enumeration at the top bound; smaller bounds are its sub-lists.
        const auto points = enumerate_points(spec, HeightBound(top), opts.threads);
        std::vector<std::int64_t> heights;
        for (const auto& p : points)
            heights.push_back(p.height_sq());
        for (std::int64_t b = 1; b <= top; ++b) {
            const auto oracle = std::count_if(heights.begin(), heights.end(), [&](std::int64_t h) { return h <= b * b; });
            const auto fibred = total_count(spec, HeightBound(b), opts.threads);
            ++r.checks;
            if (oracle != fibred)
                r.fail(spec.name() + " B=" + std::to_string(b) + ": oracle " + std::to_string(oracle) +
                       " != fibration " + std::to_string(fibred));
        }
        // Direct oracle runs at a few bounds agree with the filtered list.
        for (std::int64_t b : {std::int64_t{1}, std::int64_t{7}, top / 2}) {
            const auto direct = count(spec, HeightBound(b), opts.threads);
            const auto filtered = std::count_if(heights.begin(), heights.end(), [&](std::int64_t h) { return h <= b * b; });
            ++r.checks;
            if (direct != filtered)
                r.fail(spec.name() + " B=" + std::to_string(b) + ": direct oracle " + std::to_string(direct) +
                       " != filtered oracle " + std::to_string(filtered));
        }
        r.notes.push_back(spec.name() + ": B=1.." + std::to_string(top) + ", N(V," + std::to_string(top) +
                          ")=" + std::to_string(points.size()));
    }
    return r;
}

SuiteResult verify_fiber_sets(const VerifyOptions& opts) {
    SuiteResult r;
    r.name = "fiber-sets";
    for (const auto& spec : equivalence_surfaces()) {
        const auto points = enumerate_points(spec, HeightBound(kFiberSetBound), opts.threads);
        for (std::int64_t b = 1; b <= kFiberSetBound; ++b) {
            std::map<PrimitivePair, std::set<ProjPoint>> by_fiber;
            for (const auto& p : points)
                if (p.height_sq() <= b * b)
                    by_fiber[fiber_of(p, spec)].insert(p);
            std::set<PrimitivePair> seen;
            for (const auto& y : primitive_pairs(b * b)) {
                std::set<ProjPoint> images;
                for (const auto& tau : fiber_points(spec, y, HeightBound(b))) {
                    const auto t = fiber_param(spec, y, tau);
                    images.insert(ProjPoint::canonical(t));
                }
                ++r.checks;
                seen.insert(y);
                const auto it = by_fiber.find(y);
                const std::set<ProjPoint> empty;
                const auto& expected = it == by_fiber.end() ? empty : it->second;
                if (images != expected) {
                    std::string detail = spec.name() + " B=" + std::to_string(b) + " y=" + describe(y) + ": " +
                                         std::to_string(images.size()) + " parametrised vs " +
                                         std::to_string(expected.size()) + " oracle points";
                    for (const auto& p : images)
                        if (!expected.count(p)) {
                            detail += "; extra " + describe(p.coords());
                            break;
                        }
                    for (const auto& p : expected)
                        if (!images.count(p)) {
                            detail += "; missing " + describe(p.coords());
                            break;
                        }
                    r.fail(detail);
                }
            }
            for (const auto& [y, pts] : by_fiber) {
                ++r.checks;
                if (!seen.count(y))
                    r.fail(spec.name() + " B=" + std::to_string(b) + ": oracle point on unexpected fibre " + describe(y));
            }
        }
    }
    r.notes.push_back("B=1.." + std::to_string(kFiberSetBound) + " on " +
                      std::to_string(equivalence_surfaces().size()) + " surfaces");
    return r;
}

SuiteResult verify_bridge(const VerifyOptions&) {
    SuiteResult r;
    r.name = "bridge";
    for (auto a : verify_cayley_parameters()) {
        const auto spec = SurfaceSpec::cayley(a);
        for_each_primitive_pair(kBridgeRadiusSq, [&](const PrimitivePair& y) {
            if (y.mu == 0)
                return;
            const FiberData fd = fiber_data(spec, y);
            const BigInt d = fd.d;
            const BigInt m2 = BigInt(y.mu) * y.mu, l2 = BigInt(y.lambda) * y.lambda;
            const BigInt mixed = m2 + a * l2;
            ++r.checks;
            if (d * d * fd.g != l2 * m2 + mixed * mixed)
                r.fail("d^2 g identity fails for a=" + std::to_string(a) + " y=" + describe(y));
            const BigInt g_ac = gcd(a, y.mu);
            if (g_ac * g_ac * (BigInt(fd.norm) * fd.g) != f_cayley(a, y.mu, y.lambda))
                r.fail("bridge identity fails for a=" + std::to_string(a) + " y=" + describe(y));
        });
    }
    r.notes.push_back("all primitive (mu,lambda), mu>=1, mu^2+lambda^2<=" + std::to_string(kBridgeRadiusSq));
    return r;
}

SuiteResult verify_one_point_window(const VerifyOptions&) {
    SuiteResult r;
    r.name = "one-point-window";
    std::int64_t windows = 0;
    for (auto a : verify_cayley_parameters()) {
        const auto spec = SurfaceSpec::cayley(a);
        for (std::int64_t b = 1; b <= kWindowBound; ++b) {
            const HeightBound bound(b);
            for (const auto& y : primitive_pairs(bound.b_sq)) {
                const auto fc = fiber_count(spec, y, bound);
                ++r.checks;
                if (fc.count < 1)
                    r.fail("empty fibre a=" + std::to_string(a) + " B=" + std::to_string(b) + " y=" + describe(y));
                if (y.mu == 0)
                    continue;
                const FiberData fd = fiber_data(spec, y);
                if (BigInt(bound.b_sq) < fd.norm + fd.g) {
                    ++windows;
                    if (fc.count != 1)
                        r.fail("window fibre with count " + std::to_string(fc.count) + ": a=" + std::to_string(a) +
                               " B=" + std::to_string(b) + " y=" + describe(y));
                }
            }
        }
    }
    r.notes.push_back(std::to_string(windows) + " (a, B, y) in the one-point window, B<=" + std::to_string(kWindowBound));
    return r;
}

SuiteResult verify_identities(const VerifyOptions&) {
    SuiteResult r;
    r.name = "identities";

    // Coordinate change taking t0t1t2 + t3(t0^2 + t1^2) to 4(t0^2t3 + t1^2t2).
    const CubicForm split(4, {{1, {0, 1, 2}}, {1, {0, 0, 3}}, {1, {1, 1, 3}}});
    const auto change = LinearChange::integral({{1, 1, 0, 0}, {1, -1, 0, 0}, {0, 0, -2, 2}, {0, 0, 1, 1}});
    const CubicForm expected(4, {{4, {0, 0, 3}}, {4, {1, 1, 2}}});
    ++r.checks;
    if (substitute(split, change) != expected)
        r.fail("substitution gives " + to_string(substitute(split, change)) + ", expected " + to_string(expected));

    Draw draw(kVerifySeed);
    const CubicForm normal = threefold_normal_form();
    const CubicForm counting = surface_form(SurfaceSpec::threefold());
    const LinearChange swap = threefold_swap();
    auto check_aut = [&](const AutParams& params, const std::string& label) {
        const LinearChange aut = aut_matrix(params);
        const auto s = is_proportional(substitute(normal, aut), normal);
        const auto s_counting = is_proportional(substitute(counting, compose(swap, compose(aut, swap))), counting);
        ++r.checks;
        if (!s || *s == 0 || !s_counting || *s_counting != *s)
            r.fail(label + ": F o A is not a nonzero multiple of F");
    };
    for (int i = 0; i < 100; ++i) {
        AutCaseOne p;
        do {
            p = {draw.rational(5), draw.rational(5), draw.rational(5), draw.rational(5), draw.rational(5), draw.rational(5)};
        } while (p.alpha * p.delta - p.gamma == 0 || p.u4 == 0);
        check_aut(p, "case 1 draw " + std::to_string(i));
    }
    for (int i = 0; i < 100; ++i) {
        AutCaseTwo p;
        do {
            p = {draw.rational(5), draw.rational(5), draw.rational(5), draw.rational(5), draw.rational(5)};
        } while (p.delta == 0 || p.w4 == 0);
        check_aut(p, "case 2 draw " + std::to_string(i));
    }

    for (int i = 0; i < 1000; ++i) {
        std::array<std::int64_t, 2> ratio{};
        std::array<std::int64_t, 3> x{};
        do
            ratio = {draw.uniform(-50, 50), draw.uniform(-50, 50)};
        while (ratio[0] == 0 && ratio[1] == 0);
        do
            x = {draw.uniform(-50, 50), draw.uniform(-50, 50), draw.uniform(-50, 50)};
        while (x[0] == 0 && x[1] == 0 && x[2] == 0);
        const auto p = scroll_project(ratio, x);
        const auto lifted = scroll_lift(ratio, x);
        const std::array<std::int64_t, 5> swapped{p[0], p[1], p[2], p[4], p[3]};
        const bool on_line = p[0] == 0 && p[1] == 0;
        ++r.checks;
        if (evaluate(normal, p) != 0 || evaluate(counting, swapped) != 0 || !scroll_rank_check(lifted) ||
            on_line != (x[0] == 0)) {
            r.fail("scroll point from (" + std::to_string(ratio[0]) + ":" + std::to_string(ratio[1]) + ") x " +
                   describe({x[0], x[1], x[2]}));
        }
    }
    r.notes.push_back("substitution identity, 200 automorphisms, 1000 scroll points (seed " +
                      std::to_string(kVerifySeed) + ")");
    return r;
}

SuiteResult verify_tamagawa(const VerifyOptions&) {
    SuiteResult r;
    r.name = "tamagawa";
    Draw draw(kVerifySeed);
    long double worst = 0;
    int drawn = 0;
    while (drawn < 20) {
        const std::int64_t mu = draw.uniform(0, 100), lambda = draw.uniform(-100, 100);
        if ((mu == 0 && lambda == 0) || mu * mu + lambda * lambda > 10000 || gcd(mu, lambda) != 1)
            continue;
        const auto y = PrimitivePair::canonical(mu, lambda);
        ++drawn;
        ++r.checks;
        const long double closed = omega_infinity_closed(y.mu, y.lambda);
        const long double quad = omega_infinity_quadrature(y.mu, y.lambda, 1e-12L).value;
        worst = std::max(worst, std::fabs(quad - closed));
        if (!(std::fabs(quad - closed) < 1e-9L))
            r.fail("quadrature vs closed form at y=" + describe(y) + ": " + format_real(quad) + " vs " +
                   format_real(closed));
    }
    r.notes.push_back("max |quadrature - closed| over 20 pairs: " + format_real(worst));

    const long double product = euler_product(10000);
    const long double gap = std::fabs(product * zeta3() - 1);
    ++r.checks;
    if (!(gap < 1e-7L))
        r.fail("euler_product(10^4) * zeta(3) - 1 = " + format_real(gap));
    r.notes.push_back("|euler_product(10^4)*zeta(3) - 1| = " + format_real(gap));

    const auto peyre = peyre_consistency(100);
    r.checks += peyre.fibers_checked;
    if (!peyre.passed())
        r.fail("peyre consistency fails at y=" + describe(peyre.failures.front()));
    r.notes.push_back("gamma*tau_L identity exact on " + std::to_string(peyre.fibers_checked) +
                      " fibres with mu^2+lambda^2<=10^4");
    return r;
}

SuiteResult verify_convergence(const VerifyOptions& opts) {
    SuiteResult r;
    r.name = "convergence";
    r.soft = true;
    auto run = [&](const SurfaceSpec& spec, const LeadingConstant& constant, const std::vector<std::int64_t>& bounds,
                   long double ceiling) {
        long double previous = INFINITY;
        long double last = 0;
        bool decreasing = true;
        for (auto b : bounds) {
            const auto report = compare(spec, b, constant, opts.threads);
            r.notes.push_back(spec.name() + " B=" + std::to_string(b) + " count=" + std::to_string(report.exact_count) +
                              " predicted=" + format_real(report.predicted) +
                              " rel_error=" + format_real(report.rel_error));
            ++r.checks;
            decreasing = decreasing && report.rel_error < previous;
            previous = last = report.rel_error;
        }
        if (!decreasing)
            r.fail(spec.name() + ": rel_error not strictly decreasing");
        if (!(last < ceiling))
            r.fail(spec.name() + ": rel_error " + format_real(last) + " at B=" + std::to_string(bounds.back()) +
                   " not below " + format_real(ceiling));
    };
    run(SurfaceSpec::threefold(), leading_constant_threefold(10000, opts.threads), {100, 200, 400, 800}, 0.05L);
    run(SurfaceSpec::cayley(2), leading_constant_cayley(2, 2000, opts.threads), {500, 1000, 2000}, 0.10L);
    return r;
}

SuiteResult verify_series_tail(const VerifyOptions& opts) {
    SuiteResult r;
    r.name = "series-tail";
    auto check = [&](const std::string& label, auto&& series) {
        for (std::int64_t radius = 10; radius <= 640; radius *= 2) {
            const auto small = series(radius);
            const auto large = series(2 * radius);
            const long double diff = std::fabs(large.partial_sum - small.partial_sum);
            ++r.checks;
            r.notes.push_back(label + " R=" + std::to_string(radius) + " |S(2R)-S(R)|=" + format_real(diff) +
                              " tail=" + format_real(small.tail_bound));
            if (!(diff <= small.tail_bound))
                r.fail(label + " R=" + std::to_string(radius) + ": |S(2R)-S(R)| = " + format_real(diff) +
                       " exceeds tail bound " + format_real(small.tail_bound));
        }
    };
    check("threefold", [&](std::int64_t radius) { return series_threefold(radius, opts.threads); });
    for (std::int64_t a : {2, -5})
        check("cayley(a=" + std::to_string(a) + ")", [&](std::int64_t radius) { return series_cayley(a, radius, opts.threads); });
    return r;
}

const std::vector<Suite>& verify_suites() {
    static const std::vector<Suite> suites{
        {"oracle-equivalence", 1, "fibration count equals brute-force count", verify_oracle_equivalence},
        {"fiber-sets", 2, "parametrised fibres equal oracle points fibre by fibre", verify_fiber_sets},
        {"bridge", 3, "gcd(a,mu)^2 (mu^2+lambda^2) g = f(mu,lambda)", verify_bridge},
        {"one-point-window", 4, "fibres in the one-point window hold one point", verify_one_point_window},
        {"identities", 5, "substitution, automorphism and scroll identities", verify_identities},
        {"tamagawa", 6, "local densities, quadrature and the gamma = 1/3 identity", verify_tamagawa},
        {"convergence", 7, "relative error of the asymptotic formula (soft)", verify_convergence},
        {"series-tail", 8, "Cauchy differences of the series stay under the tail bound", verify_series_tail},
    };
    return suites;
}

}  // namespace hypercubic
