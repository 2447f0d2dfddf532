#include "hypercubic/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hypercubic/fibration.hpp"
#include "hypercubic/parallel.hpp"

namespace hypercubic {

namespace {

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
    long double sum = 0;
    long double carry = 0;

    void add(long double x) {
        long double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }
    long double value() const { return sum + carry; }
};

void check_radius(std::int64_t radius) {
    if (radius < 1 || radius > kMaxSeriesRadius)
        throw DomainError("series radius must be in [1, " + std::to_string(kMaxSeriesRadius) + "]");
}

long double to_ld(const BigInt& v) { return v.convert_to<long double>(); }

// Sums term(mu, lambda) over canonical pairs of the disk, one column of
// fixed mu per slot, then the column sums in ascending mu. The result does
// not depend on the thread count.
template <class Term>
SeriesTruncation sum_disk(std::int64_t radius, std::int64_t first_mu, unsigned threads, Term term) {
    const std::int64_t r2 = radius * radius;
    const auto columns = static_cast<std::size_t>(radius + 1);
    std::vector<long double> column_sum(columns, 0);
    std::vector<std::int64_t> column_terms(columns, 0);
    parallel_for(columns, threads, [&](std::size_t i) {
        const auto mu = static_cast<std::int64_t>(i);
        if (mu < first_mu)
            return;
        CompensatedSum acc;
        std::int64_t n = 0;
        for (const auto& y : primitive_column(mu, r2)) {
            acc.add(term(y.mu, y.lambda));
            ++n;
        }
        column_sum[i] = acc.value();
        column_terms[i] = n;
    });
    CompensatedSum total;
    SeriesTruncation out;
    out.radius = radius;
    for (std::size_t i = 0; i < columns; ++i) {
        total.add(column_sum[i]);
        out.terms_used += 2 * column_terms[i];
    }
    // Each canonical pair stands for (mu, lambda) and (-mu, -lambda).
    out.partial_sum = 2 * total.value();
    return out;
}

}  // namespace

long double pi_ld() { return std::numbers::pi_v<long double>; }

BigInt f_cayley(std::int64_t a, std::int64_t mu, std::int64_t lambda) {
    if (mu == 0)
        throw DomainError("f_cayley: mu must be nonzero");
    const BigInt m2 = BigInt(mu) * mu;
    const BigInt l2 = BigInt(lambda) * lambda;
    const BigInt mixed = m2 + a * l2;
    return (l2 + m2) * (l2 * m2 + mixed * mixed);
}

BigInt f_threefold(std::int64_t mu, std::int64_t lambda) {
    if (mu == 0 && lambda == 0)
        throw DomainError("f_threefold: (0, 0) is not admissible");
    const BigInt m2 = BigInt(mu) * mu;
    const BigInt l2 = BigInt(lambda) * lambda;
    return (l2 + m2) * (l2 * m2 + m2 * m2 + l2 * l2);
}

long double cayley_quartic_floor(std::int64_t a) {
    // With x = mu^2, y = lambda^2, x + y = 1 the quotient is
    // h(y) = (1 - y)*y + (1 - (1 - a)*y)^2, a convex quadratic in y.
    // For a >= 1, (x + a*y)^2 >= (x + y)^2 already gives 1 (attained at y = 0).
    if (a > 0)
        return 1;
    const long double b = -static_cast<long double>(a);
    long double y = (2 * b + 1) / (2 * b * (b + 2));
    y = std::clamp(y, 0.0L, 1.0L);
    const long double lin = 1 - (1 + b) * y;
    return (1 - y) * y + lin * lin;
}

// Lattice tail: sum over v in Z^2, |v| > R of |v|^-3 is at most about
// 2*pi/R (compare with the integral over the complement of the disk); the
// constants below carry a factor 2 on top of that.
//
// Threefold: mu^4 + mu^2*lambda^2 + lambda^4 >= (mu^2 + lambda^2)^2 / 2 (in fact
// 3/4), so each term is at most sqrt(2) / r^3, r^2 = mu^2 + lambda^2.
long double threefold_tail_bound(std::int64_t radius) {
    check_radius(radius);
    return 2 * 2 * pi_ld() * std::sqrt(2.0L) / static_cast<long double>(radius);
}

// Cayley: gcd(a, mu) <= |a| and lambda^2*mu^2 + (mu^2 + a*lambda^2)^2 >=
// kappa(a) * r^4, so each term is at most |a| / (sqrt(kappa) * r^3).
// Written as c1*|a|/R + c2*|a|/R with c1 = 4*pi for the generic directions
// and c2 = 4*pi*(1/sqrt(kappa) - 1) covering the directions
// mu = +-sqrt(-a)*lambda where mu^2 + a*lambda^2 is small (a < 0 only; kappa = 1 for a > 0).
long double cayley_tail_bound(std::int64_t a, std::int64_t radius) {
    check_radius(radius);
    const long double c1 = 4 * pi_ld();
    const long double c2 = c1 * (1 / std::sqrt(cayley_quartic_floor(a)) - 1);
    const long double abs_a = std::fabs(static_cast<long double>(a));
    return (c1 + c2) * abs_a / static_cast<long double>(radius);
}

SeriesTruncation series_cayley(std::int64_t a, std::int64_t radius, unsigned threads) {
    if (a == 0 || !is_squarefree(a))
        throw DomainError("a must be a nonzero squarefree integer");
    check_radius(radius);
    auto out = sum_disk(radius, 1, threads, [a](std::int64_t mu, std::int64_t lambda) {
        return static_cast<long double>(gcd(a, mu)) / std::sqrt(to_ld(f_cayley(a, mu, lambda)));
    });
    out.tail_bound = cayley_tail_bound(a, radius);
    return out;
}

SeriesTruncation series_threefold(std::int64_t radius, unsigned threads) {
    check_radius(radius);
    auto out = sum_disk(radius, 0, threads, [](std::int64_t mu, std::int64_t lambda) {
        return 1 / std::sqrt(to_ld(f_threefold(mu, lambda)));
    });
    out.tail_bound = threefold_tail_bound(radius);
    return out;
}

LeadingConstant leading_constant_cayley(const SeriesTruncation& series) {
    // pi / (4 zeta(2)) with zeta(2) = pi^2 / 6.
    const long double factor = 3 / (2 * pi_ld());
    return {factor * (4 + series.partial_sum), factor * series.tail_bound, series};
}

LeadingConstant leading_constant_cayley(std::int64_t a, std::int64_t radius, unsigned threads) {
    return leading_constant_cayley(series_cayley(a, radius, threads));
}

LeadingConstant leading_constant_threefold(const SeriesTruncation& series) {
    const long double factor = pi_ld() / (3 * zeta3());
    return {factor * series.partial_sum, factor * series.tail_bound, series};
}

LeadingConstant leading_constant_threefold(std::int64_t radius, unsigned threads) {
    return leading_constant_threefold(series_threefold(radius, threads));
}

long double zeta3_euler_maclaurin(std::int64_t terms) {
    if (terms < 1)
        throw DomainError("zeta3: need at least one term");
    long double s = 0;
    for (std::int64_t n = terms; n >= 1; --n) {
        const long double x = static_cast<long double>(n);
        s += 1 / (x * x * x);
    }
    const long double N = static_cast<long double>(terms);
    return s + 1 / (2 * N * N) - 1 / (2 * N * N * N) + 1 / (4 * N * N * N * N);
}

long double zeta3() {
    static const long double value = zeta3_euler_maclaurin(10000);
    return value;
}

std::string to_string(CountMethod m) { return m == CountMethod::Fiber ? "fiber" : "brute"; }

CountReport compare(const SurfaceSpec& spec, std::int64_t bound, const LeadingConstant& constant,
                    unsigned threads) {
    const long double b = static_cast<long double>(bound);
    const int exponent = spec.kind() == SurfaceKind::Threefold ? 3 : 2;
    CountReport report{spec, bound, total_count(spec, HeightBound(bound), threads), 0, 0, CountMethod::Fiber};
    report.predicted = constant.value * std::pow(b, exponent);
    report.rel_error = std::fabs(static_cast<long double>(report.exact_count) - report.predicted) / report.predicted;
    return report;
}

CountReport compare(const SurfaceSpec& spec, std::int64_t bound, std::int64_t radius, unsigned threads) {
    switch (spec.kind()) {
    case SurfaceKind::Cayley:
        return compare(spec, bound, leading_constant_cayley(spec.a(), radius, threads), threads);
    case SurfaceKind::Threefold:
        return compare(spec, bound, leading_constant_threefold(radius, threads), threads);
    case SurfaceKind::Catalog:
        break;
    }
    throw DomainError("compare: no asymptotic formula for catalogue surfaces");
}

ScaledRoot threefold_fiber_share(std::int64_t mu, std::int64_t lambda) {
    return {Rational(1, 3) * 2, f_threefold(mu, lambda)};
}

}  // namespace hypercubic
