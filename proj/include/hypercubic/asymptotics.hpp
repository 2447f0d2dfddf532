#pragma once

#include <cstdint>
#include <string>

#include "hypercubic/exactarith.hpp"
#include "hypercubic/forms.hpp"

namespace hypercubic {

// (lambda^2 + mu^2) * (lambda^2*mu^2 + (mu^2 + a*lambda^2)^2); mu != 0.
BigInt f_cayley(std::int64_t a, std::int64_t mu, std::int64_t lambda);

// (lambda^2 + mu^2) * (lambda^2*mu^2 + mu^4 + lambda^4).
BigInt f_threefold(std::int64_t mu, std::int64_t lambda);

/// Partial sum of a leading-constant series over primitive pairs in the disk
/// mu^2 + lambda^2 <= radius^2, together with an upper bound on what the
/// omitted pairs contribute.
struct SeriesTruncation {
    std::int64_t radius = 0;
    long double partial_sum = 0;
    long double tail_bound = 0;
    std::int64_t terms_used = 0;  // signed pairs (both (mu, lambda) and (-mu, -lambda))
};

// Largest radius accepted by the series routines.
inline constexpr std::int64_t kMaxSeriesRadius = 100000;

// sum over primitive (mu, lambda), mu != 0, of gcd(a, mu) / sqrt(f_cayley).
SeriesTruncation series_cayley(std::int64_t a, std::int64_t radius, unsigned threads = 1);

// sum over all primitive (mu, lambda) of 1 / sqrt(f_threefold).
SeriesTruncation series_threefold(std::int64_t radius, unsigned threads = 1);

long double cayley_tail_bound(std::int64_t a, std::int64_t radius);
long double threefold_tail_bound(std::int64_t radius);

// min over real (mu, lambda) != 0 of (lambda^2*mu^2 + (mu^2 + a*lambda^2)^2) / (mu^2 + lambda^2)^2.
long double cayley_quartic_floor(std::int64_t a);

struct LeadingConstant {
    long double value = 0;
    long double uncertainty = 0;  // propagated series tail
    SeriesTruncation series;
};

// pi/(4 zeta(2)) * (4 + series) = 3/(2 pi) * (4 + series).
LeadingConstant leading_constant_cayley(std::int64_t a, std::int64_t radius, unsigned threads = 1);
LeadingConstant leading_constant_cayley(const SeriesTruncation& series);

// pi/(3 zeta(3)) * series.
LeadingConstant leading_constant_threefold(std::int64_t radius, unsigned threads = 1);
LeadingConstant leading_constant_threefold(const SeriesTruncation& series);

// zeta(3) by Euler-Maclaurin with N = 10^4 terms.
long double zeta3();
long double zeta3_euler_maclaurin(std::int64_t terms);
long double pi_ld();

enum class CountMethod { Fiber, Brute };
std::string to_string(CountMethod m);

struct CountReport {
    SurfaceSpec surface;
    std::int64_t bound = 0;
    std::int64_t exact_count = 0;
    long double predicted = 0;
    long double rel_error = 0;
    CountMethod method = CountMethod::Fiber;
};

// Exact count from the fibration against constant * B^k (k = 2 for the
// surfaces, 3 for the threefold).
CountReport compare(const SurfaceSpec& spec, std::int64_t bound, std::int64_t radius, unsigned threads = 1);
CountReport compare(const SurfaceSpec& spec, std::int64_t bound, const LeadingConstant& constant,
                    unsigned threads = 1);

// Contribution of the fibre over y to the threefold constant, written as
// coefficient * (pi / zeta(3)) / sqrt(radicand): 1/3 from pi/(3 zeta(3)) and
// a factor 2 for the two sign representatives (mu, lambda), (-mu, -lambda).
struct ScaledRoot {
    Rational coefficient;
    BigInt radicand;
};
ScaledRoot threefold_fiber_share(std::int64_t mu, std::int64_t lambda);

}  // namespace hypercubic
