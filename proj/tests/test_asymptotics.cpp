#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/special_functions/zeta.hpp>

#include "hypercubic/asymptotics.hpp"

using namespace hypercubic;

namespace {

// Direct double loop over the full disk, no symmetry.
long double naive_series(bool cayley, std::int64_t a, std::int64_t r) {
    long double sum = 0;
    for (std::int64_t m = -r; m <= r; ++m)
        for (std::int64_t l = -r; l <= r; ++l) {
            if (m * m + l * l > r * r || std::gcd(m, l) != 1)
                continue;
            const long double m2 = m * m, l2 = l * l;
            if (cayley) {
                if (m == 0)
                    continue;
                const long double q = m2 + a * l2;
                sum += std::gcd(a, m) / std::sqrt((l2 + m2) * (l2 * m2 + q * q));
            } else {
                sum += 1 / std::sqrt((l2 + m2) * (l2 * m2 + m2 * m2 + l2 * l2));
            }
        }
    return sum;
}

}  // namespace

TEST_CASE("f examples") {
    CHECK(f_cayley(2, 1, 1) == 20);
    CHECK(f_cayley(2, 1, 0) == 1);
    CHECK(f_cayley(-1, 1, 1) == 2);
    CHECK_THROWS_AS(f_cayley(2, 0, 1), DomainError);
    CHECK(f_threefold(1, 0) == 1);
    CHECK(f_threefold(1, 1) == 6);
    CHECK(f_threefold(1, 2) == 105);
    CHECK(f_threefold(0, 1) == 1);
}

TEST_CASE("f is at least one on primitive pairs") {
    for (std::int64_t a : {1, -1, 2, -2, -5, -30})
        for (const auto& y : primitive_pairs(900)) {
            if (y.mu != 0)
                CHECK(f_cayley(a, y.mu, y.lambda) >= 1);
            CHECK(f_threefold(y.mu, y.lambda) >= 1);
        }
}

TEST_CASE("series examples") {
    CHECK(series_cayley(2, 1).partial_sum == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(series_cayley(1, 1).partial_sum == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(series_cayley(2, 1).terms_used == 2);
    // R = 2 holds the same primitive pairs as R^2 = 2, R = 3 the same as R^2 = 5.
    CHECK(static_cast<double>(series_cayley(2, 2).partial_sum) == doctest::Approx(2.894427191).epsilon(1e-9));
    CHECK(series_threefold(1).partial_sum == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(series_threefold(1).terms_used == 4);
    CHECK(static_cast<double>(series_threefold(2).partial_sum) == doctest::Approx(5.632993162).epsilon(1e-9));
    CHECK(static_cast<double>(series_threefold(3).partial_sum) == doctest::Approx(6.413715).epsilon(1e-6));
    CHECK_THROWS_AS(series_cayley(4, 10), DomainError);
    CHECK_THROWS_AS(series_threefold(0), DomainError);
    CHECK_THROWS_AS(series_threefold(kMaxSeriesRadius + 1), DomainError);
}

TEST_CASE("series agree with a naive double loop") {
    for (std::int64_t r : {1, 7, 40, 150}) {
        CHECK(static_cast<double>(series_threefold(r).partial_sum) ==
              doctest::Approx(static_cast<double>(naive_series(false, 0, r))).epsilon(1e-13));
        for (std::int64_t a : {1, 2, -5, 6, -30})
            CHECK(static_cast<double>(series_cayley(a, r).partial_sum) ==
                  doctest::Approx(static_cast<double>(naive_series(true, a, r))).epsilon(1e-13));
    }
}

TEST_CASE("series are monotone and the tail bound shrinks") {
    long double previous = 0, previous_tail = INFINITY;
    for (std::int64_t r = 1; r <= 64; r *= 2) {
        const auto s = series_cayley(-2, r);
        CHECK(s.partial_sum >= previous);
        CHECK(s.tail_bound >= 0);
        CHECK(s.tail_bound < previous_tail);
        previous = s.partial_sum;
        previous_tail = s.tail_bound;
    }
    CHECK(threefold_tail_bound(10) == doctest::Approx(4 * std::numbers::pi * std::sqrt(2.0) / 10));
    CHECK(cayley_tail_bound(2, 10) == doctest::Approx(4 * std::numbers::pi * 2 / 10));
}

TEST_CASE("tail bounds dominate observed tails") {
    for (std::int64_t a : {-1, -2, -5, -30, 3, 10}) {
        const auto far = series_cayley(a, 2000).partial_sum;
        for (std::int64_t r : {5, 20, 100, 400})
            CHECK(far - series_cayley(a, r).partial_sum <= cayley_tail_bound(a, r));
    }
    const auto far = series_threefold(2000).partial_sum;
    for (std::int64_t r : {5, 20, 100, 400})
        CHECK(far - series_threefold(r).partial_sum <= threefold_tail_bound(r));
}

TEST_CASE("quartic floor matches a dense angular scan") {
    for (std::int64_t a : {1, 2, 10, -1, -2, -5, -30}) {
        long double best = INFINITY;
        const int steps = 400000;
        for (int i = 0; i <= steps; ++i) {
            const long double phi = std::numbers::pi_v<long double> * i / steps;
            const long double m = std::cos(phi), l = std::sin(phi);
            const long double q = m * m + a * l * l;
            best = std::min(best, l * l * m * m + q * q);
        }
        const long double floor = cayley_quartic_floor(a);
        CHECK(floor <= best + 1e-15L);
        CHECK(static_cast<double>(floor) == doctest::Approx(static_cast<double>(best)).epsilon(1e-6));
    }
}

TEST_CASE("zeta(3)") {
    const long double z = zeta3();
    CHECK(std::fabs(z - 1.202056903159594285399738L) < 1e-15L);
    CHECK(std::fabs(z - boost::math::zeta(3.0L)) < 1e-15L);
    CHECK(std::fabs(zeta3_euler_maclaurin(10000) - zeta3_euler_maclaurin(20000)) < 1e-13L);
    CHECK(z > 1.2020L);
    CHECK(z < 1.2021L);
}

TEST_CASE("leading constants") {
    const auto c = leading_constant_cayley(2, 1);
    CHECK(static_cast<double>(c.value) == doctest::Approx(9 / std::numbers::pi).epsilon(1e-14));
    CHECK(c.uncertainty == doctest::Approx(3 / (2 * std::numbers::pi_v<long double>) * c.series.tail_bound));
    const long double unit = std::numbers::pi_v<long double> / (3 * boost::math::zeta(3.0L));
    CHECK(leading_constant_threefold(1).value == doctest::Approx(4 * unit).epsilon(1e-14));
    CHECK(leading_constant_threefold(2).value == doctest::Approx(unit * (4 + 4 / std::sqrt(6.0L))).epsilon(1e-14));
    CHECK(static_cast<double>(leading_constant_threefold(1).value) == doctest::Approx(3.4846854536).epsilon(1e-10));
    CHECK(static_cast<double>(leading_constant_threefold(2).value) == doctest::Approx(4.9073023328).epsilon(1e-10));
    long double previous = 0;
    for (std::int64_t r : {1, 2, 4, 8, 16}) {
        const auto t = leading_constant_threefold(r);
        CHECK(t.value >= previous);
        previous = t.value;
    }
}

TEST_CASE("series do not depend on the thread count") {
    const auto one = series_threefold(700, 1);
    for (unsigned threads : {2u, 5u}) {
        const auto many = series_threefold(700, threads);
        CHECK(many.partial_sum == one.partial_sum);
        CHECK(many.terms_used == one.terms_used);
        CHECK(series_cayley(-5, 700, threads).partial_sum == series_cayley(-5, 700, 1).partial_sum);
    }
}

TEST_CASE("compare") {
    const auto report = compare(SurfaceSpec::threefold(), 1, 200);
    CHECK(report.exact_count == 2);
    CHECK(report.method == CountMethod::Fiber);
    CHECK(report.rel_error == doctest::Approx(std::fabs(2 - report.predicted) / report.predicted));
    CHECK(report.predicted == doctest::Approx(leading_constant_threefold(200).value));
    const auto cayley = compare(SurfaceSpec::cayley(2), 10, 50);
    CHECK(cayley.predicted == doctest::Approx(leading_constant_cayley(2, 50).value * 100));
    CHECK(to_string(CountMethod::Brute) == "brute");
}

TEST_CASE("threefold fibre share") {
    const auto share = threefold_fiber_share(1, 2);
    CHECK(share.coefficient == Rational(2, 3));
    CHECK(share.radicand == 105);
}
