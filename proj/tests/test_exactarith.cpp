#include <doctest.h>

#include <limits>
#include <numeric>
#include <random>

#include "hypercubic/exactarith.hpp"

using namespace hypercubic;

namespace {

bool trial_squarefree(std::int64_t n) {
    n = n < 0 ? -n : n;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0)
            return false;
    return true;
}

}  // namespace

TEST_CASE("isqrt examples") {
    CHECK(isqrt(std::int64_t{0}) == 0);
    CHECK(isqrt(std::int64_t{15}) == 3);
    CHECK(isqrt(std::int64_t{16}) == 4);
    CHECK_THROWS_AS(isqrt(std::int64_t{-1}), DomainError);
    CHECK(isqrt(BigInt(16)) == 4);
    CHECK_THROWS_AS(isqrt(BigInt(-5)), DomainError);
}

TEST_CASE("isqrt brackets its input") {
    std::mt19937_64 rng(7);
    std::vector<std::int64_t> inputs{1, 2, 3, 24, 25, 26, std::numeric_limits<std::int64_t>::max()};
    for (std::int64_t k : {3037000499LL, 3037000498LL, 1LL << 31})
        for (std::int64_t e : {-1, 0, 1})
            inputs.push_back(k * k + e);
    for (int i = 0; i < 2000; ++i)
        inputs.push_back(static_cast<std::int64_t>(rng() >> (1 + i % 62)));
    for (auto n : inputs) {
        const std::int64_t r = isqrt(n);
        const __int128 r2 = static_cast<__int128>(r) * r, next = static_cast<__int128>(r + 1) * (r + 1);
        CHECK(r2 <= n);
        CHECK(next > n);
        CHECK(isqrt(BigInt(n)) == r);
    }
    const BigInt big = BigInt(std::numeric_limits<std::int64_t>::max()) * 1000;
    const BigInt r = isqrt(big);
    CHECK(r * r <= big);
    CHECK((r + 1) * (r + 1) > big);
}

TEST_CASE("moebius examples and divisor sums") {
    CHECK(moebius(1) == 1);
    CHECK(moebius(12) == 0);
    CHECK(moebius(30) == -1);
    CHECK_THROWS_AS(moebius(0), DomainError);
    CHECK_THROWS_AS(moebius(-3), DomainError);
    for (std::int64_t n = 1; n <= 600; ++n) {
        int sum = 0;
        for (std::int64_t d = 1; d <= n; ++d)
            if (n % d == 0)
                sum += moebius(d);
        CHECK(sum == (n == 1 ? 1 : 0));
    }
}

TEST_CASE("is_squarefree") {
    CHECK(is_squarefree(-6));
    CHECK(is_squarefree(1));
    CHECK_FALSE(is_squarefree(12));
    CHECK_THROWS_AS(is_squarefree(0), DomainError);
    for (std::int64_t n = -300; n <= 300; ++n) {
        if (n == 0)
            continue;
        CHECK(is_squarefree(n) == trial_squarefree(n));
        CHECK(is_squarefree(n) == (moebius(n < 0 ? -n : n) != 0));
    }
}

TEST_CASE("gcd_decompose") {
    auto s = gcd_decompose(6, 4);
    CHECK(s.d == 2);
    CHECK(s.mu1 == 2);
    CHECK(s.a1 == 3);
    s = gcd_decompose(2, 1);
    CHECK(s.d == 1);
    CHECK(s.mu1 == 1);
    CHECK(s.a1 == 2);
    s = gcd_decompose(-5, 10);
    CHECK(s.d == 5);
    CHECK(s.mu1 == 2);
    CHECK(s.a1 == -1);
    CHECK_THROWS_AS(gcd_decompose(0, 3), DomainError);
    CHECK_THROWS_AS(gcd_decompose(3, 0), DomainError);
    for (std::int64_t a = -40; a <= 40; ++a)
        for (std::int64_t mu = -40; mu <= 40; ++mu) {
            if (a == 0 || mu == 0)
                continue;
            const auto g = gcd_decompose(a, mu);
            CHECK(g.mu1 * g.d == mu);
            CHECK(g.a1 * g.d == a);
            CHECK(g.d == std::gcd(a, mu));
        }
}

TEST_CASE("gcd and floor division") {
    for (std::int64_t a = -30; a <= 30; ++a)
        for (std::int64_t b = -30; b <= 30; ++b)
            CHECK(gcd(a, b) == std::gcd(a, b));
    for (std::int64_t a = -50; a <= 50; ++a)
        for (std::int64_t b = 1; b <= 7; ++b) {
            const std::int64_t f = floor_div(a, b), c = ceil_div(a, b);
            CHECK(f * b <= a);
            CHECK((f + 1) * b > a);
            CHECK(c * b >= a);
            CHECK((c - 1) * b < a);
        }
}

TEST_CASE("PrimitivePair canonical representative") {
    CHECK(PrimitivePair::canonical(2, 4) == PrimitivePair{1, 2});
    CHECK(PrimitivePair::canonical(0, 3) == PrimitivePair{0, 1});
    CHECK(PrimitivePair::canonical(0, -3) == PrimitivePair{0, 1});
    CHECK(PrimitivePair::canonical(-3, 6) == PrimitivePair{1, -2});
    CHECK_THROWS_AS(PrimitivePair::canonical(0, 0), DomainError);
}

TEST_CASE("primitive_pairs examples") {
    CHECK(primitive_pairs(0).empty());
    CHECK(primitive_pairs(1) == std::vector<PrimitivePair>{{0, 1}, {1, 0}});
    CHECK(primitive_pairs(2) == std::vector<PrimitivePair>{{0, 1}, {1, -1}, {1, 0}, {1, 1}});
}

TEST_CASE("primitive_pairs is half of the primitive vectors in the disk") {
    for (std::int64_t r : {1, 2, 3, 5, 8, 13, 21, 34, 50, 100, 200}) {
        std::int64_t all = 0;
        for (std::int64_t m = -r; m <= r; ++m)
            for (std::int64_t l = -r; l <= r; ++l)
                if (m * m + l * l <= r * r && std::gcd(m, l) == 1)
                    ++all;
        const auto pairs = primitive_pairs(r * r);
        CHECK(2 * static_cast<std::int64_t>(pairs.size()) == all);
        CHECK(std::is_sorted(pairs.begin(), pairs.end()));
        for (const auto& y : pairs) {
            CHECK(std::gcd(y.mu, y.lambda) == 1);
            CHECK((y.mu >= 1 || (y.mu == 0 && y.lambda == 1)));
            CHECK(y.norm() <= r * r);
        }
        std::vector<PrimitivePair> visited;
        for_each_primitive_pair(r * r, [&](const PrimitivePair& y) { visited.push_back(y); });
        CHECK(visited == pairs);
    }
    const auto column = primitive_column(4, 100);
    CHECK(column == std::vector<PrimitivePair>{{4, -9}, {4, -7}, {4, -5}, {4, -3}, {4, -1},
                                               {4, 1}, {4, 3}, {4, 5}, {4, 7}, {4, 9}});
}

TEST_CASE("primes and the factor sieve") {
    const auto primes = primes_up_to(100);
    CHECK(primes.size() == 25);
    CHECK(primes.front() == 2);
    CHECK(primes.back() == 97);
    for (std::int64_t n = -5; n <= 500; ++n) {
        bool prime = n >= 2;
        for (std::int64_t d = 2; d * d <= n && prime; ++d)
            prime = n % d != 0;
        CHECK(is_prime(n) == prime);
    }
    const FactorSieve sieve(5000);
    std::vector<SquarefreeDivisor> divisors;
    for (std::int64_t n = 1; n <= 5000; n += 7) {
        sieve.squarefree_divisors(n, divisors);
        REQUIRE(!divisors.empty());
        CHECK(divisors.front().d == 1);
        CHECK(divisors.front().moebius == 1);
        std::vector<std::int64_t> expected, got;
        for (std::int64_t d = 1; d <= n; ++d)
            if (n % d == 0 && moebius(d) != 0)
                expected.push_back(d);
        for (const auto& sd : divisors) {
            got.push_back(sd.d);
            CHECK(sd.moebius == moebius(sd.d));
        }
        std::sort(got.begin(), got.end());
        CHECK(got == expected);
    }
}

TEST_CASE("coprime_in agrees with direct gcd counting") {
    const FactorSieve sieve(1000);
    std::vector<SquarefreeDivisor> divisors;
    std::mt19937_64 rng(11);
    for (int i = 0; i < 400; ++i) {
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 1000);
        const std::int64_t other = static_cast<std::int64_t>(rng() % 60);
        const std::int64_t lo = static_cast<std::int64_t>(rng() % 200) - 100;
        const std::int64_t hi = lo + static_cast<std::int64_t>(rng() % 200) - 20;
        sieve.squarefree_divisors(n, divisors);
        const std::int64_t g = std::gcd(n, other);
        std::int64_t expected = 0;
        for (std::int64_t x = lo; x <= hi; ++x)
            if (std::gcd(x, g) == 1)
                ++expected;
        CHECK(coprime_in(lo, hi, divisors, other) == expected);
    }
    CHECK(multiples_in(-10, 10, 3) == 7);
    CHECK(multiples_in(5, 4, 3) == 0);
}
