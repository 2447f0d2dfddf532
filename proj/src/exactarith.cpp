#include "hypercubic/exactarith.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace hypercubic {

std::int64_t isqrt(std::int64_t n) {
    if (n < 0)
        throw DomainError("isqrt: negative argument");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    auto sq = [](std::int64_t x) { return static_cast<__int128>(x) * x; };
    while (sq(r) > n)
        --r;
    while (sq(r + 1) <= n)
        ++r;
    return r;
}

BigInt isqrt(const BigInt& n) {
    if (n < 0)
        throw DomainError("isqrt: negative argument");
    if (n < 2)
        return n;
    // A long double estimate is within a few units; Newton from above
    // guarantees convergence regardless.
    auto guess = static_cast<long double>(n);
    BigInt x = static_cast<BigInt>(std::sqrt(guess)) + 2;
    while (true) {
        BigInt y = (x + n / x) / 2;
        if (y >= x)
            break;
        x = y;
    }
    while (x * x > n)
        --x;
    while ((x + 1) * (x + 1) <= n)
        ++x;
    return x;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
    std::uint64_t u = a < 0 ? -static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a);
    std::uint64_t v = b < 0 ? -static_cast<std::uint64_t>(b) : static_cast<std::uint64_t>(b);
    if (u == 0)
        return static_cast<std::int64_t>(v);
    if (v == 0)
        return static_cast<std::int64_t>(u);
    int shift = __builtin_ctzll(u | v);
    u >>= __builtin_ctzll(u);
    do {
        v >>= __builtin_ctzll(v);
        if (u > v)
            std::swap(u, v);
        v -= u;
    } while (v != 0);
    return static_cast<std::int64_t>(u << shift);
}

int moebius(std::int64_t n) {
    if (n <= 0)
        throw DomainError("moebius: argument must be positive");
    int sign = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        n /= p;
        if (n % p == 0)
            return 0;
        sign = -sign;
    }
    if (n > 1)
        sign = -sign;
    return sign;
}

bool is_squarefree(std::int64_t a) {
    if (a == 0)
        throw DomainError("is_squarefree: zero is not admissible");
    if (a == INT64_MIN)
        return false;
    return moebius(std::llabs(a)) != 0;
}

bool is_prime(std::int64_t n) {
    if (n < 2)
        return false;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0)
            return false;
    return true;
}

GcdSplit gcd_decompose(std::int64_t a, std::int64_t mu) {
    if (a == 0 || mu == 0)
        throw DomainError("gcd_decompose: arguments must be nonzero");
    std::int64_t d = gcd(a, mu);
    return {d, mu / d, a / d};
}

PrimitivePair PrimitivePair::canonical(std::int64_t mu, std::int64_t lambda) {
    if (mu == 0 && lambda == 0)
        throw DomainError("PrimitivePair: (0, 0) is not a point of P^1");
    std::int64_t g = gcd(mu, lambda);
    mu /= g;
    lambda /= g;
    if (mu < 0 || (mu == 0 && lambda < 0)) {
        mu = -mu;
        lambda = -lambda;
    }
    return {mu, lambda};
}

std::vector<PrimitivePair> primitive_column(std::int64_t mu, std::int64_t radius_sq) {
    std::vector<PrimitivePair> out;
    if (mu < 0 || radius_sq < mu * mu)
        return out;
    if (mu == 0) {
        if (radius_sq >= 1)
            out.push_back({0, 1});
        return out;
    }
    std::int64_t reach = isqrt(radius_sq - mu * mu);
    for (std::int64_t lambda = -reach; lambda <= reach; ++lambda)
        if (gcd(mu, lambda) == 1)
            out.push_back({mu, lambda});
    return out;
}

void for_each_primitive_pair(std::int64_t radius_sq,
                             const std::function<void(const PrimitivePair&)>& visit) {
    if (radius_sq < 1)
        return;
    std::int64_t top = isqrt(radius_sq);
    for (std::int64_t mu = 0; mu <= top; ++mu)
        for (const auto& pair : primitive_column(mu, radius_sq))
            visit(pair);
}

std::vector<PrimitivePair> primitive_pairs(std::int64_t radius_sq) {
    std::vector<PrimitivePair> out;
    for_each_primitive_pair(radius_sq, [&](const PrimitivePair& p) { out.push_back(p); });
    return out;
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
    std::vector<std::int64_t> primes;
    if (limit < 2)
        return primes;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::int64_t i = 2; i <= limit; ++i) {
        if (composite[i])
            continue;
        primes.push_back(i);
        for (std::int64_t j = i * i; j <= limit; j += i)
            composite[j] = true;
    }
    return primes;
}

FactorSieve::FactorSieve(std::int64_t limit)
    : limit_(std::max<std::int64_t>(limit, 1)), spf_(static_cast<std::size_t>(limit_) + 1, 0) {
    for (std::int64_t i = 2; i <= limit_; ++i) {
        if (spf_[i] != 0)
            continue;
        for (std::int64_t j = i; j <= limit_; j += i)
            if (spf_[j] == 0)
                spf_[j] = static_cast<std::uint32_t>(i);
    }
}

void FactorSieve::squarefree_divisors(std::int64_t n, std::vector<SquarefreeDivisor>& out) const {
    if (n < 1 || n > limit_)
        throw DomainError("FactorSieve: argument outside sieve range");
    out.clear();
    out.push_back({1, 1});
    while (n > 1) {
        std::int64_t p = spf_[n];
        while (n % p == 0)
            n /= p;
        const std::size_t existing = out.size();
        for (std::size_t i = 0; i < existing; ++i)
            out.push_back({out[i].d * p, -out[i].moebius});
    }
}

std::int64_t coprime_in(std::int64_t lo, std::int64_t hi,
                        const std::vector<SquarefreeDivisor>& divisors, std::int64_t other) {
    if (hi < lo)
        return 0;
    std::int64_t total = 0;
    for (const auto& [d, mob] : divisors)
        if (other % d == 0)
            total += mob * multiples_in(lo, hi, d);
    return total;
}

}  // namespace hypercubic
