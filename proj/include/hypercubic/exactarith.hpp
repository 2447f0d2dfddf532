#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hypercubic {

// Fixed-width 128-bit signed integer; any overflow throws std::overflow_error.
using BigInt = boost::multiprecision::checked_int128_t;

class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// floor(sqrt(n)); throws DomainError for n < 0.
std::int64_t isqrt(std::int64_t n);
BigInt isqrt(const BigInt& n);

std::int64_t gcd(std::int64_t a, std::int64_t b);

// Floor / ceiling of a/b for b > 0.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    return (a % b != 0 && a < 0) ? q - 1 : q;
}
constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    return (a % b != 0 && a > 0) ? q + 1 : q;
}

int moebius(std::int64_t n);
bool is_squarefree(std::int64_t a);
bool is_prime(std::int64_t n);

struct GcdSplit {
    std::int64_t d;
    std::int64_t mu1;
    std::int64_t a1;
};

// d = gcd(|a|,|mu|), mu = mu1*d, a = a1*d.
GcdSplit gcd_decompose(std::int64_t a, std::int64_t mu);

/// A point of P^1(Q) as a coprime pair, normalised so that mu >= 1 or
/// (mu, lambda) = (0, 1).
struct PrimitivePair {
    std::int64_t mu = 0;
    std::int64_t lambda = 1;

    // Reduces (mu, lambda) by their gcd and fixes the sign; throws on (0, 0).
    static PrimitivePair canonical(std::int64_t mu, std::int64_t lambda);

    std::int64_t norm() const { return mu * mu + lambda * lambda; }

    friend auto operator<=>(const PrimitivePair&, const PrimitivePair&) = default;
};

// Visits canonical pairs with mu^2 + lambda^2 <= radius_sq, mu ascending then
// lambda ascending. The column for a fixed mu is visited contiguously.
void for_each_primitive_pair(std::int64_t radius_sq,
                             const std::function<void(const PrimitivePair&)>& visit);

std::vector<PrimitivePair> primitive_pairs(std::int64_t radius_sq);

// Canonical pairs with first coordinate mu (lambda ascending).
std::vector<PrimitivePair> primitive_column(std::int64_t mu, std::int64_t radius_sq);

std::vector<std::int64_t> primes_up_to(std::int64_t limit);

struct SquarefreeDivisor {
    std::int64_t d;
    int moebius;
};

/// Smallest-prime-factor sieve for fast factorisation of 1..limit.
class FactorSieve {
  public:
    explicit FactorSieve(std::int64_t limit);

    std::int64_t limit() const { return limit_; }

    // All squarefree divisors d of n with moebius(d), d = 1 first.
    void squarefree_divisors(std::int64_t n, std::vector<SquarefreeDivisor>& out) const;

  private:
    std::int64_t limit_;
    std::vector<std::uint32_t> spf_;
};

// Number of x in [lo, hi] divisible by d (d >= 1).
constexpr std::int64_t multiples_in(std::int64_t lo, std::int64_t hi, std::int64_t d) {
    if (hi < lo)
        return 0;
    return floor_div(hi, d) - floor_div(lo - 1, d);
}

// Number of x in [lo, hi] with gcd(x, gcd(n, other)) == 1, where `divisors`
// are the squarefree divisors of n. other = 0 means plain coprimality to n.
std::int64_t coprime_in(std::int64_t lo, std::int64_t hi,
                        const std::vector<SquarefreeDivisor>& divisors,
                        std::int64_t other = 0);

}  // namespace hypercubic
