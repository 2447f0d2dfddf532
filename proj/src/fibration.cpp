#include "hypercubic/fibration.hpp"

#include <limits>

#include "hypercubic/parallel.hpp"

namespace hypercubic {

namespace {

std::int64_t to_int64(const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("value does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
}

void check_canonical(const PrimitivePair& y) {
    if (y != PrimitivePair::canonical(y.mu, y.lambda))
        throw DomainError("fibre index must be a canonical primitive pair");
}

void check_supported(const SurfaceSpec& spec) {
    if (spec.kind() == SurfaceKind::Catalog)
        throw DomainError("fibration: only the Cayley surfaces and the threefold are supported");
}

void check_bound(HeightBound bound) {
    if (bound.b > kFibrationMaxBound)
        throw DomainError("fibration: bound exceeds " + std::to_string(kFibrationMaxBound));
}

// Binary form w0*tau0^2 + w3*tau3^2 <= limit, tau0 >= 1. With `primitive`,
// only gcd(tau0, tau3) = 1 is counted.
std::int64_t count_binary(std::int64_t w0, const BigInt& w3, std::int64_t limit, bool primitive,
                          const FactorSieve& sieve) {
    if (w0 > limit)
        return 0;
    if (w3 > limit) {
        // Only tau3 = 0 fits; primitivity then forces tau0 = 1.
        return primitive ? 1 : isqrt(limit / w0);
    }
    const std::int64_t w3s = static_cast<std::int64_t>(w3);
    std::vector<SquarefreeDivisor> divisors;
    std::int64_t total = 0;
    for (std::int64_t t0 = 1; w0 * t0 * t0 <= limit; ++t0) {
        std::int64_t reach = isqrt((limit - w0 * t0 * t0) / w3s);
        if (!primitive) {
            total += 2 * reach + 1;
            continue;
        }
        sieve.squarefree_divisors(t0, divisors);
        total += coprime_in(-reach, reach, divisors);
    }
    return total;
}

// Ternary form norm*(tau0^2 + tau2^2 + tau3^2) + 2*m*tau2*tau3 <= limit,
// tau0 >= 1. For fixed (tau0, tau3) the admissible tau2 satisfy
// |norm*tau2 + m*tau3| <= sqrt(D), D = norm*rem - (norm^2 - m^2)*tau3^2.
std::int64_t count_ternary(std::int64_t norm, std::int64_t m, std::int64_t limit, bool primitive,
                           const FactorSieve& sieve) {
    using W = __int128;
    const W definite = W(norm) * norm - W(m) * m;  // >= 1 for coprime (mu, lambda)
    std::vector<SquarefreeDivisor> divisors;
    std::int64_t total = 0;
    for (std::int64_t t0 = 1; norm * t0 * t0 <= limit; ++t0) {
        const W scaled_rem = W(norm) * (limit - norm * t0 * t0);
        const auto t3_reach = isqrt(static_cast<std::int64_t>(scaled_rem / definite));
        if (primitive)
            sieve.squarefree_divisors(t0, divisors);
        for (std::int64_t t3 = -t3_reach; t3 <= t3_reach; ++t3) {
            const auto s = isqrt(static_cast<std::int64_t>(scaled_rem - definite * t3 * t3));
            const std::int64_t shift = m * t3;
            const std::int64_t lo = ceil_div(-s - shift, norm);
            const std::int64_t hi = floor_div(s - shift, norm);
            if (hi < lo)
                continue;
            total += primitive ? coprime_in(lo, hi, divisors, t3) : hi - lo + 1;
        }
    }
    return total;
}

std::int64_t count_fiber(const FiberData& fd, std::int64_t limit, bool primitive, const FactorSieve& sieve) {
    if (fd.kind == SurfaceKind::Cayley)
        return count_binary(fd.norm, fd.g, limit, primitive, sieve);
    return count_ternary(fd.norm, fd.cross / 2, limit, primitive, sieve);
}

}  // namespace

BigInt FiberData::form_value(std::span<const std::int64_t> tau) const {
    if (tau.size() != tau_size())
        throw DomainError("fibre parameter has the wrong length");
    if (kind == SurfaceKind::Cayley) {
        BigInt t0 = tau[0], t3 = tau[1];
        return norm * t0 * t0 + g * t3 * t3;
    }
    BigInt t0 = tau[0], t2 = tau[1], t3 = tau[2];
    return norm * (t0 * t0 + t2 * t2 + t3 * t3) + cross * t2 * t3;
}

FiberData fiber_data(const SurfaceSpec& spec, const PrimitivePair& y) {
    check_supported(spec);
    check_canonical(y);
    FiberData fd;
    fd.y = y;
    fd.kind = spec.kind();
    fd.norm = y.norm();
    if (spec.kind() == SurfaceKind::Threefold) {
        fd.cross = 2 * y.mu * y.lambda;
        return fd;
    }
    if (y.mu == 0) {
        fd.axis = true;
        fd.g = 1;
        return fd;
    }
    const auto [d, mu1, a1] = gcd_decompose(spec.a(), y.mu);
    fd.d = d;
    fd.mu1 = mu1;
    fd.a1 = a1;
    const BigInt lam = y.lambda;
    const BigInt u = BigInt(mu1) * lam;
    const BigInt v = BigInt(mu1) * mu1 * d + BigInt(a1) * lam * lam;
    fd.g = u * u + v * v;
    return fd;
}

std::vector<std::int64_t> fiber_param(const SurfaceSpec& spec, const PrimitivePair& y,
                                      std::span<const std::int64_t> tau) {
    const FiberData fd = fiber_data(spec, y);
    if (tau.size() != fd.tau_size())
        throw DomainError("fibre parameter has the wrong length");
    const BigInt mu = y.mu, lam = y.lambda;
    if (spec.kind() == SurfaceKind::Cayley) {
        const BigInt t0 = tau[0], t3 = tau[1];
        if (fd.axis)
            return {0, tau[0], tau[1], 0};
        const BigInt v = BigInt(fd.mu1) * fd.mu1 * fd.d + BigInt(fd.a1) * lam * lam;
        return {to_int64(mu * t0), to_int64(lam * t0), to_int64(-v * t3), to_int64(BigInt(fd.mu1) * lam * t3)};
    }
    const BigInt t0 = tau[0], t2 = tau[1], t3 = tau[2];
    return {to_int64(mu * t0), to_int64(lam * t0), to_int64(lam * t2), to_int64(mu * t3),
            to_int64(-mu * t2 - lam * t3)};
}

FiberCount fiber_count(const SurfaceSpec& spec, const PrimitivePair& y, HeightBound bound) {
    check_bound(bound);
    const FiberData fd = fiber_data(spec, y);
    FiberCount out{y, 0, fd.norm};
    if (fd.norm > bound.b_sq)
        return out;
    const FactorSieve sieve(isqrt(bound.b_sq / fd.norm));
    out.count = count_fiber(fd, bound.b_sq, true, sieve);
    return out;
}

std::int64_t fiber_count_mobius(const SurfaceSpec& spec, const PrimitivePair& y, HeightBound bound) {
    check_bound(bound);
    const FiberData fd = fiber_data(spec, y);
    if (fd.norm > bound.b_sq)
        return 0;
    const FactorSieve sieve(1);
    std::int64_t total = 0;
    // Every tau with tau0 >= 1 is k times a primitive one, k = gcd(tau).
    for (std::int64_t k = 1; k * k * fd.norm <= bound.b_sq; ++k) {
        const int mob = moebius(k);
        if (mob != 0)
            total += mob * count_fiber(fd, bound.b_sq / (k * k), false, sieve);
    }
    return total;
}

std::vector<std::vector<std::int64_t>> fiber_points(const SurfaceSpec& spec, const PrimitivePair& y,
                                                    HeightBound bound) {
    check_bound(bound);
    const FiberData fd = fiber_data(spec, y);
    std::vector<std::vector<std::int64_t>> out;
    const std::int64_t limit = bound.b_sq;
    if (fd.norm > limit)
        return out;
    const std::int64_t t0_reach = isqrt(limit / fd.norm);
    if (fd.kind == SurfaceKind::Cayley) {
        const std::int64_t t3_reach = fd.g > limit ? 0 : isqrt(limit / static_cast<std::int64_t>(fd.g));
        for (std::int64_t t0 = 1; t0 <= t0_reach; ++t0)
            for (std::int64_t t3 = -t3_reach; t3 <= t3_reach; ++t3) {
                std::vector<std::int64_t> tau{t0, t3};
                if (gcd(t0, t3) == 1 && fd.form_value(tau) <= limit)
                    out.push_back(std::move(tau));
            }
        return out;
    }
    // norm*(tau2^2 + tau3^2) + cross*tau2*tau3 >= (norm - |mu*lambda|)*(tau2^2 + tau3^2).
    const std::int64_t floor_weight = fd.norm - std::abs(fd.cross / 2);
    const std::int64_t reach = isqrt(limit / floor_weight);
    for (std::int64_t t0 = 1; t0 <= t0_reach; ++t0)
        for (std::int64_t t2 = -reach; t2 <= reach; ++t2)
            for (std::int64_t t3 = -reach; t3 <= reach; ++t3) {
                std::vector<std::int64_t> tau{t0, t2, t3};
                if (gcd(gcd(t0, t2), t3) == 1 && fd.form_value(tau) <= limit)
                    out.push_back(std::move(tau));
            }
    return out;
}

std::int64_t total_count(const SurfaceSpec& spec, HeightBound bound, unsigned threads) {
    check_supported(spec);
    check_bound(bound);
    const FactorSieve sieve(bound.b);
    const auto columns = static_cast<std::size_t>(bound.b) + 1;
    std::vector<std::int64_t> column_totals(columns, 0);
    parallel_for(columns, threads, [&](std::size_t mu) {
        std::int64_t sum = 0;
        for (const auto& y : primitive_column(static_cast<std::int64_t>(mu), bound.b_sq))
            sum += count_fiber(fiber_data(spec, y), bound.b_sq, true, sieve);
        column_totals[mu] = sum;
    });
    std::int64_t total = 0;
    for (auto v : column_totals)
        total += v;
    return total;
}

}  // namespace hypercubic
