#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hypercubic/exactarith.hpp"
#include "hypercubic/forms.hpp"
#include "hypercubic/oracle.hpp"

namespace hypercubic {

// Bounds above this would overflow the 64-bit interval arithmetic below.
inline constexpr std::int64_t kFibrationMaxBound = 40000;

/// Quadratic form whose primitive values <= B^2 (with tau0 >= 1) are the
/// points of the fibre over y.
///
/// Cayley surface, mu != 0:  norm*tau0^2 + g*tau3^2, with
///   d = gcd(a, mu), mu = mu1*d, a = a1*d, g = (mu1*lambda)^2 + (mu1^2*d + a1*lambda^2)^2.
/// Cayley surface, y = (0:1): tau0^2 + tau3^2 (axis fibre, g = 1).
/// Threefold: norm*(tau0^2 + tau2^2 + tau3^2) + cross*tau2*tau3, cross = 2*mu*lambda.
struct FiberData {
    PrimitivePair y;
    SurfaceKind kind = SurfaceKind::Cayley;
    std::int64_t norm = 0;  // mu^2 + lambda^2
    bool axis = false;
    std::int64_t d = 0;
    std::int64_t mu1 = 0;
    std::int64_t a1 = 0;
    BigInt g = 0;
    std::int64_t cross = 0;

    std::size_t tau_size() const { return kind == SurfaceKind::Cayley ? 2 : 3; }

    // Height squared of the fibre point with parameters tau.
    BigInt form_value(std::span<const std::int64_t> tau) const;
};

struct FiberCount {
    PrimitivePair y;
    std::int64_t count = 0;
    std::int64_t min_height_sq = 0;  // height^2 of the base point tau = (1, 0[, 0])
};

FiberData fiber_data(const SurfaceSpec& spec, const PrimitivePair& y);

// Ambient point of the fibre over y with parameters tau: (tau0, tau3) on the
// Cayley surface, (tau0, tau2, tau3) on the threefold.
std::vector<std::int64_t> fiber_param(const SurfaceSpec& spec, const PrimitivePair& y,
                                      std::span<const std::int64_t> tau);

// Number of points of V over y with height <= B.
FiberCount fiber_count(const SurfaceSpec& spec, const PrimitivePair& y, HeightBound bound);

// Same number through Moebius inversion of the count of all (not necessarily
// primitive) tau with tau0 >= 1: sum_k mu(k) * N*(floor(B^2 / k^2)).
std::int64_t fiber_count_mobius(const SurfaceSpec& spec, const PrimitivePair& y, HeightBound bound);

// Explicit list of the primitive tau (tau0 >= 1) counted by fiber_count.
std::vector<std::vector<std::int64_t>> fiber_points(const SurfaceSpec& spec, const PrimitivePair& y,
                                                    HeightBound bound);

// N(V, B) as the sum of fiber_count over canonical y with mu^2 + lambda^2 <= B^2.
std::int64_t total_count(const SurfaceSpec& spec, HeightBound bound, unsigned threads = 1);

}  // namespace hypercubic
