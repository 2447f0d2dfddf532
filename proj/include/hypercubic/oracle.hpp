#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hypercubic/exactarith.hpp"
#include "hypercubic/forms.hpp"

namespace hypercubic {

/// Primitive integer representative of a rational projective point whose
/// first nonzero coordinate is positive.
class ProjPoint {
  public:
    // Divides by the gcd and fixes the sign; throws DomainError on zero.
    static ProjPoint canonical(std::span<const std::int64_t> coords);

    const std::vector<std::int64_t>& coords() const { return coords_; }
    std::int64_t height_sq() const;

    friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;

  private:
    explicit ProjPoint(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
    std::vector<std::int64_t> coords_;
};

/// Height bound B; H(t) <= B is tested as sum t_i^2 <= B^2.
struct HeightBound {
    std::int64_t b;
    std::int64_t b_sq;

    // Throws DomainError unless 1 <= b <= 3'000'000'000.
    explicit HeightBound(std::int64_t bound);
};

// Largest bound for which plain enumeration is attempted at all.
inline constexpr std::int64_t kOracleMaxBound = 400;

// Every point of V = W minus {t0 = t1 = 0} with height <= B, sorted.
// Supports the Cayley surfaces and the threefold.
std::vector<ProjPoint> enumerate_points(const SurfaceSpec& spec, HeightBound bound, unsigned threads = 1);

std::int64_t count(const SurfaceSpec& spec, HeightBound bound, unsigned threads = 1);

// The fibre y = (t0 : t1) containing p.
PrimitivePair fiber_of(const ProjPoint& p, const SurfaceSpec& spec);

}  // namespace hypercubic
