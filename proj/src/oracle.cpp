#include "hypercubic/oracle.hpp"

#include <algorithm>

#include "hypercubic/parallel.hpp"

namespace hypercubic {

ProjPoint ProjPoint::canonical(std::span<const std::int64_t> coords) {
    std::int64_t g = 0;
    for (auto c : coords)
        g = gcd(g, c);
    if (g == 0)
        throw DomainError("ProjPoint: all coordinates are zero");
    std::vector<std::int64_t> out(coords.begin(), coords.end());
    auto lead = std::find_if(out.begin(), out.end(), [](std::int64_t c) { return c != 0; });
    if (*lead < 0)
        g = -g;
    for (auto& c : out)
        c /= g;
    return ProjPoint(std::move(out));
}

std::int64_t ProjPoint::height_sq() const {
    std::int64_t s = 0;
    for (auto c : coords_)
        s += c * c;
    return s;
}

HeightBound::HeightBound(std::int64_t bound) : b(bound), b_sq(0) {
    if (bound < 1 || bound > 3'000'000'000LL)
        throw DomainError("height bound must be a positive integer (at most 3e9)");
    b_sq = bound * bound;
}

namespace {

using Coords = std::array<std::int64_t, 5>;

std::int64_t cayley_value(const Coords& t, std::int64_t a) {
    return t[0] * t[1] * t[2] + t[3] * (t[0] * t[0] + a * t[1] * t[1]);
}

std::int64_t threefold_value(const Coords& t, std::int64_t) {
    return t[0] * t[0] * t[2] + t[1] * t[1] * t[3] + t[0] * t[1] * t[4];
}

struct Scan {
    std::size_t n;
    std::int64_t a;
    std::int64_t (*value)(const Coords&, std::int64_t);
    std::vector<ProjPoint>* out;

    // Runs over coordinates depth..n-1 with sum of squares <= budget.
    void run(Coords& t, std::size_t depth, std::int64_t budget) const {
        std::int64_t reach = isqrt(budget);
        if (depth + 1 == n) {
            for (std::int64_t v = -reach; v <= reach; ++v) {
                t[depth] = v;
                if (value(t, a) != 0)
                    continue;
                std::int64_t g = 0;
                for (std::size_t i = 0; i < n; ++i)
                    g = gcd(g, t[i]);
                if (g == 1)
                    out->push_back(ProjPoint::canonical(std::span(t.data(), n)));
            }
            return;
        }
        // t1 >= 1 when t0 == 0: canonical sign and (t0, t1) != (0, 0).
        std::int64_t start = (depth == 1 && t[0] == 0) ? 1 : -reach;
        for (std::int64_t v = start; v <= reach; ++v) {
            t[depth] = v;
            run(t, depth + 1, budget - v * v);
        }
    }
};

}  // namespace

std::vector<ProjPoint> enumerate_points(const SurfaceSpec& spec, HeightBound bound, unsigned threads) {
    if (bound.b > kOracleMaxBound)
        throw DomainError("oracle: bound exceeds the brute-force limit");
    Scan scan{spec.num_vars(), 0, nullptr, nullptr};
    switch (spec.kind()) {
    case SurfaceKind::Cayley:
        scan.a = spec.a();
        if (scan.a > 1'000'000'000 || scan.a < -1'000'000'000)
            throw DomainError("oracle: |a| above 1e9 is not supported");
        scan.value = cayley_value;
        break;
    case SurfaceKind::Threefold:
        scan.value = threefold_value;
        break;
    case SurfaceKind::Catalog:
        throw DomainError("oracle: only the Cayley surfaces and the threefold are supported");
    }

    // One slice per value of t0 >= 0, concatenated in t0 order.
    const auto slices = static_cast<std::size_t>(bound.b) + 1;
    std::vector<std::vector<ProjPoint>> found(slices);
    parallel_for(slices, threads, [&](std::size_t i) {
        Scan local = scan;
        local.out = &found[i];
        Coords t{};
        t[0] = static_cast<std::int64_t>(i);
        local.run(t, 1, bound.b_sq - t[0] * t[0]);
    });
    std::vector<ProjPoint> points;
    for (auto& slice : found)
        points.insert(points.end(), std::make_move_iterator(slice.begin()),
                      std::make_move_iterator(slice.end()));
    std::sort(points.begin(), points.end());
    return points;
}

std::int64_t count(const SurfaceSpec& spec, HeightBound bound, unsigned threads) {
    return static_cast<std::int64_t>(enumerate_points(spec, bound, threads).size());
}

PrimitivePair fiber_of(const ProjPoint& p, const SurfaceSpec& spec) {
    const auto& t = p.coords();
    if (t.size() != spec.num_vars())
        throw DomainError("fiber_of: point does not live in the ambient space of the surface");
    if (t[0] == 0 && t[1] == 0)
        throw DomainError("fiber_of: point lies on the non-normal line t0 = t1 = 0");
    return PrimitivePair::canonical(t[0], t[1]);
}

}  // namespace hypercubic
