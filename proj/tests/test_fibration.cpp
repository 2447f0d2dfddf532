#include <doctest.h>

#include <numeric>
#include <random>

#include "hypercubic/fibration.hpp"

using namespace hypercubic;

namespace {

using Tau = std::vector<std::int64_t>;

std::vector<SurfaceSpec> test_surfaces() {
    std::vector<SurfaceSpec> out;
    for (std::int64_t a : {1, -1, 2, -2, 3, 5, -5, 6, 10, -30})
        out.push_back(SurfaceSpec::cayley(a));
    out.push_back(SurfaceSpec::threefold());
    return out;
}

}  // namespace

TEST_CASE("fiber data examples") {
    auto fd = fiber_data(SurfaceSpec::cayley(2), {1, 1});
    CHECK(fd.d == 1);
    CHECK(fd.mu1 == 1);
    CHECK(fd.a1 == 2);
    CHECK(fd.g == 10);
    fd = fiber_data(SurfaceSpec::cayley(6), {4, 1});
    CHECK(fd.d == 2);
    CHECK(fd.mu1 == 2);
    CHECK(fd.a1 == 3);
    CHECK(fd.g == 125);
    fd = fiber_data(SurfaceSpec::threefold(), {2, 1});
    CHECK(fd.norm == 5);
    CHECK(fd.cross == 4);
    CHECK(fiber_data(SurfaceSpec::cayley(3), {0, 1}).axis);
    CHECK_THROWS_AS(fiber_data(SurfaceSpec::cayley(3), {2, 4}), DomainError);
    CHECK_THROWS_AS(fiber_data(SurfaceSpec::cayley(3), {-1, 2}), DomainError);
}

TEST_CASE("fiber parameterisation examples") {
    const Tau t123{1, 2, 3}, t11{1, 1}, t25{2, 5};
    // t4 = -mu*tau2 - lambda*tau3
    CHECK(fiber_param(SurfaceSpec::threefold(), {1, 0}, t123) == Tau{1, 0, 0, 3, -2});
    CHECK(fiber_param(SurfaceSpec::cayley(2), {1, 1}, t11) == Tau{1, 1, -3, 1});
    CHECK(fiber_param(SurfaceSpec::cayley(2), {0, 1}, t25) == Tau{0, 2, 5, 0});
    CHECK_THROWS_AS(fiber_param(SurfaceSpec::cayley(2), {1, 1}, t123), DomainError);
}

TEST_CASE("fiber parameterisations land on the surface and the fibre") {
    std::mt19937_64 rng(3);
    auto draw = [&](std::int64_t r) { return static_cast<std::int64_t>(rng() % (2 * r + 1)) - r; };
    for (const auto& spec : test_surfaces()) {
        const auto form = surface_form(spec);
        for (const auto& y : primitive_pairs(200)) {
            for (int i = 0; i < 5; ++i) {
                Tau tau(fiber_data(spec, y).tau_size());
                for (auto& x : tau)
                    x = draw(30);
                const auto t = fiber_param(spec, y, tau);
                CHECK(evaluate(form, t) == 0);
                CHECK(y.lambda * t[0] - y.mu * t[1] == 0);
                std::int64_t h = 0;
                for (auto x : t)
                    h += x * x;
                CHECK(fiber_data(spec, y).form_value(tau) == h);
            }
        }
    }
}

TEST_CASE("fiber count examples") {
    CHECK(fiber_count(SurfaceSpec::cayley(2), {0, 1}, HeightBound(5)).count == 23);
    CHECK(fiber_count(SurfaceSpec::threefold(), {2, 1}, HeightBound(3)).count == 1);
    CHECK(fiber_count(SurfaceSpec::threefold(), {1, 1}, HeightBound(1)).count == 0);
    CHECK(total_count(SurfaceSpec::threefold(), HeightBound(1)) == 2);
    CHECK(total_count(SurfaceSpec::cayley(2), HeightBound(1)) == 2);
}

TEST_CASE("three counting routes agree per fibre") {
    for (const auto& spec : test_surfaces()) {
        for (std::int64_t b : {1, 2, 3, 6, 11, 17, 30}) {
            const HeightBound bound(b);
            for (const auto& y : primitive_pairs(bound.b_sq)) {
                const auto fc = fiber_count(spec, y, bound);
                const auto pts = fiber_points(spec, y, bound);
                CHECK(fc.count == static_cast<std::int64_t>(pts.size()));
                CHECK(fiber_count_mobius(spec, y, bound) == fc.count);
                CHECK(fc.count >= 1);
                CHECK(fc.min_height_sq == y.norm());
                const auto fd = fiber_data(spec, y);
                for (const auto& tau : pts) {
                    CHECK(tau[0] >= 1);
                    CHECK(fd.form_value(tau) <= bound.b_sq);
                    std::int64_t g = 0;
                    for (auto x : tau)
                        g = std::gcd(g, x);
                    CHECK(g == 1);
                }
            }
        }
    }
}

TEST_CASE("larger fibres: fast count against Moebius inversion") {
    const HeightBound bound(600);
    for (const auto& spec : {SurfaceSpec::cayley(-5), SurfaceSpec::cayley(2), SurfaceSpec::threefold()})
        for (const PrimitivePair y : {PrimitivePair{0, 1}, PrimitivePair{1, 0}, PrimitivePair{1, 1},
                                      PrimitivePair{1, -1}, PrimitivePair{2, -3}, PrimitivePair{7, 4}})
            CHECK(fiber_count(spec, y, bound).count == fiber_count_mobius(spec, y, bound));
}

TEST_CASE("fibres outside the disk are empty") {
    const HeightBound bound(4);
    CHECK(fiber_count(SurfaceSpec::cayley(2), {3, 3 + 1}, bound).count == 0);
    CHECK(fiber_count(SurfaceSpec::threefold(), {4, 1}, bound).count == 0);
    CHECK(fiber_points(SurfaceSpec::threefold(), {4, 1}, bound).empty());
}

TEST_CASE("g is positive and the ternary form is positive definite") {
    for (const auto& spec : test_surfaces())
        for (const auto& y : primitive_pairs(2500))
            if (spec.kind() == SurfaceKind::Cayley && y.mu != 0)
                CHECK(fiber_data(spec, y).g >= 1);
    std::mt19937_64 rng(17);
    auto draw = [&](std::int64_t r) { return static_cast<std::int64_t>(rng() % (2 * r + 1)) - r; };
    const auto spec = SurfaceSpec::threefold();
    for (int i = 0; i < 20000; ++i) {
        const auto y = PrimitivePair::canonical(draw(60) | 1, draw(60));
        const Tau tau{draw(1000), draw(1000), draw(1000)};
        CHECK(fiber_data(spec, y).form_value(tau) >= tau[0] * tau[0] + tau[1] * tau[1] + tau[2] * tau[2]);
    }
}

TEST_CASE("total count does not depend on the thread count") {
    for (const auto& spec : {SurfaceSpec::cayley(-30), SurfaceSpec::threefold()}) {
        const HeightBound bound(300);
        const auto one = total_count(spec, bound, 1);
        CHECK(total_count(spec, bound, 2) == one);
        CHECK(total_count(spec, bound, 7) == one);
    }
}

TEST_CASE("bounds beyond the 64-bit range are refused") {
    CHECK_THROWS(total_count(SurfaceSpec::threefold(), HeightBound(kFibrationMaxBound + 1)));
}
