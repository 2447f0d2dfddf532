#include <doctest.h>

#include <numeric>
#include <set>

#include "hypercubic/oracle.hpp"

using namespace hypercubic;

namespace {

using Coords = std::vector<std::int64_t>;

// Plain box scan over every sign pattern, canonicalised afterwards.
std::set<Coords> naive_points(const SurfaceSpec& spec, std::int64_t b) {
    const auto form = surface_form(spec);
    const std::size_t n = spec.num_vars();
    std::set<Coords> out;
    Coords t(n, -b);
    for (;;) {
        std::int64_t h = 0, g = 0;
        for (auto x : t) {
            h += x * x;
            g = std::gcd(g, x);
        }
        if (h <= b * b && g == 1 && (t[0] != 0 || t[1] != 0) && evaluate(form, t) == 0)
            out.insert(ProjPoint::canonical(t).coords());
        std::size_t k = 0;
        while (k < n && t[k] == b)
            t[k++] = -b;
        if (k == n)
            break;
        ++t[k];
    }
    return out;
}

std::set<Coords> as_set(const std::vector<ProjPoint>& pts) {
    std::set<Coords> out;
    for (const auto& p : pts)
        out.insert(p.coords());
    return out;
}

}  // namespace

TEST_CASE("projective points are canonical") {
    const Coords raw{0, -4, 6, 2};
    const auto p = ProjPoint::canonical(raw);
    CHECK(p.coords() == Coords{0, 2, -3, -1});
    CHECK(p.height_sq() == 14);
    const Coords zero{0, 0, 0};
    CHECK_THROWS_AS(ProjPoint::canonical(zero), DomainError);
    CHECK_THROWS_AS(HeightBound(0), DomainError);
    CHECK_THROWS_AS(HeightBound(-2), DomainError);
    CHECK(HeightBound(7).b_sq == 49);
}

TEST_CASE("enumeration examples") {
    CHECK(as_set(enumerate_points(SurfaceSpec::threefold(), HeightBound(1))) ==
          std::set<Coords>{{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}});
    CHECK(as_set(enumerate_points(SurfaceSpec::cayley(2), HeightBound(1))) ==
          std::set<Coords>{{1, 0, 0, 0}, {0, 1, 0, 0}});
    CHECK(count(SurfaceSpec::threefold(), HeightBound(1)) == 2);
    CHECK(count(SurfaceSpec::cayley(2), HeightBound(1)) == 2);
    CHECK(count(SurfaceSpec::cayley(-1), HeightBound(1)) == 2);
}

TEST_CASE("oracle agrees with a naive scan") {
    for (std::int64_t a : {1, -1, 2, -5, 6}) {
        const auto spec = SurfaceSpec::cayley(a);
        for (std::int64_t b : {2, 5, 9})
            CHECK(as_set(enumerate_points(spec, HeightBound(b))) == naive_points(spec, b));
    }
    for (std::int64_t b : {2, 3, 4})
        CHECK(as_set(enumerate_points(SurfaceSpec::threefold(), HeightBound(b))) ==
              naive_points(SurfaceSpec::threefold(), b));
}

TEST_CASE("enumerated points lie on V") {
    for (const auto& spec : {SurfaceSpec::cayley(-30), SurfaceSpec::cayley(3), SurfaceSpec::threefold()}) {
        const std::int64_t b = spec.kind() == SurfaceKind::Threefold ? 8 : 20;
        const auto form = surface_form(spec);
        const auto pts = enumerate_points(spec, HeightBound(b));
        CHECK(std::is_sorted(pts.begin(), pts.end()));
        const std::set<Coords> all = as_set(pts);
        CHECK(all.size() == pts.size());
        for (const auto& p : pts) {
            const auto& t = p.coords();
            CHECK(evaluate(form, t) == 0);
            CHECK(p.height_sq() <= b * b);
            CHECK((t[0] != 0 || t[1] != 0));
            std::int64_t g = 0;
            for (auto x : t)
                g = std::gcd(g, x);
            CHECK(g == 1);
            // first nonzero coordinate positive
            CHECK(*std::find_if(t.begin(), t.end(), [](std::int64_t x) { return x != 0; }) > 0);
            // closed under t -> -t after canonicalisation
            Coords neg(t);
            for (auto& x : neg)
                x = -x;
            CHECK(all.count(ProjPoint::canonical(neg).coords()) == 1);
            // fibre equations
            const auto y = fiber_of(p, spec);
            CHECK(y.lambda * t[0] - y.mu * t[1] == 0);
            if (spec.kind() == SurfaceKind::Cayley)
                CHECK(y.mu * y.lambda * t[2] + (y.mu * y.mu + spec.a() * y.lambda * y.lambda) * t[3] == 0);
            else
                CHECK(y.mu * y.mu * t[2] + y.lambda * y.lambda * t[3] + y.mu * y.lambda * t[4] == 0);
        }
    }
}

TEST_CASE("count is monotone in B") {
    const auto spec = SurfaceSpec::cayley(5);
    std::int64_t previous = 0;
    for (std::int64_t b = 1; b <= 15; ++b) {
        const auto c = count(spec, HeightBound(b));
        CHECK(c >= previous);
        previous = c;
    }
}

TEST_CASE("enumeration does not depend on the thread count") {
    for (const auto& spec : {SurfaceSpec::cayley(-2), SurfaceSpec::threefold()}) {
        const std::int64_t b = spec.kind() == SurfaceKind::Threefold ? 7 : 18;
        const auto one = enumerate_points(spec, HeightBound(b), 1);
        CHECK(enumerate_points(spec, HeightBound(b), 3) == one);
        CHECK(enumerate_points(spec, HeightBound(b), 8) == one);
    }
}

TEST_CASE("fiber_of") {
    const auto spec = SurfaceSpec::cayley(2);
    const Coords p1{2, 4, -3, 1}, p2{0, 3, 5, 0}, p3{-3, 6, 1, 0}, line{0, 0, 1, 0};
    CHECK(fiber_of(ProjPoint::canonical(p1), spec) == PrimitivePair{1, 2});
    CHECK(fiber_of(ProjPoint::canonical(p2), spec) == PrimitivePair{0, 1});
    CHECK(fiber_of(ProjPoint::canonical(p3), spec) == PrimitivePair{1, -2});
    CHECK_THROWS_AS(fiber_of(ProjPoint::canonical(line), spec), DomainError);
    const Coords five{1, 0, 0, 0, 0};
    CHECK_THROWS_AS(fiber_of(ProjPoint::canonical(five), spec), DomainError);
}
