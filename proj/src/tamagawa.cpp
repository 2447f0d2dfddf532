#include "hypercubic/tamagawa.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hypercubic/asymptotics.hpp"

namespace hypercubic {

namespace {

Rational to_rational(const BigInt& v) { return Rational(boost::multiprecision::cpp_int(v)); }

void check_pair(std::int64_t mu, std::int64_t lambda) {
    if (mu == 0 && lambda == 0)
        throw DomainError("(0, 0) is not a point of P^1");
}

}  // namespace

LocalDensity omega_p(std::int64_t p) {
    if (!is_prime(p))
        throw DomainError("omega_p: " + std::to_string(p) + " is not prime");
    return {p, Rational(p * p + p + 1, p * p)};
}

long double euler_product(std::int64_t limit) {
    if (limit < 2)
        throw DomainError("euler_product: limit must be at least 2");
    long double product = 1;
    for (auto p : primes_up_to(limit)) {
        const long double x = static_cast<long double>(p);
        product *= 1 - 1 / (x * x * x);
    }
    return product;
}

BigInt omega_infinity_radicand(std::int64_t mu, std::int64_t lambda) {
    check_pair(mu, lambda);
    const BigInt m2 = BigInt(mu) * mu;
    const BigInt l2 = BigInt(lambda) * lambda;
    return (l2 + m2) * (l2 * l2 + l2 * m2 + m2 * m2);
}

long double omega_infinity_closed(std::int64_t mu, std::int64_t lambda) {
    const long double radicand = omega_infinity_radicand(mu, lambda).convert_to<long double>();
    return 2 * pi_ld() / std::sqrt(radicand);
}

QuadratureResult omega_infinity_quadrature(std::int64_t mu, std::int64_t lambda, long double tol) {
    check_pair(mu, lambda);
    if (!(tol > 0))
        throw DomainError("quadrature tolerance must be positive");
    const long double norm = static_cast<long double>(mu) * mu + static_cast<long double>(lambda) * lambda;
    const long double mixed = static_cast<long double>(mu) * lambda;
    const long double root = std::sqrt(norm);
    auto integrand = [&](long double phi) { return 1 / (root * (norm + mixed * std::sin(2 * phi))); };

    // The integrand is at most 1 / (sqrt(A) (A - |m|)); this turns the
    // absolute tolerance into the relative one the integrator expects.
    const long double upper = 2 * pi_ld() / (root * (norm - std::fabs(mixed)));
    const long double relative = tol / upper;
    constexpr unsigned max_depth = 20;
    const long double floor = 16 * std::numeric_limits<long double>::epsilon();
    if (relative < floor) {
        std::ostringstream msg;
        msg << "omega_infinity_quadrature: tol " << static_cast<double>(tol) << " for (mu, lambda) = (" << mu
            << ", " << lambda << ") is below the attainable " << static_cast<double>(floor * upper);
        throw QuadratureError(msg.str());
    }

    QuadratureResult out;
    out.value = boost::math::quadrature::gauss_kronrod<long double, 31>::integrate(
        integrand, 0.0L, 2 * pi_ld(), max_depth, relative, &out.error_estimate, &out.l1_norm);
    if (!(out.error_estimate <= tol)) {
        std::ostringstream msg;
        msg << "omega_infinity_quadrature did not converge for (mu, lambda) = (" << mu << ", " << lambda
            << "): error estimate " << static_cast<double>(out.error_estimate) << " > tol "
            << static_cast<double>(tol) << " after depth " << max_depth;
        throw QuadratureError(msg.str());
    }
    return out;
}

FiberTamagawa tamagawa_fiber(std::int64_t mu, std::int64_t lambda) {
    FiberTamagawa out;
    out.y = PrimitivePair::canonical(mu, lambda);
    out.omega_inf = omega_infinity_closed(mu, lambda);
    out.tau = out.omega_inf / zeta3();
    out.f_value = f_threefold(mu, lambda);
    return out;
}

PeyreReport peyre_consistency(std::int64_t radius) {
    if (radius < 1)
        throw DomainError("peyre_consistency: radius must be positive");
    PeyreReport report;
    report.radius = radius;
    const Rational gamma = FiberInvariants::gamma();
    const long double pi_over_zeta = pi_ld() / zeta3();
    for_each_primitive_pair(radius * radius, [&](const PrimitivePair& y) {
        ++report.fibers_checked;
        // gamma * tau_L = gamma * 2 * (pi / zeta(3)) / sqrt(radicand)
        const Rational lhs_coeff = gamma * 2;
        const BigInt lhs_radicand = omega_infinity_radicand(y.mu, y.lambda);
        const ScaledRoot rhs = threefold_fiber_share(y.mu, y.lambda);
        const Rational lhs_sq = lhs_coeff * lhs_coeff / to_rational(lhs_radicand);
        const Rational rhs_sq = rhs.coefficient * rhs.coefficient / to_rational(rhs.radicand);
        if (lhs_sq != rhs_sq || lhs_coeff <= 0 || rhs.coefficient <= 0)
            report.failures.push_back(y);

        const long double lhs_float = gamma.convert_to<long double>() * tamagawa_fiber(y.mu, y.lambda).tau;
        const long double rhs_float = rhs.coefficient.convert_to<long double>() * pi_over_zeta /
                                      std::sqrt(rhs.radicand.convert_to<long double>());
        report.max_float_gap = std::max(report.max_float_gap, std::fabs(lhs_float - rhs_float));
    });
    return report;
}

}  // namespace hypercubic
