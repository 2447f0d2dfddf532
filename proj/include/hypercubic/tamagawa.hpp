#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypercubic/exactarith.hpp"
#include "hypercubic/forms.hpp"

namespace hypercubic {

// Invariants of the fibres V ∩ V_y of the threefold entering the
// Batyrev-Tschinkel leading constant.
struct FiberInvariants {
    static constexpr int alpha = 3;  // alpha_L(V ∩ V_y) = alpha_L(V)
    static constexpr int beta = 1;   // rank Pic(P^2)
    static constexpr int delta = 1;  // #H^1(Gal, Pic(P^2))
    // gamma_L = integral_0^inf exp(-alpha*y) dy = 1/alpha.
    static Rational gamma() { return Rational(1, alpha); }
};

/// p-adic density of P^2(Q_p): #P^2(F_p) / p^2.
struct LocalDensity {
    std::int64_t p;
    Rational value;
};

// Throws DomainError when p is not prime.
LocalDensity omega_p(std::int64_t p);

// prod over primes p <= limit of (1 - p^-3).
long double euler_product(std::int64_t limit);

// 2*pi / sqrt((lambda^2 + mu^2)(lambda^4 + lambda^2*mu^2 + mu^4)).
long double omega_infinity_closed(std::int64_t mu, std::int64_t lambda);

// (lambda^2 + mu^2)(lambda^4 + lambda^2*mu^2 + mu^4), the radicand above.
BigInt omega_infinity_radicand(std::int64_t mu, std::int64_t lambda);

class QuadratureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct QuadratureResult {
    long double value = 0;
    long double error_estimate = 0;
    long double l1_norm = 0;
};

// Integral over R^2 of dx dy / (A(1 + x^2 + y^2) + 2*mu*lambda*x*y)^{3/2},
// A = mu^2 + lambda^2. The radial integral is done in closed form,
//   int_0^inf r dr / (A + C r^2)^{3/2} = 1 / (sqrt(A) C),
// leaving int_0^{2 pi} dphi / (sqrt(A) (A + mu*lambda*sin(2 phi))) for
// adaptive Gauss-Kronrod. Throws QuadratureError if tol is not reached.
QuadratureResult omega_infinity_quadrature(std::int64_t mu, std::int64_t lambda, long double tol);

struct FiberTamagawa {
    PrimitivePair y;
    long double omega_inf = 0;
    long double tau = 0;  // omega_inf / zeta(3)
    BigInt f_value = 0;   // f_threefold(mu, lambda)
};

FiberTamagawa tamagawa_fiber(std::int64_t mu, std::int64_t lambda);

struct PeyreReport {
    std::int64_t radius = 0;
    std::int64_t fibers_checked = 0;
    std::vector<PrimitivePair> failures;
    long double max_float_gap = 0;  // largest |gamma*tau - share| in floating point

    bool passed() const { return failures.empty(); }
};

// For every canonical y with mu^2 + lambda^2 <= radius^2, checks
// gamma_L * tau_L(V ∩ V_y) == (pi / (3 zeta(3))) * 2 / sqrt(f(mu, lambda))
// exactly: both sides are q * (pi / zeta(3)) / sqrt(n) and q^2 / n is compared
// as a rational.
PeyreReport peyre_consistency(std::int64_t radius);

}  // namespace hypercubic
