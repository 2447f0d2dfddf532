#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hypercubic/exactarith.hpp"

namespace hypercubic {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::size_t kMaxVars = 6;

// Exponent vector of a monomial; entries past num_vars are zero.
using Exponent = std::array<std::uint8_t, kMaxVars>;

// One monomial given by the (repeated) indices of its three variables, e.g.
// {0, 0, 2} is t0^2*t2.
struct CubicTerm {
    Rational coefficient;
    std::array<std::size_t, 3> vars;
};

/// Homogeneous cubic in num_vars variables with exact rational coefficients.
/// Zero coefficients are never stored. Monomials are kept in descending
/// lexicographic order of exponent vectors (t0^3 first).
class CubicForm {
  public:
    using TermMap = std::map<Exponent, Rational, std::greater<>>;

    explicit CubicForm(std::size_t num_vars);
    CubicForm(std::size_t num_vars, std::initializer_list<CubicTerm> terms);
    CubicForm(std::size_t num_vars, const TermMap& terms);

    std::size_t num_vars() const { return num_vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    CubicForm scaled(const Rational& s) const;

    friend bool operator==(const CubicForm&, const CubicForm&) = default;

  private:
    std::size_t num_vars_;
    TermMap terms_;
};

CubicForm operator+(const CubicForm& f, const CubicForm& g);

// "t0^2*t3 + t0*t1*t2 + 2*t1^2*t3"; the zero form renders as "0".
std::string to_string(const CubicForm& f);

/// Linear coordinate change t_i -> sum_j rows[i][j] * t_j.
class LinearChange {
  public:
    // Throws DomainError unless square, at most kMaxVars wide and nonsingular.
    explicit LinearChange(std::vector<std::vector<Rational>> rows);

    static LinearChange identity(std::size_t n);
    static LinearChange integral(std::initializer_list<std::initializer_list<std::int64_t>> rows);

    std::size_t size() const { return rows_.size(); }
    const Rational& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
    const std::vector<std::vector<Rational>>& rows() const { return rows_; }

    friend bool operator==(const LinearChange&, const LinearChange&) = default;

  private:
    std::vector<std::vector<Rational>> rows_;
};

Rational determinant(const std::vector<std::vector<Rational>>& rows);

// substitute(f, compose(first, second)) == substitute(substitute(f, first), second).
LinearChange compose(const LinearChange& first, const LinearChange& second);

Rational evaluate(const CubicForm& f, std::span<const std::int64_t> point);

// f(L t) expanded exactly.
CubicForm substitute(const CubicForm& f, const LinearChange& change);

// s with f = s*g, if it exists. Two zero forms give s = 1.
std::optional<Rational> is_proportional(const CubicForm& f, const CubicForm& g);

// ---------------------------------------------------------------------------
// Surfaces and the normal-form catalogue

enum class SurfaceKind { Cayley, Threefold, Catalog };

struct CatalogEntry {
    std::string tag;
    std::size_t ambient_dim;
    std::vector<std::string> parameters;
    std::string constraint;
    std::function<CubicForm(std::span<const std::int64_t>)> build;

    // Throws DomainError when params violate the entry's constraint.
    CubicForm instantiate(std::span<const std::int64_t> params) const;
};

// The six non-cone normal forms of geometrically non-normal integral cubic
// hypersurfaces over Q.
const std::vector<CatalogEntry>& normal_form_catalog();
const CatalogEntry& catalog_entry(const std::string& tag);

class SurfaceSpec {
  public:
    // t0*t1*t2 + t3*(t0^2 + a*t1^2); a must be nonzero and squarefree.
    static SurfaceSpec cayley(std::int64_t a);
    // t0^2*t2 + t1^2*t3 + t0*t1*t4.
    static SurfaceSpec threefold();
    static SurfaceSpec catalog(std::string tag, std::vector<std::int64_t> params = {});

    SurfaceKind kind() const { return kind_; }
    std::int64_t a() const;
    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t num_vars() const { return ambient_dim_ + 1; }
    const std::string& tag() const { return tag_; }
    const std::vector<std::int64_t>& params() const { return params_; }

    // "cayley(a=2)", "threefold" or the catalogue tag.
    std::string name() const;

  private:
    SurfaceSpec(SurfaceKind kind, std::size_t dim, std::string tag, std::vector<std::int64_t> params)
        : kind_(kind), ambient_dim_(dim), tag_(std::move(tag)), params_(std::move(params)) {}

    SurfaceKind kind_;
    std::size_t ambient_dim_;
    std::string tag_;
    std::vector<std::int64_t> params_;
};

CubicForm surface_form(const SurfaceSpec& spec);

// t0^2*t2 + t0*t1*t3 + t1^2*t4: the catalogue coordinates of the threefold,
// in which the automorphism and scroll formulas are written.
CubicForm threefold_normal_form();

// Swap of t3 and t4 on five variables; surface_form(threefold()) is
// substitute(threefold_normal_form(), threefold_swap()).
LinearChange threefold_swap();

// ---------------------------------------------------------------------------
// Automorphisms of the threefold in catalogue coordinates

// t0 -> alpha*t0 + t1, t1 -> gamma*t0 + delta*t1.
struct AutCaseOne {
    Rational alpha, gamma, delta, u4, a31, a41;
};

// t0 -> t0, t1 -> gamma*t0 + delta*t1.
struct AutCaseTwo {
    Rational gamma, delta, w4, a30, a40;
};

using AutParams = std::variant<AutCaseOne, AutCaseTwo>;

LinearChange aut_matrix(const AutParams& params);

// ---------------------------------------------------------------------------
// Segre scroll P^1 x P^2 in P^5 and its projection from (0:0:0:0:0:1)

using ScrollPoint = std::array<std::int64_t, 5>;

// Image in {t5 = 0} of the scroll point whose matrix rows are
// (a*x, a'*x):  (a*x0, a'*x0, a'*x1, a'*x2 - a*x1, -a*x2).
ScrollPoint scroll_project(std::array<std::int64_t, 2> row_ratio,
                           std::array<std::int64_t, 3> plane_point);

// The same scroll point before projection (t5 = a*x1 reinstated).
std::array<std::int64_t, 6> scroll_lift(std::array<std::int64_t, 2> row_ratio,
                                        std::array<std::int64_t, 3> plane_point);

// All 2x2 minors of [[t0, t5, -t4], [t1, t2, t3 + t5]] vanish.
bool scroll_rank_check(std::span<const std::int64_t, 6> p);

}  // namespace hypercubic
