#include "hypercubic/forms.hpp"

#include <sstream>

namespace hypercubic {

namespace {

void accumulate(CubicForm::TermMap& terms, const Exponent& e, const Rational& c) {
    if (c == 0)
        return;
    auto [it, inserted] = terms.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms.erase(it);
    }
}

void check_terms(std::size_t num_vars, const CubicForm::TermMap& terms) {
    for (const auto& [e, c] : terms) {
        unsigned degree = 0;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            if (i >= num_vars && e[i] != 0)
                throw DomainError("CubicForm: exponent uses a variable beyond num_vars");
            degree += e[i];
        }
        if (degree != 3)
            throw DomainError("CubicForm: monomial is not of degree 3");
        if (c == 0)
            throw DomainError("CubicForm: zero coefficient stored");
    }
}

void check_width(std::size_t num_vars) {
    if (num_vars == 0 || num_vars > kMaxVars)
        throw DomainError("CubicForm: number of variables must be in [1, 6]");
}

std::string rational_text(const Rational& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1)
        os << '/' << denominator(q);
    return os.str();
}

}  // namespace

CubicForm::CubicForm(std::size_t num_vars) : num_vars_(num_vars) { check_width(num_vars); }

CubicForm::CubicForm(std::size_t num_vars, std::initializer_list<CubicTerm> terms)
    : num_vars_(num_vars) {
    check_width(num_vars);
    for (const auto& term : terms) {
        Exponent e{};
        for (std::size_t v : term.vars) {
            if (v >= num_vars)
                throw DomainError("CubicForm: variable index out of range");
            ++e[v];
        }
        accumulate(terms_, e, term.coefficient);
    }
}

CubicForm::CubicForm(std::size_t num_vars, const TermMap& terms) : num_vars_(num_vars) {
    check_width(num_vars);
    for (const auto& [e, c] : terms)
        accumulate(terms_, e, c);
    check_terms(num_vars_, terms_);
}

CubicForm CubicForm::scaled(const Rational& s) const {
    TermMap out;
    for (const auto& [e, c] : terms_)
        accumulate(out, e, c * s);
    return CubicForm(num_vars_, out);
}

CubicForm operator+(const CubicForm& f, const CubicForm& g) {
    if (f.num_vars() != g.num_vars())
        throw DomainError("CubicForm: adding forms in different numbers of variables");
    CubicForm::TermMap out = f.terms();
    for (const auto& [e, c] : g.terms())
        accumulate(out, e, c);
    return CubicForm(f.num_vars(), out);
}

std::string to_string(const CubicForm& f) {
    if (f.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        Rational magnitude = c < 0 ? Rational(-c) : c;
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        bool need_star = false;
        if (magnitude != 1) {
            os << rational_text(magnitude);
            need_star = true;
        }
        for (std::size_t i = 0; i < f.num_vars(); ++i) {
            if (e[i] == 0)
                continue;
            os << (need_star ? "*" : "") << 't' << i;
            if (e[i] > 1)
                os << '^' << int(e[i]);
            need_star = true;
        }
    }
    return os.str();
}

Rational determinant(const std::vector<std::vector<Rational>>& rows) {
    auto m = rows;
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0)
            ++pivot;
        if (pivot == n)
            return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0)
                continue;
            Rational factor = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c)
                m[r][c] -= factor * m[col][c];
        }
    }
    return det;
}

LinearChange::LinearChange(std::vector<std::vector<Rational>> rows) : rows_(std::move(rows)) {
    const std::size_t n = rows_.size();
    if (n == 0 || n > kMaxVars)
        throw DomainError("LinearChange: size must be in [1, 6]");
    for (const auto& row : rows_)
        if (row.size() != n)
            throw DomainError("LinearChange: matrix is not square");
    if (determinant(rows_) == 0)
        throw DomainError("LinearChange: matrix is singular");
}

LinearChange LinearChange::identity(std::size_t n) {
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        rows[i][i] = 1;
    return LinearChange(std::move(rows));
}

LinearChange LinearChange::integral(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    std::vector<std::vector<Rational>> out;
    for (const auto& row : rows) {
        out.emplace_back();
        for (auto v : row)
            out.back().emplace_back(v);
    }
    return LinearChange(std::move(out));
}

LinearChange compose(const LinearChange& first, const LinearChange& second) {
    const std::size_t n = first.size();
    if (second.size() != n)
        throw DomainError("compose: size mismatch");
    std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (first.at(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                out[i][j] += first.at(i, k) * second.at(k, j);
        }
    return LinearChange(std::move(out));
}

Rational evaluate(const CubicForm& f, std::span<const std::int64_t> point) {
    if (point.size() != f.num_vars())
        throw DomainError("evaluate: point length does not match the form");
    Rational total = 0;
    for (const auto& [e, c] : f.terms()) {
        Rational term = c;
        for (std::size_t i = 0; i < f.num_vars(); ++i)
            for (unsigned k = 0; k < e[i]; ++k)
                term *= point[i];
        total += term;
    }
    return total;
}

CubicForm substitute(const CubicForm& f, const LinearChange& change) {
    const std::size_t n = f.num_vars();
    if (change.size() != n)
        throw DomainError("substitute: dimension mismatch");
    CubicForm::TermMap out;
    for (const auto& [e, c] : f.terms()) {
        // Multiply out the images of the three variables one at a time.
        CubicForm::TermMap product;
        product.emplace(Exponent{}, c);
        for (std::size_t var = 0; var < n; ++var) {
            for (unsigned k = 0; k < e[var]; ++k) {
                CubicForm::TermMap next;
                for (const auto& [pe, pc] : product)
                    for (std::size_t j = 0; j < n; ++j) {
                        if (change.at(var, j) == 0)
                            continue;
                        Exponent ne = pe;
                        ++ne[j];
                        accumulate(next, ne, pc * change.at(var, j));
                    }
                product = std::move(next);
            }
        }
        for (const auto& [pe, pc] : product)
            accumulate(out, pe, pc);
    }
    return CubicForm(n, out);
}

std::optional<Rational> is_proportional(const CubicForm& f, const CubicForm& g) {
    if (f.num_vars() != g.num_vars())
        throw DomainError("is_proportional: forms live in different numbers of variables");
    if (f.is_zero() && g.is_zero())
        return Rational(1);
    if (f.is_zero() || g.is_zero() || f.terms().size() != g.terms().size())
        return std::nullopt;
    std::optional<Rational> scale;
    for (const auto& [e, c] : f.terms()) {
        auto it = g.terms().find(e);
        if (it == g.terms().end())
            return std::nullopt;
        Rational ratio = c / it->second;
        if (scale && *scale != ratio)
            return std::nullopt;
        scale = ratio;
    }
    return scale;
}

// ---------------------------------------------------------------------------

CubicForm CatalogEntry::instantiate(std::span<const std::int64_t> params) const {
    if (params.size() != parameters.size())
        throw DomainError("catalog entry '" + tag + "' expects " + std::to_string(parameters.size()) +
                          " parameter(s)");
    return build(params);
}

const std::vector<CatalogEntry>& normal_form_catalog() {
    static const std::vector<CatalogEntry> catalog = [] {
        std::vector<CatalogEntry> c;
        c.push_back({"(t0^2+a t1^2)t2+t1^2(b t0+c t1)", 2, {"a", "b", "c"}, "a, b, c integers",
                     [](std::span<const std::int64_t> p) {
                         return CubicForm(3, {{1, {0, 0, 2}}, {p[0], {1, 1, 2}},
                                              {p[1], {0, 1, 1}}, {p[2], {1, 1, 1}}});
                     }});
        c.push_back({"t0t1t2+t0^3+a t1^3", 2, {"a"}, "a integer",
                     [](std::span<const std::int64_t> p) {
                         return CubicForm(3, {{1, {0, 1, 2}}, {1, {0, 0, 0}}, {p[0], {1, 1, 1}}});
                     }});
        c.push_back({"t0^2t2+t1^2t3", 3, {}, "",
                     [](std::span<const std::int64_t>) {
                         return CubicForm(4, {{1, {0, 0, 2}}, {1, {1, 1, 3}}});
                     }});
        c.push_back({"t0t1t2+t3(t0^2+a t1^2)", 3, {"a"}, "a squarefree, a not in {0, 1}",
                     [](std::span<const std::int64_t> p) {
                         if (p[0] == 0 || p[0] == 1 || !is_squarefree(p[0]))
                             throw DomainError("a must be squarefree and not in {0, 1}");
                         return CubicForm(4, {{1, {0, 1, 2}}, {1, {0, 0, 3}}, {p[0], {1, 1, 3}}});
                     }});
        c.push_back({"t0t1t2+t3t0^2+t1^3", 3, {}, "",
                     [](std::span<const std::int64_t>) {
                         return CubicForm(4, {{1, {0, 1, 2}}, {1, {0, 0, 3}}, {1, {1, 1, 1}}});
                     }});
        c.push_back({"t0^2t2+t0t1t3+t1^2t4", 4, {}, "",
                     [](std::span<const std::int64_t>) { return threefold_normal_form(); }});
        return c;
    }();
    return catalog;
}

const CatalogEntry& catalog_entry(const std::string& tag) {
    for (const auto& entry : normal_form_catalog())
        if (entry.tag == tag)
            return entry;
    throw DomainError("unknown catalogue tag '" + tag + "'");
}

SurfaceSpec SurfaceSpec::cayley(std::int64_t a) {
    if (a == 0 || !is_squarefree(a))
        throw DomainError("a must be a nonzero squarefree integer");
    return SurfaceSpec(SurfaceKind::Cayley, 3, "t0t1t2+t3(t0^2+a t1^2)", {a});
}

SurfaceSpec SurfaceSpec::threefold() {
    return SurfaceSpec(SurfaceKind::Threefold, 4, "t0^2t2+t1^2t3+t0t1t4", {});
}

SurfaceSpec SurfaceSpec::catalog(std::string tag, std::vector<std::int64_t> params) {
    const auto& entry = catalog_entry(tag);
    entry.instantiate(params);  // validates
    return SurfaceSpec(SurfaceKind::Catalog, entry.ambient_dim, std::move(tag), std::move(params));
}

std::int64_t SurfaceSpec::a() const {
    if (kind_ != SurfaceKind::Cayley)
        throw DomainError("surface has no parameter a");
    return params_.front();
}

std::string SurfaceSpec::name() const {
    switch (kind_) {
    case SurfaceKind::Cayley:
        return "cayley(a=" + std::to_string(params_.front()) + ")";
    case SurfaceKind::Threefold:
        return "threefold";
    case SurfaceKind::Catalog:
        break;
    }
    return tag_;
}

CubicForm surface_form(const SurfaceSpec& spec) {
    switch (spec.kind()) {
    case SurfaceKind::Cayley:
        return CubicForm(4, {{1, {0, 1, 2}}, {1, {0, 0, 3}}, {spec.a(), {1, 1, 3}}});
    case SurfaceKind::Threefold:
        return CubicForm(5, {{1, {0, 0, 2}}, {1, {1, 1, 3}}, {1, {0, 1, 4}}});
    case SurfaceKind::Catalog:
        break;
    }
    return catalog_entry(spec.tag()).instantiate(spec.params());
}

CubicForm threefold_normal_form() {
    return CubicForm(5, {{1, {0, 0, 2}}, {1, {0, 1, 3}}, {1, {1, 1, 4}}});
}

LinearChange threefold_swap() {
    return LinearChange::integral({{1, 0, 0, 0, 0},
                                   {0, 1, 0, 0, 0},
                                   {0, 0, 1, 0, 0},
                                   {0, 0, 0, 0, 1},
                                   {0, 0, 0, 1, 0}});
}

// ---------------------------------------------------------------------------

LinearChange aut_matrix(const AutParams& params) {
    using Row = std::vector<Rational>;
    std::vector<Row> rows;
    if (const auto* p = std::get_if<AutCaseOne>(&params)) {
        const auto& [a, c, d, u4, a31, a41] = *p;
        if (a * d - c == 0)
            throw DomainError("aut_matrix: alpha*delta - gamma must be nonzero");
        if (u4 == 0)
            throw DomainError("aut_matrix: u4 must be nonzero");
        rows = {
            Row{a, 1, 0, 0, 0},
            Row{c, d, 0, 0, 0},
            Row{-(c * a31 + c * d * a41), -(d * a31 + d * d * a41), u4 * d * d, -u4 * c * d, u4 * c * c},
            Row{a * a31 + (a * d - c) * a41, a31, -2 * u4 * d, u4 * (a * d + c), -2 * u4 * a * c},
            Row{a * a41, a41, u4, -u4 * a, u4 * a * a},
        };
    } else {
        const auto& [c, d, w4, a30, a40] = std::get<AutCaseTwo>(params);
        if (d == 0)
            throw DomainError("aut_matrix: delta must be nonzero");
        if (w4 == 0)
            throw DomainError("aut_matrix: w4 must be nonzero");
        rows = {
            Row{1, 0, 0, 0, 0},
            Row{c, d, 0, 0, 0},
            Row{-(c * a30 + c * c * a40), -(d * a30 + c * d * a40), w4 * d * d, -w4 * c * d, w4 * c * c},
            Row{a30, -d * a40, 0, w4 * d, -2 * w4 * c},
            Row{a40, 0, 0, 0, w4},
        };
    }
    return LinearChange(std::move(rows));
}

// ---------------------------------------------------------------------------

namespace {

void check_scroll_inputs(std::array<std::int64_t, 2> r, std::array<std::int64_t, 3> x) {
    if (r[0] == 0 && r[1] == 0)
        throw DomainError("scroll: row ratio (0, 0) is not a point of P^1");
    if (x[0] == 0 && x[1] == 0 && x[2] == 0)
        throw DomainError("scroll: (0, 0, 0) is not a point of P^2");
}

}  // namespace

ScrollPoint scroll_project(std::array<std::int64_t, 2> r, std::array<std::int64_t, 3> x) {
    check_scroll_inputs(r, x);
    const auto [a, b] = r;
    return {a * x[0], b * x[0], b * x[1], b * x[2] - a * x[1], -a * x[2]};
}

std::array<std::int64_t, 6> scroll_lift(std::array<std::int64_t, 2> r, std::array<std::int64_t, 3> x) {
    auto p = scroll_project(r, x);
    return {p[0], p[1], p[2], p[3], p[4], r[0] * x[1]};
}

bool scroll_rank_check(std::span<const std::int64_t, 6> p) {
    using W = __int128;
    const W top[3] = {p[0], p[5], -W(p[4])};
    const W bottom[3] = {p[1], p[2], W(p[3]) + p[5]};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (top[i] * bottom[j] - top[j] * bottom[i] != 0)
                return false;
    return true;
}

}  // namespace hypercubic
