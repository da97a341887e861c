#pragma once

// Closed forms  S_r(n) = sum_b poly_b(n) * basis_b(n)  over the Catalan basis
// {C_n, 4^n} or the Motzkin basis {M_n, M_{n+1}, 3^n, (-1)^n}: evaluation,
// fitting by undetermined coefficients, holdout checks and JSON/LaTeX forms.

#include "pathmoments/budget.hpp"
#include "pathmoments/counting.hpp"
#include "pathmoments/exact_solve.hpp"
#include "pathmoments/numeric.hpp"
#include "pathmoments/paths.hpp"
#include "pathmoments/power_sums.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace pathmoments {

enum class basis_element { catalan_n, four_pow_n, motzkin_n, motzkin_n_plus_1, three_pow_n, neg_one_pow_n };

inline std::string_view basis_id(basis_element b) {
    switch (b) {
    case basis_element::catalan_n: return "catalan_n";
    case basis_element::four_pow_n: return "four_pow_n";
    case basis_element::motzkin_n: return "motzkin_n";
    case basis_element::motzkin_n_plus_1: return "motzkin_n_plus_1";
    case basis_element::three_pow_n: return "three_pow_n";
    case basis_element::neg_one_pow_n: return "neg_one_pow_n";
    }
    return "?";
}

inline basis_element parse_basis_id(std::string_view id) {
    for (auto b : {basis_element::catalan_n, basis_element::four_pow_n, basis_element::motzkin_n,
                   basis_element::motzkin_n_plus_1, basis_element::three_pow_n, basis_element::neg_one_pow_n})
        if (basis_id(b) == id) return b;
    throw error("unknown basis element '" + std::string(id) + "'");
}

/// Basis of each family, in the order terms are printed.
inline const std::vector<basis_element>& family_basis(family f) {
    static const std::vector<basis_element> dyck{basis_element::catalan_n, basis_element::four_pow_n};
    static const std::vector<basis_element> motzkin{basis_element::motzkin_n, basis_element::motzkin_n_plus_1,
                                                    basis_element::three_pow_n, basis_element::neg_one_pow_n};
    return f == family::dyck ? dyck : motzkin;
}

inline bool belongs_to(basis_element b, family f) {
    const auto& fb = family_basis(f);
    return std::find(fb.begin(), fb.end(), b) != fb.end();
}

/// Values of every basis element of a family at one n.
class basis_point {
public:
    basis_point(family f, unsigned n) : family_(f), n_(n) {
        if (f == family::dyck) {
            catalan_ = catalan(n);
            four_pow_ = pow_int(big_int(4), n);
        } else {
            motzkin_ = motzkin(n);
            motzkin_next_ = motzkin(n + 1);
            three_pow_ = pow_int(big_int(3), n);
        }
    }

    basis_point(family f, unsigned n, big_int first, big_int second) : family_(f), n_(n) {
        if (f == family::dyck) {
            catalan_ = std::move(first);
            four_pow_ = pow_int(big_int(4), n);
        } else {
            motzkin_ = std::move(first);
            motzkin_next_ = std::move(second);
            three_pow_ = pow_int(big_int(3), n);
        }
    }

    family path_family() const { return family_; }
    unsigned n() const { return n_; }

    big_int value(basis_element b) const {
        if (!belongs_to(b, family_)) throw error("basis element " + std::string(basis_id(b)) + " is not in the " +
                                                 std::string(to_string(family_)) + " basis");
        switch (b) {
        case basis_element::catalan_n: return catalan_;
        case basis_element::four_pow_n: return four_pow_;
        case basis_element::motzkin_n: return motzkin_;
        case basis_element::motzkin_n_plus_1: return motzkin_next_;
        case basis_element::three_pow_n: return three_pow_;
        case basis_element::neg_one_pow_n: return n_ % 2 == 0 ? big_int(1) : big_int(-1);
        }
        return 0;
    }

private:
    family family_;
    unsigned n_;
    big_int catalan_, four_pow_, motzkin_, motzkin_next_, three_pow_;
};

/// Basis values for a contiguous range n = start .. start + count - 1, built
/// from the counting sequences.
inline std::vector<basis_point> basis_range(family f, unsigned start, unsigned count) {
    std::vector<basis_point> out;
    out.reserve(count);
    const unsigned last = start + count;  // one past; Motzkin needs M_{n+1}
    if (f == family::dyck) {
        auto c = catalan_sequence(last);
        for (unsigned n = start; n < last; ++n) out.emplace_back(f, n, c[n], big_int(0));
    } else {
        auto m = motzkin_sequence(last);
        for (unsigned n = start; n < last; ++n) out.emplace_back(f, n, m[n], m[n + 1]);
    }
    return out;
}

/// Polynomial in n with exact rational coefficients, index = power of n.
/// Trailing zeros are stripped, so the zero polynomial has no coefficients.
class rational_polynomial {
public:
    rational_polynomial() = default;
    explicit rational_polynomial(std::vector<rational> coefficients) : c_(std::move(coefficients)) { trim(); }

    const std::vector<rational>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    rational coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : rational(0); }

    rational operator()(const rational& n) const {
        rational acc = 0;
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * n + c_[k];
        return acc;
    }

    friend rational_polynomial operator+(const rational_polynomial& a, const rational_polynomial& b) {
        std::vector<rational> out(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = a.coefficient(k) + b.coefficient(k);
        return rational_polynomial(std::move(out));
    }

    friend rational_polynomial operator*(const rational& s, const rational_polynomial& p) {
        std::vector<rational> out(p.c_);
        for (auto& v : out) v *= s;
        return rational_polynomial(std::move(out));
    }

    bool operator==(const rational_polynomial&) const = default;

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<rational> c_;
};

class closed_form {
public:
    closed_form(family f, unsigned r) : family_(f), r_(r) {
        for (auto b : family_basis(f)) terms_[b] = rational_polynomial{};
    }

    closed_form(family f, unsigned r, std::map<basis_element, rational_polynomial> terms) : closed_form(f, r) {
        for (auto& [b, p] : terms) set(b, std::move(p));
    }

    family path_family() const { return family_; }
    unsigned r() const { return r_; }
    const std::map<basis_element, rational_polynomial>& terms() const { return terms_; }

    const rational_polynomial& term(basis_element b) const {
        auto it = terms_.find(b);
        if (it == terms_.end())
            throw error("basis element " + std::string(basis_id(b)) + " is not part of a " +
                        std::string(to_string(family_)) + " closed form");
        return it->second;
    }

    void set(basis_element b, rational_polynomial p) {
        if (!belongs_to(b, family_))
            throw error("basis element " + std::string(basis_id(b)) + " cannot appear in a " +
                        std::string(to_string(family_)) + " closed form");
        terms_[b] = std::move(p);
    }

    rational evaluate(const basis_point& at) const {
        if (at.path_family() != family_) throw error("basis point family mismatch");
        const rational n(at.n());
        rational total = 0;
        for (const auto& [b, p] : terms_) {
            if (p.is_zero()) continue;
            total += p(n) * rational(at.value(b));
        }
        return total;
    }

    rational evaluate(unsigned n) const { return evaluate(basis_point(family_, n)); }

    friend closed_form operator+(const closed_form& a, const closed_form& b) {
        if (a.family_ != b.family_) throw error("cannot add closed forms of different families");
        closed_form out(a.family_, a.r_);
        for (auto bas : family_basis(a.family_)) out.set(bas, a.term(bas) + b.term(bas));
        return out;
    }

    friend closed_form operator*(const rational& s, const closed_form& a) {
        closed_form out(a.family_, a.r_);
        for (auto bas : family_basis(a.family_)) out.set(bas, s * a.term(bas));
        return out;
    }

    bool operator==(const closed_form&) const = default;

private:
    family family_;
    unsigned r_;
    std::map<basis_element, rational_polynomial> terms_;
};

// ---------------------------------------------------------------------------
// Fitting by undetermined coefficients

struct insufficient_data : error {
    using error::error;
};

inline constexpr unsigned default_guard = 10;

struct fit_options {
    unsigned guard = default_guard;
    unsigned r = 0;  // recorded on the resulting closed form
    const budget* limit = nullptr;
};

/// Fit outcome. `form` is empty when the system was inconsistent or had no
/// unique solution.
struct fit_result {
    solve_status status = solve_status::inconsistent;
    std::optional<closed_form> form;
    unsigned window_end = 0;  // last n used by the fit

    explicit operator bool() const { return form.has_value(); }
};

namespace detail {

inline family basis_family(const std::vector<basis_element>& basis) {
    if (basis.empty()) throw precondition_error("fit basis is empty");
    for (family f : {family::dyck, family::motzkin}) {
        if (std::all_of(basis.begin(), basis.end(), [&](basis_element b) { return belongs_to(b, f); })) return f;
    }
    throw precondition_error("fit basis mixes Catalan and Motzkin elements");
}

inline unsigned unknown_count(const std::vector<basis_element>& basis, const std::map<basis_element, unsigned>& degrees) {
    unsigned u = 0;
    for (auto b : basis) {
        auto it = degrees.find(b);
        if (it == degrees.end()) throw precondition_error("no degree given for " + std::string(basis_id(b)));
        u += it->second + 1;
    }
    return u;
}

// One row per n: columns n^k * basis_b(n) in basis order, then the value.
// Rows are scaled by the value's denominator so everything is integral.
inline augmented_matrix build_system(std::span<const rational> values, std::span<const basis_point> points,
                                     const std::vector<basis_element>& basis,
                                     const std::map<basis_element, unsigned>& degrees, unsigned rows) {
    const unsigned u = unknown_count(basis, degrees);
    augmented_matrix m(rows, u);
    for (unsigned i = 0; i < rows; ++i) {
        const basis_point& pt = points[i];
        const big_int den = denominator_of(values[i]);
        std::size_t col = 0;
        for (auto b : basis) {
            big_int entry = pt.value(b) * den;
            for (unsigned k = 0; k <= degrees.at(b); ++k) {
                m(i, col++) = entry;
                entry *= pt.n();
            }
        }
        m(i, u) = numerator_of(values[i]);
    }
    return m;
}

inline closed_form assemble(family f, unsigned r, const std::vector<basis_element>& basis,
                            const std::map<basis_element, unsigned>& degrees, const std::vector<rational>& x) {
    closed_form cf(f, r);
    std::size_t col = 0;
    for (auto b : basis) {
        std::vector<rational> c(x.begin() + static_cast<std::ptrdiff_t>(col),
                                x.begin() + static_cast<std::ptrdiff_t>(col + degrees.at(b) + 1));
        col += degrees.at(b) + 1;
        cf.set(b, rational_polynomial(std::move(c)));
    }
    return cf;
}

inline fit_result fit_with_points(std::span<const rational> values, std::span<const basis_point> points,
                                  const std::vector<basis_element>& basis,
                                  const std::map<basis_element, unsigned>& degrees, const fit_options& opts,
                                  bool screen) {
    const family f = basis_family(basis);
    const unsigned u = unknown_count(basis, degrees);
    const unsigned rows = u + opts.guard;
    const unsigned start = points.empty() ? 0 : points.front().n();
    fit_result result;
    result.window_end = start + rows - 1;

    augmented_matrix m = build_system(values, points, basis, degrees, rows);
    if (screen) {
        auto ranks = modular_screen(m);
        if (ranks.augmented_rank > ranks.coefficient_rank && ranks.augmented_rank > u) {
            result.status = solve_status::inconsistent;
            return result;
        }
    }
    auto solved = solve_exact(std::move(m), opts.limit);
    result.status = solved.status;
    if (solved.status != solve_status::unique) return result;

    closed_form cf = assemble(f, opts.r, basis, degrees, solved.solution);
    // every equation of the window, guard rows included, must hold exactly
    for (unsigned i = 0; i < rows; ++i) {
        if (cf.evaluate(points[i]) != values[i]) {
            result.status = solve_status::inconsistent;
            return result;
        }
    }
    result.form = std::move(cf);
    return result;
}

}  // namespace detail

/// Fits `values` (the sequence at n = start, start+1, ...) to the closed-form
/// format with the given per-element polynomial degrees. Uses exactly
/// unknowns + guard consecutive values; the solution must be unique and
/// satisfy every one of those equations.
inline fit_result fit(std::span<const rational> values, unsigned start, const std::vector<basis_element>& basis,
                      const std::map<basis_element, unsigned>& degrees, const fit_options& opts = {}) {
    if (opts.guard < 1) throw precondition_error("guard must be at least 1");
    const family f = detail::basis_family(basis);
    const unsigned u = detail::unknown_count(basis, degrees);
    const unsigned rows = u + opts.guard;
    if (values.size() < rows)
        throw insufficient_data("fit needs " + std::to_string(rows) + " values (" + std::to_string(u) +
                                " unknowns + " + std::to_string(opts.guard) + " guard), got " +
                                std::to_string(values.size()));
    auto points = basis_range(f, start, rows);
    return detail::fit_with_points(values.first(rows), points, basis, degrees, opts, false);
}

inline std::vector<rational> to_rationals(std::span<const big_int> values) {
    return {values.begin(), values.end()};
}

struct auto_fit_result {
    closed_form form;
    unsigned uniform_degree;
    unsigned window_end;  // last n used by the successful fit
};

/// Uniform-degree search d = 0, 1, ..., max_degree; returns the first exact
/// fit (with trailing zero coefficients trimmed per element), or nothing.
/// Candidates that a modular rank computation proves inconsistent are skipped
/// without exact elimination.
inline std::optional<auto_fit_result> auto_fit(std::span<const rational> values, unsigned start,
                                               const std::vector<basis_element>& basis, unsigned max_degree,
                                               const fit_options& opts = {}) {
    if (opts.guard < 1) throw precondition_error("guard must be at least 1");
    const family f = detail::basis_family(basis);
    const auto needed = static_cast<unsigned>(basis.size() * (max_degree + 1) + opts.guard);
    if (values.size() < needed)
        throw insufficient_data("auto_fit up to degree " + std::to_string(max_degree) + " needs " +
                                std::to_string(needed) + " values, got " + std::to_string(values.size()));
    auto points = basis_range(f, start, needed);
    for (unsigned d = 0; d <= max_degree; ++d) {
        if (opts.limit) opts.limit->check("closed-form degree search");
        std::map<basis_element, unsigned> degrees;
        for (auto b : basis) degrees[b] = d;
        const unsigned rows = static_cast<unsigned>(basis.size()) * (d + 1) + opts.guard;
        auto res = detail::fit_with_points(values.first(rows), std::span(points).first(rows), basis, degrees, opts,
                                           true);
        if (res.form) return auto_fit_result{std::move(*res.form), d, res.window_end};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Printed formulas for Dyck r = 1..5 and Motzkin r = 1..4

struct not_in_vault : error {
    using error::error;
};

namespace detail {

inline rational_polynomial poly(std::initializer_list<const char*> coefficients) {
    std::vector<rational> c;
    for (const char* s : coefficients) c.push_back(parse_fraction(s));
    return rational_polynomial(std::move(c));
}

}  // namespace detail

inline closed_form paper_formula(family f, unsigned r) {
    using detail::poly;
    using B = basis_element;
    if (f == family::dyck) {
        switch (r) {
        case 1:
            return {f, r, {{B::catalan_n, poly({"-1", "-2"})}, {B::four_pow_n, poly({"1"})}}};
        case 2:
            return {f, r, {{B::catalan_n, poly({"2", "26/3", "11", "10/3"})}, {B::four_pow_n, poly({"-2", "-4"})}}};
        case 3:
            return {f, r,
                    {{B::catalan_n, poly({"-4", "-26", "-61", "-60", "-20"})},
                     {B::four_pow_n, poly({"4", "33/2", "75/4", "15/4"})}}};
        case 4:
            return {f, r,
                    {{B::catalan_n, poly({"8", "2416/35", "74332/315", "14016/35", "108043/315", "4568/35", "884/63"})},
                     {B::four_pow_n, poly({"-8", "-50", "-111", "-101", "-30"})}}};
        case 5:
            return {f, r,
                    {{B::catalan_n, poly({"-16", "-3608/21", "-48520/63", "-116888/63", "-162091/63", "-128174/63",
                                          "-53044/63", "-8840/63"})},
                     {B::four_pow_n,
                      poly({"16", "535/4", "7035/16", "22825/32", "18485/32", "6495/32", "565/32"})}}};
        default: break;
        }
    } else {
        switch (r) {
        case 1:
            // 3^{n+1}/4 is stored as (3/4) 3^n
            return {f, r,
                    {{B::motzkin_n, poly({"-1", "-1"})},
                     {B::three_pow_n, poly({"3/4"})},
                     {B::neg_one_pow_n, poly({"1/4"})}}};
        case 2:
            return {f, r,
                    {{B::motzkin_n, poly({"7/3", "191/36", "11/3", "25/36"})},
                     {B::motzkin_n_plus_1, poly({"-1/3", "-31/36", "-2/3", "-5/36"})},
                     {B::three_pow_n, poly({"-3/2", "-3/2"})},
                     {B::neg_one_pow_n, poly({"-1/2", "-1/2"})}}};
        case 3:
            return {f, r,
                    {{B::motzkin_n, poly({"-5", "-203/12", "-251/12", "-133/12", "-25/12"})},
                     {B::motzkin_n_plus_1, poly({"1", "43/12", "55/12", "29/12", "5/12"})},
                     {B::three_pow_n, poly({"1503/512", "1521/256", "207/64", "15/64"})},
                     {B::neg_one_pow_n, poly({"545/512", "585/256", "93/64", "15/64"})}}};
        case 4:
            return {f, r,
                    {{B::motzkin_n, poly({"3314/315", "59401/1260", "34189/405", "72251/945", "411613/11340",
                                          "31441/3780", "221/324"})},
                     {B::motzkin_n_plus_1, poly({"-794/315", "-6349/540", "-122653/5670", "-10781/540",
                                                 "-27248/2835", "-1409/630", "-221/1134"})},
                     {B::three_pow_n, poly({"-735/128", "-2241/128", "-1197/64", "-63/8", "-15/16"})},
                     {B::neg_one_pow_n, poly({"-289/128", "-947/128", "-573/64", "-19/4", "-15/16"})}}};
        default: break;
        }
    }
    throw not_in_vault("no printed formula for " + std::string(to_string(f)) + " r=" + std::to_string(r));
}

inline bool in_vault(family f, unsigned r) {
    return r >= 1 && r <= (f == family::dyck ? 5U : 4U);
}

// ---------------------------------------------------------------------------
// Holdout verification

struct holdout_result {
    bool pass = true;
    std::optional<unsigned> first_mismatch;

    explicit operator bool() const { return pass; }
};

inline holdout_result verify_holdout(const closed_form& cf, const power_sum_table& table, unsigned n_from,
                                     unsigned n_to) {
    if (table.path_family() != cf.path_family()) throw precondition_error("table and closed form families differ");
    if (cf.r() > table.r_max() || n_to > table.n_max() || n_from > n_to)
        throw range_unavailable("table does not cover r=" + std::to_string(cf.r()) + " on n=" +
                                std::to_string(n_from) + ".." + std::to_string(n_to));
    auto points = basis_range(cf.path_family(), n_from, n_to - n_from + 1);
    for (const auto& pt : points) {
        if (cf.evaluate(pt) != rational(table.at(cf.r(), pt.n()))) return {false, pt.n()};
    }
    return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::json to_json(const closed_form& cf) {
    nlohmann::json terms = nlohmann::json::object();
    for (const auto& [b, p] : cf.terms()) {
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& c : p.coefficients()) coeffs.push_back(to_fraction_string(c));
        terms[std::string(basis_id(b))] = std::move(coeffs);
    }
    return {{"family", std::string(to_string(cf.path_family()))}, {"r", cf.r()}, {"terms", std::move(terms)}};
}

inline closed_form closed_form_from_json(const nlohmann::json& j) {
    const family f = parse_family(j.at("family").get<std::string>());
    const auto r = j.at("r").get<unsigned>();
    closed_form cf(f, r);
    for (const auto& [id, coeffs] : j.at("terms").items()) {
        std::vector<rational> c;
        for (const auto& s : coeffs) c.push_back(parse_fraction(s.get<std::string>()));
        cf.set(parse_basis_id(id), rational_polynomial(std::move(c)));
    }
    return cf;
}

// ---------------------------------------------------------------------------
// LaTeX

/// Descending powers, e.g. "\frac{10}{3} n^{3}+11 n^{2}+\frac{26}{3} n +2".
inline std::string latex_polynomial(const rational_polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t k = p.coefficients().size(); k-- > 0;) {
        const rational& c = p.coefficients()[k];
        if (c.is_zero()) continue;
        std::string sign = c < 0 ? "-" : (first ? "" : "+");
        rational a = abs(c);
        std::string mag;
        if (k == 0 || a != 1)
            mag = denominator_of(a) == 1 ? numerator_of(a).str()
                                         : "\\frac{" + numerator_of(a).str() + "}{" + denominator_of(a).str() + "}";
        std::string var = k == 0 ? "" : (k == 1 ? "n" : "n^{" + std::to_string(k) + "}");
        out += sign + mag + (mag.empty() || var.empty() ? "" : " ") + var + (k == 1 ? " " : "");
        first = false;
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

inline std::string to_latex(const closed_form& cf) {
    std::ostringstream out;
    const std::string r = std::to_string(cf.r());
    std::vector<std::string> parts;
    auto wrap = [](const rational_polynomial& p) { return "\\left(" + latex_polynomial(p) + "\\right)"; };
    if (cf.path_family() == family::dyck) {
        out << "C_{" << r << "}(n)=";
        const auto& p1 = cf.term(basis_element::catalan_n);
        const auto& p2 = cf.term(basis_element::four_pow_n);
        if (!p1.is_zero()) parts.push_back("\\frac{\\left(2 n \\right)! " + wrap(p1) + "}{n ! \\left(1+n \\right)!}");
        if (!p2.is_zero()) parts.push_back("4^{n} " + wrap(p2));
    } else {
        out << "M_{" << r << "}(n)=";
        const std::pair<basis_element, const char*> order[] = {{basis_element::motzkin_n, "M_{n}"},
                                                               {basis_element::motzkin_n_plus_1, "M_{n+1}"},
                                                               {basis_element::three_pow_n, "3^{n}"},
                                                               {basis_element::neg_one_pow_n, "\\left(-1\\right)^{n}"}};
        for (const auto& [b, sym] : order) {
            const auto& p = cf.term(b);
            if (!p.is_zero()) parts.push_back(wrap(p) + " " + sym);
        }
    }
    if (parts.empty()) out << "0";
    for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? "+" : "") << parts[i];
    return out.str();
}

}  // namespace pathmoments
