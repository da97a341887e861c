#pragma once

// Raw, central and standardized area moments, and their extrapolated
// n -> infinity limits.

#include "pathmoments/budget.hpp"
#include "pathmoments/closed_form.hpp"
#include "pathmoments/numeric.hpp"
#include "pathmoments/paths.hpp"
#include "pathmoments/power_sums.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pathmoments {

struct zero_variance : error {
    using error::error;
};

/// m_r = S[r][n] / S[0][n] for r = 0..table.r_max().
inline std::vector<rational> raw_moments(const power_sum_table& table, unsigned n) {
    if (n > table.n_max()) throw range_unavailable("table stops at n=" + std::to_string(table.n_max()));
    const rational count(table.at(0, n));
    std::vector<rational> m;
    m.reserve(table.r_max() + 1);
    for (unsigned r = 0; r <= table.r_max(); ++r) m.push_back(rational(table.at(r, n)) / count);
    return m;
}

/// mu_r = sum_j binom(r,j) m_j (-m_1)^(r-j).
inline std::vector<rational> central_moments(std::span<const rational> raw) {
    if (raw.empty() || raw[0] != 1) throw precondition_error("raw moments must start with m_0 = 1");
    const std::size_t r_max = raw.size() - 1;
    const rational neg_mean = r_max >= 1 ? rational(-raw[1]) : rational(0);
    std::vector<rational> neg_mean_pow(r_max + 1);
    neg_mean_pow[0] = 1;
    for (std::size_t i = 1; i <= r_max; ++i) neg_mean_pow[i] = neg_mean_pow[i - 1] * neg_mean;
    const auto binom = binomial_table(static_cast<unsigned>(r_max));
    std::vector<rational> mu(r_max + 1);
    for (std::size_t r = 0; r <= r_max; ++r) {
        rational acc = 0;
        for (std::size_t j = 0; j <= r; ++j) acc += rational(binom[r][j]) * raw[j] * neg_mean_pow[r - j];
        mu[r] = acc;
    }
    return mu;
}

namespace detail {

inline constexpr unsigned guard_digits = 30;

// num / den^(r/2) with den > 0; for odd r one square root is the only
// irrational step.
inline real scaled_ratio(const rational& num, const rational& den_pow_half_floor, const rational& den, unsigned r) {
    if (r % 2 == 0) return to_real(num / den_pow_half_floor);
    return to_real(num / den_pow_half_floor) / sqrt(to_real(den));
}

}  // namespace detail

/// s_r = mu_r / mu_2^(r/2), indexed by r (s_0 = 1, s_1 = 0, s_2 = 1).
/// Computed exactly as a rational up to the final root and rounding.
inline std::vector<real> standardized_moments(std::span<const rational> central, unsigned precision_digits) {
    if (central.size() < 3) throw precondition_error("standardized moments need central moments up to mu_2");
    const rational& mu2 = central[2];
    if (mu2 <= 0) throw zero_variance("variance is zero; standardized moments undefined");
    precision_scope scope(precision_digits + detail::guard_digits);
    std::vector<real> s(central.size());
    rational mu2_pow = 1;  // mu_2^floor(r/2)
    for (unsigned r = 0; r < central.size(); ++r) {
        if (r >= 2 && r % 2 == 0) mu2_pow *= mu2;
        s[r] = detail::scaled_ratio(central[r], mu2_pow, mu2, r);
    }
    return s;
}

/// Same result as standardized_moments(central_moments(S/S_0)), but from the
/// integer power sums S_0..S_r directly: with
///   N_r = sum_j binom(r,j) S_j S_0^(j-1) (-S_1)^(r-j) = S_0^r mu_r
/// the count cancels and s_r = N_r / N_2^(r/2).
inline std::vector<real> standardized_from_power_sums(std::span<const big_int> sums, unsigned precision_digits) {
    if (sums.size() < 3) throw precondition_error("need power sums up to r = 2");
    const unsigned r_max = static_cast<unsigned>(sums.size() - 1);
    const auto binom = binomial_table(r_max);
    std::vector<big_int> s0_pow(r_max + 1), neg_s1_pow(r_max + 1);
    s0_pow[0] = 1;
    neg_s1_pow[0] = 1;
    const big_int neg_s1 = -sums[1];
    for (unsigned i = 1; i <= r_max; ++i) {
        s0_pow[i] = s0_pow[i - 1] * sums[0];
        neg_s1_pow[i] = neg_s1_pow[i - 1] * neg_s1;
    }
    auto scaled_central = [&](unsigned r) {
        big_int acc = neg_s1_pow[r];
        big_int term;
        for (unsigned j = 1; j <= r; ++j) {
            term = sums[j] * s0_pow[j - 1];
            term *= neg_s1_pow[r - j];
            if (binom[r][j] != 1) term *= binom[r][j];
            acc += term;
        }
        return acc;
    };
    const big_int n2 = scaled_central(2);
    if (n2 <= 0) throw zero_variance("variance is zero; standardized moments undefined");

    precision_scope scope(precision_digits + detail::guard_digits);
    std::vector<real> s(r_max + 1);
    s[0] = 1;
    s[1] = 0;
    s[2] = 1;
    big_int n2_pow = n2;  // N_2^floor(r/2)
    const real sqrt_n2 = sqrt(to_real(n2));
    for (unsigned r = 3; r <= r_max; ++r) {
        if (r % 2 == 0) n2_pow *= n2;
        real v = to_real(scaled_central(r)) / to_real(n2_pow);
        if (r % 2 == 1) v /= sqrt_n2;
        s[r] = v;
    }
    return s;
}

struct moment_vector {
    family path_family;
    unsigned n;
    std::vector<rational> raw;
    std::vector<rational> central;
    std::vector<real> standardized;  // indexed by r, empty when the variance is zero
};

inline moment_vector moments_at(const power_sum_table& table, unsigned n, unsigned precision_digits) {
    moment_vector mv{table.path_family(), n, raw_moments(table, n), {}, {}};
    mv.central = central_moments(mv.raw);
    if (mv.central.size() >= 3 && mv.central[2] > 0) mv.standardized = standardized_moments(mv.central, precision_digits);
    return mv;
}

// ---------------------------------------------------------------------------
// Richardson extrapolation in h = n^(-1/2)

struct limit_estimate {
    real value;
    real error_estimate;
    std::vector<std::vector<real>> ladder;  // ladder[i][k]: level i, k corrections removed
    unsigned ladder_top_n = 0;
};

/// Samples taken at n_i = n_base 4^i, so h halves per level and the k-th
/// column removes the h^k term: T[i][k] = T[i][k-1] + (T[i][k-1] - T[i-1][k-1]) / (2^k - 1).
inline limit_estimate richardson_halving(std::span<const real> samples, unsigned top_n, unsigned precision_digits) {
    if (samples.size() < 2) throw precondition_error("Richardson ladder needs at least two samples");
    precision_scope scope(precision_digits + detail::guard_digits);
    const std::size_t levels = samples.size();
    std::vector<std::vector<real>> t(levels);
    for (std::size_t i = 0; i < levels; ++i) {
        if (!boost::multiprecision::isfinite(samples[i]))
            throw precision_insufficient("non-finite sample in extrapolation ladder");
        t[i].push_back(samples[i]);
        for (std::size_t k = 1; k <= i; ++k) {
            const real factor = real(std::uint64_t{1} << k) - 1;
            t[i].push_back(t[i][k - 1] + (t[i][k - 1] - t[i - 1][k - 1]) / factor);
        }
    }
    const std::size_t last = levels - 1;
    limit_estimate est;
    est.value = t[last][last];
    real diag = abs(t[last][last] - t[last - 1][last - 1]);
    real row = abs(t[last][last] - t[last][last - 1]);
    est.error_estimate = diag > row ? diag : row;
    // rounding in the samples, amplified by the ladder weights
    real amplification = 1;
    for (std::size_t k = 1; k <= last; ++k) {
        const real p = real(std::uint64_t{1} << k);
        amplification *= (p + 1) / (p - 1);
    }
    real scale = 0;
    for (const auto& s : samples) scale = abs(s) > scale ? abs(s) : scale;
    const real noise = amplification * (scale + 1) * pow(real(10), -static_cast<int>(precision_digits));
    if (est.error_estimate < noise) est.error_estimate = noise;
    est.ladder = std::move(t);
    est.ladder_top_n = top_n;
    return est;
}

// ---------------------------------------------------------------------------
// Sources of power sums at arbitrary n

enum class moment_source { closed_form, table };

/// S_0..S_r_max at one n.
using power_sum_oracle = std::function<std::vector<big_int>(unsigned n)>;

/// Evaluates closed forms for r = 1..forms.size(); S_0 is the path count.
/// forms[i] must be the closed form for r = i + 1.
inline power_sum_oracle closed_form_oracle(family f, std::vector<closed_form> forms) {
    for (std::size_t i = 0; i < forms.size(); ++i)
        if (forms[i].r() != i + 1 || forms[i].path_family() != f)
            throw precondition_error("closed forms must cover r = 1, 2, ... consecutively for one family");
    return [f, forms = std::move(forms)](unsigned n) {
        const basis_point pt(f, n);
        std::vector<big_int> sums;
        sums.reserve(forms.size() + 1);
        sums.push_back(f == family::dyck ? pt.value(basis_element::catalan_n) : pt.value(basis_element::motzkin_n));
        for (const auto& cf : forms) {
            rational v = cf.evaluate(pt);
            if (denominator_of(v) != 1)
                throw error("closed form for r=" + std::to_string(cf.r()) + " is not integral at n=" + std::to_string(n));
            sums.push_back(numerator_of(v));
        }
        return sums;
    };
}

inline power_sum_oracle table_oracle(const power_sum_table& table) {
    return [&table](unsigned n) {
        std::vector<big_int> sums;
        for (unsigned r = 0; r <= table.r_max(); ++r) sums.push_back(table.at(r, n));
        return sums;
    };
}

struct limit_options {
    unsigned n_base = 1024;
    unsigned levels = 4;
    unsigned precision_digits = 60;
    const budget* limit = nullptr;
};

inline constexpr unsigned min_n_base = 64;

inline std::vector<unsigned> ladder_sizes(unsigned n_base, unsigned levels) {
    std::vector<unsigned> out;
    unsigned long long n = n_base;
    for (unsigned i = 0; i < levels; ++i, n *= 4) {
        if (n > (1ULL << 31)) throw precondition_error("ladder exceeds supported n");
        out.push_back(static_cast<unsigned>(n));
    }
    return out;
}

/// Extrapolated limits of s_3..s_r_max, one estimate per r (index 0 is r = 3).
inline std::vector<limit_estimate> limit_standardized_moments(const power_sum_oracle& sums, unsigned r_max,
                                                              const limit_options& opts = {}) {
    if (r_max < 3) throw precondition_error("standardized-moment limits start at r=3");
    if (opts.n_base < min_n_base) throw precondition_error("n_base must be at least " + std::to_string(min_n_base));
    if (opts.levels < 2) throw precondition_error("extrapolation needs at least two levels");
    const auto sizes = ladder_sizes(opts.n_base, opts.levels);
    std::vector<std::vector<real>> samples(r_max + 1);
    for (unsigned n : sizes) {
        if (opts.limit) opts.limit->check("standardized-moment sampling");
        auto s = sums(n);
        if (s.size() < r_max + 1) throw range_unavailable("power sums do not reach r=" + std::to_string(r_max));
        s.resize(r_max + 1);
        auto st = standardized_from_power_sums(s, opts.precision_digits);
        for (unsigned r = 3; r <= r_max; ++r) samples[r].push_back(st[r]);
    }
    std::vector<limit_estimate> out;
    for (unsigned r = 3; r <= r_max; ++r)
        out.push_back(richardson_halving(samples[r], sizes.back(), opts.precision_digits));
    return out;
}

inline limit_estimate limit_standardized_moment(const power_sum_oracle& sums, unsigned r,
                                                const limit_options& opts = {}) {
    if (r < 3) throw precondition_error("standardized-moment limits start at r=3");
    return limit_standardized_moments(sums, r, opts).back();
}

/// Extrapolates m_1(n) / n^(3/2) using the printed r = 1 closed form. The Dyck
/// limit is sqrt(pi). With one level the value is the raw sample at n_base and
/// the error is its difference to the sample at 4 n_base.
inline limit_estimate scaled_mean_check(family f, unsigned n_base, unsigned levels, unsigned precision_digits = 60) {
    if (n_base < min_n_base) throw precondition_error("n_base must be at least " + std::to_string(min_n_base));
    if (levels < 1) throw precondition_error("levels must be at least 1");
    const closed_form c1 = paper_formula(f, 1);
    const auto sizes = ladder_sizes(n_base, std::max(levels, 2U));
    std::vector<real> samples;
    {
        precision_scope scope(precision_digits + detail::guard_digits);
        for (unsigned n : sizes) {
            const basis_point pt(f, n);
            const big_int count = f == family::dyck ? pt.value(basis_element::catalan_n)
                                                    : pt.value(basis_element::motzkin_n);
            const rational mean = c1.evaluate(pt) / rational(count);
            const real nn = real(n);
            samples.push_back(to_real(mean) / (nn * sqrt(nn)));
        }
    }
    if (levels == 1) {
        precision_scope scope(precision_digits + detail::guard_digits);
        limit_estimate est;
        est.value = samples[0];
        est.error_estimate = abs(samples[1] - samples[0]);
        est.ladder = {{samples[0]}};
        est.ladder_top_n = sizes[0];
        return est;
    }
    return richardson_halving(samples, sizes.back(), precision_digits);
}

// ---------------------------------------------------------------------------
// Report

inline nlohmann::json moment_report_json(family f, const std::vector<limit_estimate>& limits, unsigned digits) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < limits.size(); ++i) {
        rows.push_back({{"r", i + 3},
                        {"limit", to_decimal_string(limits[i].value, digits)},
                        {"error_estimate", to_decimal_string(limits[i].error_estimate, 6)},
                        {"ladder_top_n", limits[i].ladder_top_n}});
    }
    return {{"family", std::string(to_string(f))}, {"moments", std::move(rows)}};
}

}  // namespace pathmoments
