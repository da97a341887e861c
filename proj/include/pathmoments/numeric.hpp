#pragma once

// Exact and high-precision number types shared by every module.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pathmoments {

using big_int = boost::multiprecision::mpz_int;
using rational = boost::multiprecision::mpq_rational;
using real = boost::multiprecision::mpfr_float;

/// Base class of every error raised by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct precondition_error : error {
    using error::error;
};

struct range_unavailable : error {
    using error::error;
};

struct precision_insufficient : error {
    using error::error;
};

inline big_int numerator_of(const rational& q) { return boost::multiprecision::numerator(q); }
inline big_int denominator_of(const rational& q) { return boost::multiprecision::denominator(q); }

inline big_int pow_int(const big_int& base, unsigned exponent) {
    return boost::multiprecision::pow(base, exponent);
}

inline rational pow_rat(const rational& base, unsigned exponent) {
    rational result{1};
    rational b = base;
    while (exponent) {
        if (exponent & 1U) result *= b;
        exponent >>= 1U;
        if (exponent) b *= b;
    }
    return result;
}

inline big_int factorial(unsigned n) {
    big_int f;
    mpz_fac_ui(f.backend().data(), n);
    return f;
}

inline big_int binomial(unsigned n, unsigned k) {
    big_int b;
    mpz_bin_uiui(b.backend().data(), n, k);
    return b;
}

/// Pascal triangle of machine-sized binomials, rows 0..n.
inline std::vector<std::vector<big_int>> binomial_table(unsigned n) {
    std::vector<std::vector<big_int>> t(n + 1);
    for (unsigned i = 0; i <= n; ++i) {
        t[i].resize(i + 1);
        t[i][0] = t[i][i] = 1;
        for (unsigned j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
    }
    return t;
}

/// "num/den" with an explicit denominator, always.
inline std::string to_fraction_string(const rational& q) {
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

/// Accepts "a/b" or "a"; rejects a zero denominator and stray characters.
inline rational parse_fraction(std::string_view text) {
    auto parse_int = [&](std::string_view s) {
        if (s.empty()) throw error("malformed fraction: '" + std::string(text) + "'");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw error("malformed fraction: '" + std::string(text) + "'");
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw error("malformed fraction: '" + std::string(text) + "'");
        }
        if (s[0] == '+') s.remove_prefix(1);
        return big_int(std::string(s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return rational(parse_int(text));
    big_int num = parse_int(text.substr(0, slash));
    big_int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw error("zero denominator in fraction: '" + std::string(text) + "'");
    return rational(num, den);
}

// Working precision is expressed in decimal digits. mpfr_float keeps a
// thread-local default; this guard scopes a change to it.
class precision_scope {
public:
    explicit precision_scope(unsigned digits10) : saved_(real::default_precision()) {
        real::default_precision(digits10);
    }
    ~precision_scope() { real::default_precision(saved_); }
    precision_scope(const precision_scope&) = delete;
    precision_scope& operator=(const precision_scope&) = delete;

private:
    unsigned saved_;
};

inline real to_real(const rational& q) {
    real r;
    mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
    return r;
}

inline real to_real(const big_int& z) {
    real r;
    mpfr_set_z(r.backend().data(), z.backend().data(), MPFR_RNDN);
    return r;
}

/// Scientific decimal with `digits` significant digits, round-half-even,
/// e.g. "-1.2345e-3". Zero prints as "0".
inline std::string to_decimal_string(const real& x, unsigned digits) {
    if (digits == 0) digits = 1;
    if (mpfr_zero_p(x.backend().data())) return "0";
    if (mpfr_nan_p(x.backend().data())) return "nan";
    if (mpfr_inf_p(x.backend().data())) return mpfr_sgn(x.backend().data()) < 0 ? "-inf" : "inf";
    mpfr_exp_t exp10 = 0;
    char* raw = mpfr_get_str(nullptr, &exp10, 10, digits, x.backend().data(), MPFR_RNDN);
    std::string mant(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (!mant.empty() && mant[0] == '-') {
        sign = "-";
        mant.erase(0, 1);
    }
    // mpfr returns 0.d1d2... x 10^exp10
    std::string out = sign + mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    out += "e" + std::to_string(static_cast<long long>(exp10) - 1);
    return out;
}

}  // namespace pathmoments
