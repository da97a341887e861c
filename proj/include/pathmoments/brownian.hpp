#pragma once

// Moments of the Brownian excursion area, exact up to powers of sqrt(2) and
// sqrt(pi), via the Takacs constants K_k.

#include "pathmoments/numeric.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pathmoments {

struct domain_error : error {
    using error::error;
};

/// q * 2^(p/2) * pi^(s/2). Kept canonical with p in {0, 1} by folding even
/// powers of sqrt(2) into q. s counts factors of sqrt(pi) and may be any
/// integer; products of excursion moments reach whole powers of pi.
class surd {
public:
    surd() = default;
    surd(rational q, int p = 0, int s = 0) : q_(std::move(q)), p_(p), s_(s) { canonicalize(); }

    const rational& q() const { return q_; }
    int p() const { return p_; }
    int s() const { return s_; }

    bool is_rational() const { return p_ == 0 && (s_ == 0 || q_.is_zero()); }

    friend surd operator*(const surd& a, const surd& b) { return surd(a.q_ * b.q_, a.p_ + b.p_, a.s_ + b.s_); }

    friend surd operator/(const surd& a, const surd& b) {
        if (b.q_.is_zero()) throw domain_error("division by a zero surd");
        return surd(a.q_ / b.q_, a.p_ - b.p_, a.s_ - b.s_);
    }

    /// Defined only between like terms (same p and s) or with a zero operand.
    friend surd operator+(const surd& a, const surd& b) {
        if (a.q_.is_zero()) return b;
        if (b.q_.is_zero()) return a;
        if (a.p_ != b.p_ || a.s_ != b.s_) throw domain_error("cannot add surds with different radicals");
        return surd(a.q_ + b.q_, a.p_, a.s_);
    }

    friend surd operator-(const surd& a) { return surd(-a.q_, a.p_, a.s_); }

    bool operator==(const surd&) const = default;

    /// Numeric value at the current default precision of `real`.
    real value() const {
        real v = to_real(q_);
        if (p_ == 1) v *= sqrt(real(2));
        if (s_ != 0) {
            real pi;
            mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
            v *= pow(sqrt(pi), s_);
        }
        return v;
    }

private:
    void canonicalize() {
        if (q_.is_zero()) {
            p_ = 0;
            s_ = 0;
            return;
        }
        // 2^(p/2) = 2^floor(p/2) * 2^((p mod 2)/2)
        int half = p_ >= 0 ? p_ / 2 : -((-p_ + 1) / 2);
        p_ -= 2 * half;
        if (half > 0) q_ *= rational(pow_int(big_int(2), static_cast<unsigned>(half)));
        if (half < 0) q_ /= rational(pow_int(big_int(2), static_cast<unsigned>(-half)));
    }

    rational q_{0};
    int p_ = 0;
    int s_ = 0;
};

/// K_0 = -1/2, K_k = (3k-4)/4 K_{k-1} + sum_{j=1}^{k-1} K_j K_{k-j} for k >= 1.
inline std::vector<rational> takacs_K(unsigned k_max) {
    std::vector<rational> K(k_max + 1);
    K[0] = rational(-1, 2);
    for (unsigned k = 1; k <= k_max; ++k) {
        rational v = rational(3 * static_cast<long>(k) - 4, 4) * K[k - 1];
        for (unsigned j = 1; j < k; ++j) v += K[j] * K[k - j];
        K[k] = v;
    }
    return K;
}

/// Gamma at a positive integer or half-integer.
inline surd gamma_exact(const rational& x) {
    if (x <= 0) throw domain_error("gamma_exact needs a positive argument");
    const big_int den = denominator_of(x);
    const big_int num = numerator_of(x);
    if (den == 1) {
        return surd(rational(factorial(static_cast<unsigned>(num) - 1)));
    }
    if (den == 2) {
        // x = m + 1/2: (2m)! sqrt(pi) / (4^m m!)
        const auto m = static_cast<unsigned>((num - 1) / 2);
        rational q(factorial(2 * m), pow_int(big_int(4), m) * factorial(m));
        return surd(q, 0, 1);
    }
    throw domain_error("gamma_exact needs an integer or half-integer argument");
}

/// E[B^k] = 4 sqrt(pi) 2^(-k/2) k! K_k / Gamma((3k-1)/2) for k >= 1; E[B^0] = 1.
inline surd excursion_raw_moment(unsigned k, const std::vector<rational>& K) {
    if (k == 0) return surd(rational(1));
    if (k >= K.size()) throw range_unavailable("Takacs sequence too short for k=" + std::to_string(k));
    const surd prefactor(rational(4) * rational(factorial(k)) * K[k], -static_cast<int>(k), 1);
    return prefactor / gamma_exact(rational(3 * static_cast<long>(k) - 1, 2));
}

/// A sum of surds grouped by radical class, evaluated numerically only at the end.
class surd_sum {
public:
    void add(const surd& term) {
        if (term.q().is_zero()) return;
        auto key = std::make_pair(term.p(), term.s());
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, term);
            return;
        }
        it->second = it->second + term;
        if (it->second.q().is_zero()) terms_.erase(it);
    }

    const std::map<std::pair<int, int>, surd>& terms() const { return terms_; }

    real value() const {
        real total = 0;
        for (const auto& [key, t] : terms_) total += t.value();
        return total;
    }

private:
    std::map<std::pair<int, int>, surd> terms_;
};

/// Central moment of order k as a symbolic sum over radical classes.
inline surd_sum excursion_central_moment(unsigned k, const std::vector<rational>& K) {
    const surd mean = excursion_raw_moment(1, K);
    const surd neg_mean = -mean;
    surd_sum out;
    surd neg_mean_pow(rational(1));
    std::vector<surd> powers{neg_mean_pow};
    for (unsigned i = 1; i <= k; ++i) powers.push_back(powers.back() * neg_mean);
    for (unsigned j = 0; j <= k; ++j) {
        surd term = surd(rational(binomial(k, j))) * excursion_raw_moment(j, K) * powers[k - j];
        out.add(term);
    }
    return out;
}

namespace detail {

inline real excursion_standardized_at(unsigned k, const std::vector<rational>& K, unsigned working_digits) {
    precision_scope scope(working_digits);
    real mu_k = excursion_central_moment(k, K).value();
    real mu_2 = excursion_central_moment(2, K).value();
    return mu_k / pow(sqrt(mu_2), static_cast<int>(k));
}

}  // namespace detail

/// mu_k / mu_2^(k/2) to at least `digits` significant digits, confirmed by
/// recomputing with twice the guard digits.
inline real excursion_standardized_moment(unsigned k, unsigned digits) {
    if (k < 2) throw precondition_error("standardized moments start at k=2");
    const auto K = takacs_K(k);
    const unsigned guard = 20 + 2 * k;
    real a = detail::excursion_standardized_at(k, K, digits + guard);
    real b = detail::excursion_standardized_at(k, K, digits + 2 * guard);
    precision_scope scope(digits + 2 * guard);
    real tolerance = pow(real(10), -static_cast<int>(digits) - 1) * (abs(b) + 1);
    if (abs(a - b) > tolerance)
        throw precision_insufficient("excursion moment k=" + std::to_string(k) + " unstable at " +
                                     std::to_string(digits) + " digits");
    return b;
}

/// Oracle table row: {"k", "raw": {"q","p","s"}, "standardized"}.
inline nlohmann::json excursion_oracle_json(unsigned k_max, unsigned digits) {
    const auto K = takacs_K(k_max);
    nlohmann::json rows = nlohmann::json::array();
    for (unsigned k = 1; k <= k_max; ++k) {
        surd raw = excursion_raw_moment(k, K);
        nlohmann::json row{{"k", k},
                           {"raw", {{"q", to_fraction_string(raw.q())}, {"p", raw.p()}, {"s", raw.s()}}}};
        if (k >= 2) row["standardized"] = to_decimal_string(excursion_standardized_moment(k, digits), digits);
        else row["standardized"] = "0";
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace pathmoments
