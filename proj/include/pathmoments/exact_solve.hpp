#pragma once

// Exact solution of overdetermined integer systems A x = b.

#include "pathmoments/budget.hpp"
#include "pathmoments/numeric.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace pathmoments {

/// Dense row-major integer matrix; the last column is the right-hand side.
class augmented_matrix {
public:
    augmented_matrix(std::size_t rows, std::size_t unknowns)
        : rows_(rows), cols_(unknowns + 1), data_(rows * (unknowns + 1)) {}

    std::size_t rows() const { return rows_; }
    std::size_t unknowns() const { return cols_ - 1; }

    big_int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const big_int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<big_int> data_;
};

enum class solve_status { unique, inconsistent, underdetermined };

struct solve_result {
    solve_status status;
    std::vector<rational> solution;  // filled only when status == unique
};

/// Fraction-free (Bareiss) elimination with row pivoting over all rows, then
/// exact back substitution. Every surplus row beyond the unknowns must reduce
/// to 0 = 0 for the system to count as consistent.
inline solve_result solve_exact(augmented_matrix m, const budget* limit = nullptr) {
    const std::size_t rows = m.rows();
    const std::size_t n = m.unknowns();
    if (rows < n) return {solve_status::underdetermined, {}};

    big_int prev = 1;
    big_int tmp;
    for (std::size_t col = 0; col < n; ++col) {
        if (limit) limit->check("exact elimination");
        std::size_t pivot = col;
        while (pivot < rows && m(pivot, col).is_zero()) ++pivot;
        if (pivot == rows) return {solve_status::underdetermined, {}};
        m.swap_rows(pivot, col);
        mpz_srcptr p = m(col, col).backend().data();
        for (std::size_t i = col + 1; i < rows; ++i) {
            mpz_srcptr lead = m(i, col).backend().data();
            for (std::size_t j = col + 1; j <= n; ++j) {
                mpz_ptr target = m(i, j).backend().data();
                mpz_mul(tmp.backend().data(), p, target);
                mpz_submul(tmp.backend().data(), lead, m(col, j).backend().data());
                mpz_divexact(target, tmp.backend().data(), prev.backend().data());
            }
            m(i, col) = 0;
        }
        prev = m(col, col);
    }
    for (std::size_t i = n; i < rows; ++i)
        if (!m(i, n).is_zero()) return {solve_status::inconsistent, {}};

    std::vector<rational> x(n);
    for (std::size_t k = n; k-- > 0;) {
        rational acc(m(k, n));
        for (std::size_t j = k + 1; j < n; ++j)
            if (!m(k, j).is_zero() && !x[j].is_zero()) acc -= rational(m(k, j)) * x[j];
        x[k] = acc / rational(m(k, k));
    }
    return {solve_status::unique, std::move(x)};
}

namespace detail {

inline constexpr std::uint64_t screen_prime = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % screen_prime);
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1U) r = mul_mod(r, a);
        a = mul_mod(a, a);
        e >>= 1U;
    }
    return r;
}

inline std::uint64_t reduce_mod(const big_int& z) {
    return mpz_fdiv_ui(z.backend().data(), screen_prime);
}

}  // namespace detail

struct modular_ranks {
    std::size_t coefficient_rank;
    std::size_t augmented_rank;
};

/// Ranks of A and [A | b] modulo the prime 2^61 - 1. Reduction mod p can only
/// lower a rank, so augmented_rank > unknowns proves the system inconsistent
/// over the rationals.
inline modular_ranks modular_screen(const augmented_matrix& m) {
    using namespace detail;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.unknowns() + 1;
    std::vector<std::uint64_t> a(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) a[r * cols + c] = reduce_mod(m(r, c));

    std::size_t rank = 0;
    std::size_t coefficient_rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank)
            for (std::size_t k = 0; k < cols; ++k) std::swap(a[pivot * cols + k], a[rank * cols + k]);
        const std::uint64_t inv = pow_mod(a[rank * cols + c], screen_prime - 2);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            std::uint64_t f = a[r * cols + c];
            if (f == 0) continue;
            f = mul_mod(f, inv);
            for (std::size_t k = c; k < cols; ++k) {
                std::uint64_t sub = mul_mod(f, a[rank * cols + k]);
                std::uint64_t& v = a[r * cols + k];
                v = v >= sub ? v - sub : v + screen_prime - sub;
            }
        }
        ++rank;
        if (c + 1 < cols) coefficient_rank = rank;
    }
    return {coefficient_rank, rank};
}

}  // namespace pathmoments
