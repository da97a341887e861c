#pragma once

// Exact power-sum tables S[r][n] = sum over paths of size n of Area^r,
// computed by a moment-vector dynamic program over (position, height).

#include "pathmoments/budget.hpp"
#include "pathmoments/counting.hpp"
#include "pathmoments/numeric.hpp"
#include "pathmoments/paths.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

namespace pathmoments {

inline constexpr unsigned default_r_limit = 20;

class power_sum_table {
public:
    power_sum_table(family f, unsigned r_max, unsigned n_max, std::vector<std::vector<big_int>> entries)
        : family_(f), r_max_(r_max), n_max_(n_max), entries_(std::move(entries)) {}

    family path_family() const { return family_; }
    unsigned r_max() const { return r_max_; }
    unsigned n_max() const { return n_max_; }

    const big_int& at(unsigned r, unsigned n) const {
        if (r > r_max_ || n > n_max_)
            throw range_unavailable("power-sum table has no entry (r=" + std::to_string(r) + ", n=" +
                                    std::to_string(n) + ")");
        return entries_[r][n];
    }

    const std::vector<big_int>& row(unsigned r) const {
        if (r > r_max_) throw range_unavailable("power-sum table has no row r=" + std::to_string(r));
        return entries_[r];
    }

private:
    family family_;
    unsigned r_max_;
    unsigned n_max_;
    std::vector<std::vector<big_int>> entries_;
};

struct table_options {
    unsigned r_limit = default_r_limit;  // largest r accepted without override
    const budget* limit = nullptr;
};

/// Builds S[r][n] for 0 <= r <= r_max, 0 <= n <= n_max.
///
/// One forward scan over positions keeps, for each height h, the vector
/// V_j(h) = sum over valid prefixes ending at height h of (doubled area)^j.
/// A step adding doubled area d maps V_j to sum_t binom(j,t) d^(j-t) V_t.
/// Prefixes that end on the axis are complete paths, so every size up to
/// n_max is read off the same scan.
inline power_sum_table build_power_sum_table(family f, unsigned n_max, unsigned r_max,
                                             const table_options& opts = {}) {
    if (r_max > opts.r_limit)
        throw precondition_error("r_max " + std::to_string(r_max) + " exceeds the limit " +
                                 std::to_string(opts.r_limit));

    const unsigned length = path_length(f, n_max);
    const unsigned max_height = length / 2;
    const unsigned width = r_max + 1;

    // coef[d][j][t] = binom(j,t) d^(j-t), d ranging over possible doubled-area increments
    const unsigned max_delta = 2 * max_height + 1;
    const auto binom = binomial_table(r_max);
    std::vector<std::vector<std::vector<big_int>>> coef(max_delta + 1);
    for (unsigned d = 0; d <= max_delta; ++d) {
        auto& c = coef[d];
        c.assign(width, std::vector<big_int>(width));
        std::vector<big_int> powers(width);
        powers[0] = 1;
        for (unsigned e = 1; e < width; ++e) powers[e] = powers[e - 1] * d;
        for (unsigned j = 0; j < width; ++j)
            for (unsigned t = 0; t <= j; ++t) c[j][t] = binom[j][t] * powers[j - t];
    }

    std::vector<std::vector<big_int>> entries(width, std::vector<big_int>(n_max + 1));
    using column = std::vector<std::vector<big_int>>;
    column cur(max_height + 1, std::vector<big_int>(width));
    column next(max_height + 1, std::vector<big_int>(width));
    cur[0][0] = 1;

    std::vector<big_int> divisors(width);
    for (unsigned j = 0; j < width; ++j) divisors[j] = pow_int(big_int(2), j);

    auto record = [&](unsigned size, const std::vector<big_int>& v) {
        for (unsigned j = 0; j < width; ++j) {
            big_int q, rem;
            boost::multiprecision::divide_qr(v[j], divisors[j], q, rem);
            if (rem != 0) throw error("doubled-area moment not divisible by 2^r");
            entries[j][size] = std::move(q);
        }
    };
    record(0, cur[0]);

    auto push = [&](const std::vector<big_int>& from, std::vector<big_int>& to, unsigned delta) {
        const auto& c = coef[delta];
        for (unsigned j = 0; j < width; ++j) {
            mpz_ptr target = to[j].backend().data();
            for (unsigned t = 0; t <= j; ++t) {
                if (from[t].is_zero()) continue;
                mpz_addmul(target, c[j][t].backend().data(), from[t].backend().data());
            }
        }
    };

    unsigned cur_top = 0;  // highest populated height in cur
    for (unsigned pos = 0; pos < length; ++pos) {
        if (opts.limit) opts.limit->check("power-sum table construction");
        const unsigned remaining_after = length - pos - 1;
        const unsigned next_top = std::min({pos + 1, max_height, remaining_after});
        for (unsigned h = 0; h <= next_top; ++h)
            for (auto& v : next[h]) v = 0;
        for (unsigned h = 0; h <= cur_top; ++h) {
            const auto& from = cur[h];
            if (from[0].is_zero()) continue;  // unreachable height
            if (h + 1 <= next_top) push(from, next[h + 1], 2 * h + 1);
            if (f == family::motzkin && h <= next_top) push(from, next[h], 2 * h);
            if (h >= 1 && h - 1 <= next_top) push(from, next[h - 1], 2 * h - 1);
        }
        std::swap(cur, next);
        cur_top = next_top;

        const unsigned steps = pos + 1;
        if (f == family::dyck) {
            if (steps % 2 == 0) record(steps / 2, cur[0]);
        } else {
            record(steps, cur[0]);
        }
    }

    return power_sum_table(f, r_max, n_max, std::move(entries));
}

/// CSV dump: family,r,n,value (value as a decimal integer), rows ordered by r then n.
inline void write_table_csv(const power_sum_table& table, std::ostream& out) {
    out << "family,r,n,value\n";
    for (unsigned r = 0; r <= table.r_max(); ++r)
        for (unsigned n = 0; n <= table.n_max(); ++n)
            out << to_string(table.path_family()) << ',' << r << ',' << n << ',' << table.at(r, n).str() << '\n';
}

}  // namespace pathmoments
