#pragma once

#include "pathmoments/numeric.hpp"

#include <vector>

namespace pathmoments {

/// (2n)! / (n! (n+1)!)
inline big_int catalan(unsigned n) {
    return binomial(2 * n, n) / (n + 1);
}

/// Sum over r of n! (2r)! / (r!^2 (r+1)! (n-r)!), i.e. binom(n, 2r) * catalan(r).
/// Terms vanish for 2r > n. Consecutive terms differ by the factor
/// (n-2r)(n-2r-1) / ((r+1)(r+2)), applied with exact division.
inline big_int motzkin(unsigned n) {
    big_int term = 1;
    big_int sum = 0;
    for (unsigned r = 0; 2 * r <= n; ++r) {
        sum += term;
        if (2 * r + 2 > n) break;
        term *= static_cast<unsigned long>(n - 2 * r);
        term *= static_cast<unsigned long>(n - 2 * r - 1);
        mpz_divexact_ui(term.backend().data(), term.backend().data(), static_cast<unsigned long>(r + 1));
        mpz_divexact_ui(term.backend().data(), term.backend().data(), static_cast<unsigned long>(r + 2));
    }
    return sum;
}

inline std::vector<big_int> catalan_sequence(unsigned n_max) {
    std::vector<big_int> out;
    out.reserve(n_max + 1);
    big_int c = 1;
    for (unsigned n = 0; n <= n_max; ++n) {
        out.push_back(c);
        // C_{n+1} = C_n * 2(2n+1) / (n+2)
        c *= 2 * (2 * n + 1);
        c /= (n + 2);
    }
    return out;
}

inline std::vector<big_int> motzkin_sequence(unsigned n_max) {
    std::vector<big_int> out;
    out.reserve(n_max + 1);
    for (unsigned n = 0; n <= n_max; ++n) out.push_back(motzkin(n));
    return out;
}

}  // namespace pathmoments
