#pragma once

// Dyck and Motzkin lattice paths: enumeration, areas and brute-force power sums.

#include "pathmoments/counting.hpp"
#include "pathmoments/numeric.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pathmoments {

enum class family { dyck, motzkin };

inline std::string_view to_string(family f) { return f == family::dyck ? "dyck" : "motzkin"; }

inline family parse_family(std::string_view text) {
    if (text == "dyck") return family::dyck;
    if (text == "motzkin") return family::motzkin;
    throw precondition_error("unknown path family '" + std::string(text) + "' (expected dyck or motzkin)");
}

/// Number of paths of size n: catalan(n) for Dyck (semilength n), motzkin(n)
/// for Motzkin (n steps).
inline big_int path_count(family f, unsigned n) { return f == family::dyck ? catalan(n) : motzkin(n); }

/// Step count of a path of size n.
inline unsigned path_length(family f, unsigned n) { return f == family::dyck ? 2 * n : n; }

// Declaration order is the enumeration order.
enum class step : std::int8_t { up, flat, down };

inline int height_change(step s) {
    switch (s) {
    case step::up: return 1;
    case step::down: return -1;
    case step::flat: return 0;
    }
    return 0;
}

struct cap_exceeded : error {
    using error::error;
};

struct invalid_path : error {
    using error::error;
};

class lattice_path {
public:
    lattice_path(family f, std::vector<step> steps) : family_(f), steps_(std::move(steps)) { validate(); }

    /// Parses "UDF..." notation.
    static lattice_path parse(family f, std::string_view text) {
        std::vector<step> steps;
        steps.reserve(text.size());
        for (char c : text) {
            switch (c) {
            case 'U': steps.push_back(step::up); break;
            case 'D': steps.push_back(step::down); break;
            case 'F': steps.push_back(step::flat); break;
            default: throw invalid_path(std::string("unknown step '") + c + "'");
            }
        }
        return lattice_path(f, std::move(steps));
    }

    family path_family() const { return family_; }
    const std::vector<step>& steps() const { return steps_; }

    std::string str() const {
        std::string s;
        s.reserve(steps_.size());
        for (step st : steps_) s += st == step::up ? 'U' : st == step::down ? 'D' : 'F';
        return s;
    }

    /// Mirror image: reverse the order and swap up with down.
    lattice_path reversed() const {
        std::vector<step> out(steps_.rbegin(), steps_.rend());
        for (step& s : out) {
            if (s == step::up) s = step::down;
            else if (s == step::down) s = step::up;
        }
        return lattice_path(family_, std::move(out));
    }

    bool operator==(const lattice_path&) const = default;

private:
    void validate() const {
        long height = 0;
        for (step s : steps_) {
            if (family_ == family::dyck && s == step::flat) throw invalid_path("Dyck paths have no flat steps");
            height += height_change(s);
            if (height < 0) throw invalid_path("path goes below the x axis");
        }
        if (height != 0) throw invalid_path("path does not end on the x axis");
    }

    family family_;
    std::vector<step> steps_;
};

/// Twice the trapezoid area between the path and the x axis: the sum over
/// steps of (height before + height after). Always even.
inline std::uint64_t doubled_area(const lattice_path& path) {
    std::uint64_t total = 0;
    long h = 0;
    for (step s : path.steps()) {
        long next = h + height_change(s);
        total += static_cast<std::uint64_t>(h + next);
        h = next;
    }
    return total;
}

namespace detail {

// Depth-first walk in lexicographic step order. `visit` receives the step
// buffer and the doubled area of each complete path.
template <class Visit>
void walk_paths(family f, unsigned length, std::vector<step>& buf, long height, std::uint64_t area2, Visit& visit) {
    const auto pos = static_cast<unsigned>(buf.size());
    if (pos == length) {
        visit(buf, area2);
        return;
    }
    const long remaining = static_cast<long>(length - pos);
    // up: must still be able to come back down in the remaining steps
    if (height + 1 <= remaining - 1) {
        buf.push_back(step::up);
        walk_paths(f, length, buf, height + 1, area2 + static_cast<std::uint64_t>(2 * height + 1), visit);
        buf.pop_back();
    }
    if (f == family::motzkin && height <= remaining - 1) {
        buf.push_back(step::flat);
        walk_paths(f, length, buf, height, area2 + static_cast<std::uint64_t>(2 * height), visit);
        buf.pop_back();
    }
    if (height > 0) {
        buf.push_back(step::down);
        walk_paths(f, length, buf, height - 1, area2 + static_cast<std::uint64_t>(2 * height - 1), visit);
        buf.pop_back();
    }
}

}  // namespace detail

/// Calls `visit(const lattice_path&)` for every path of size n, each exactly
/// once, in lexicographic order with up < flat < down.
template <class Visit>
void for_each_path(family f, unsigned n, Visit&& visit) {
    const unsigned length = path_length(f, n);
    std::vector<step> buf;
    buf.reserve(length);
    auto adapter = [&](const std::vector<step>& steps, std::uint64_t) { visit(lattice_path(f, steps)); };
    detail::walk_paths(f, length, buf, 0, 0, adapter);
}

inline std::vector<lattice_path> enumerate_paths(family f, unsigned n) {
    std::vector<lattice_path> out;
    for_each_path(f, n, [&](const lattice_path& p) { out.push_back(p); });
    return out;
}

inline constexpr std::uint64_t default_enumeration_cap = 10'000'000;

/// Sum of Area(P)^r over all paths of size n, by full enumeration.
inline big_int power_sum_bruteforce(family f, unsigned n, unsigned r,
                                    std::uint64_t cap = default_enumeration_cap) {
    if (path_count(f, n) > cap)
        throw cap_exceeded("enumerating " + std::string(to_string(f)) + "(" + std::to_string(n) +
                           ") exceeds the cap of " + std::to_string(cap) + " paths");
    big_int total = 0;
    std::vector<step> buf;
    buf.reserve(path_length(f, n));
    auto accumulate = [&](const std::vector<step>&, std::uint64_t area2) {
        total += pow_int(big_int(area2), r);
    };
    detail::walk_paths(f, path_length(f, n), buf, 0, 0, accumulate);
    big_int scale = pow_int(big_int(2), r);
    if (total % scale != 0) throw error("doubled-area power sum not divisible by 2^r");
    return total / scale;
}

}  // namespace pathmoments
