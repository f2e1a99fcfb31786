#pragma once

// Shared fixtures and test-only reference computations.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <pdens/pdens.hpp>

namespace pdens::testing {

inline std::vector<Rational> ints(std::initializer_list<long> v) {
    std::vector<Rational> out;
    for (long x : v) out.push_back(rational(x));
    return out;
}

inline PeriodicSequence s15() { return make_sequence(15, ints({0, 1, 3, 4, 5, 7, 9, 10, 12})); }
inline PeriodicSequence q15() { return make_sequence(15, ints({0, 1, 3, 4, 6, 8, 9, 12, 14})); }
inline PeriodicSequence three_points() { return make_sequence(1, {rational(0), rational(1, 3), rational(1, 2)}); }
inline PeriodicSequence single_point() { return make_sequence(1, {rational(0)}); }

inline PiecewiseLinear pwl(std::initializer_list<std::pair<Rational, Rational>> pts) {
    std::vector<Corner> cs;
    for (const auto& [x, y] : pts) cs.push_back({x, y});
    return from_corners(std::move(cs));
}

/// m distinct points k/N in [0, 1), N <= max_den.
inline PeriodicSequence random_sequence(std::mt19937_64& rng, std::size_t max_m, long max_den) {
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, max_m)(rng);
    const long den = std::uniform_int_distribution<long>(static_cast<long>(m), max_den)(rng);
    std::set<long> nums;
    while (nums.size() < m) nums.insert(std::uniform_int_distribution<long>(0, den - 1)(rng));
    std::vector<Rational> pts;
    for (long n : nums) pts.push_back(rational(n, den));
    return make_sequence(1, std::move(pts));
}

/// Unit-period sequence with pairwise distinct gaps, m in [1, max_m].
inline PeriodicSequence random_generic(std::mt19937_64& rng, std::size_t max_m) {
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, max_m)(rng);
    std::vector<long> pool(60);
    std::iota(pool.begin(), pool.end(), 1);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<Rational> g;
    for (std::size_t i = 0; i < m; ++i) g.push_back(rational(pool[i]));
    return scale_to_unit(from_gaps(g));
}

/// Brute-force isometry test: some rotation of gaps(a), or of its reversal, equals gaps(b).
inline bool isometric_brute_force(const PeriodicSequence& a, const PeriodicSequence& b) {
    std::vector<Rational> ga = gaps(a).values, gb = gaps(b).values;
    if (ga.size() != gb.size()) return false;
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t r = 0; r < ga.size(); ++r) {
            std::rotate(ga.begin(), ga.begin() + 1, ga.end());
            if (ga == gb) return true;
        }
        std::reverse(ga.begin(), ga.end());
    }
    return false;
}

/// psi_k as a left fold of add() over the individual trapezoids.
inline PiecewiseLinear psi_by_folding(const PeriodicSequence& s, long k) {
    PiecewiseLinear sum;
    for (const auto& tr : trapezoid_triples(s, k)) sum = add(sum, trapezoid(tr));
    return sum;
}

/// Every corner x of the functions plus the midpoints between them.
inline std::vector<Rational> sample_grid(const std::vector<PiecewiseLinear>& fs) {
    std::vector<Rational> xs{Rational(0)};
    for (const auto& f : fs)
        for (const auto& c : f.corners()) xs.push_back(c.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    const std::size_t n = xs.size();
    for (std::size_t i = 0; i + 1 < n; ++i) xs.emplace_back((xs[i] + xs[i + 1]) / 2);
    std::sort(xs.begin(), xs.end());
    return xs;
}

} // namespace pdens::testing
