#pragma once

/**
 * \file sequence.hpp
 *
 * Periodic sequences S = {p_1, ..., p_m} + period * Z in the real line.
 *
 * A sequence is stored by its period and its sorted motif inside [0, period).
 * Isometries of the line act on a sequence only through its cyclic gap
 * vector: translations rotate it and reflections reverse it.
 */

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace pdens {

/// Cyclic gaps d_i = p_{i+1} - p_i, the last one wrapping through the period.
struct GapVector {
    std::vector<Rational> values;

    std::size_t size() const noexcept { return values.size(); }
    const Rational& operator[](std::size_t i) const { return values[i]; }
    bool operator==(const GapVector&) const = default;
};

class PeriodicSequence {
public:
    /// Reduces points mod period, sorts them and rejects coincident points.
    static PeriodicSequence create(Rational period, std::vector<Rational> points) {
        if (period <= 0) throw error(errc::non_positive_period, "period must be positive, got " + to_string(period));
        if (points.empty()) throw error(errc::empty_motif, "motif has no points");
        for (auto& p : points) p = mod(p, period);
        std::sort(points.begin(), points.end());
        auto dup = std::adjacent_find(points.begin(), points.end());
        if (dup != points.end())
            throw error(errc::duplicate_point, "two motif points coincide at " + to_string(*dup) + " mod period");
        return PeriodicSequence(std::move(period), std::move(points));
    }

    const Rational& period() const noexcept { return period_; }
    std::span<const Rational> motif() const noexcept { return motif_; }
    std::size_t size() const noexcept { return motif_.size(); }

    bool operator==(const PeriodicSequence&) const = default;

private:
    PeriodicSequence(Rational period, std::vector<Rational> motif)
        : period_(std::move(period)), motif_(std::move(motif)) {}

    Rational period_;
    std::vector<Rational> motif_;
};

inline PeriodicSequence make_sequence(const Rational& period, std::vector<Rational> points) {
    return PeriodicSequence::create(period, std::move(points));
}

inline PeriodicSequence scale_to_unit(const PeriodicSequence& s) {
    if (s.period() == 1) return s;
    std::vector<Rational> pts;
    pts.reserve(s.size());
    for (const auto& p : s.motif()) pts.emplace_back(p / s.period());
    return PeriodicSequence::create(1, std::move(pts));
}

inline GapVector gaps(const PeriodicSequence& s) {
    auto m = s.motif();
    GapVector g;
    g.values.reserve(m.size());
    for (std::size_t i = 0; i + 1 < m.size(); ++i) g.values.emplace_back(m[i + 1] - m[i]);
    g.values.emplace_back(m.front() + s.period() - m.back());
    return g;
}

/// Sequence with p_1 = 0 and the given consecutive gaps; the period is their sum.
inline PeriodicSequence from_gaps(std::span<const Rational> gap_values) {
    if (gap_values.empty()) throw error(errc::empty_motif, "no gaps");
    std::vector<Rational> pts;
    pts.reserve(gap_values.size());
    Rational acc = 0;
    for (const auto& d : gap_values) {
        if (d <= 0) throw error(errc::invalid_argument, "gaps must be positive");
        pts.push_back(acc);
        acc += d;
    }
    return PeriodicSequence::create(acc, std::move(pts));
}

/// Re-expresses the sequence over its smallest period.
inline PeriodicSequence primitive_reduce(const PeriodicSequence& s) {
    const GapVector g = gaps(s);
    const std::size_t m = g.size();
    for (std::size_t q = 1; q < m; ++q) {
        if (m % q != 0) continue;
        bool periodic = true;
        for (std::size_t i = 0; i < m && periodic; ++i) periodic = g[i] == g[(i + q) % m];
        if (!periodic) continue;
        Rational period = 0;
        for (std::size_t i = 0; i < q; ++i) period += g[i];
        auto m_pts = s.motif();
        return PeriodicSequence::create(period, std::vector<Rational>(m_pts.begin(), m_pts.begin() + q));
    }
    return s;
}

inline bool is_generic(const PeriodicSequence& s) {
    std::vector<Rational> d = gaps(s).values;
    std::sort(d.begin(), d.end());
    return std::adjacent_find(d.begin(), d.end()) == d.end();
}

/// Start index of the lexicographically least rotation of a cyclic word.
template <typename T>
std::size_t least_rotation(std::span<const T> word) {
    const std::size_t n = word.size();
    std::size_t i = 0, j = 1, k = 0;
    while (i < n && j < n && k < n) {
        const T& a = word[(i + k) % n];
        const T& b = word[(j + k) % n];
        if (a == b) {
            ++k;
            continue;
        }
        if (a > b)
            i += k + 1;
        else
            j += k + 1;
        if (i == j) ++j;
        k = 0;
    }
    return std::min(i, j);
}

template <typename T>
std::vector<T> rotate_left(std::span<const T> word, std::size_t start) {
    std::vector<T> out;
    out.reserve(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) out.push_back(word[(start + i) % word.size()]);
    return out;
}

/// Least gap vector over all rotations and reversals; equal iff the sequences are isometric.
inline GapVector canonical_isometry_form(const PeriodicSequence& s) {
    std::vector<Rational> forward = gaps(s).values;
    std::vector<Rational> backward(forward.rbegin(), forward.rend());
    auto a = rotate_left<Rational>(forward, least_rotation<Rational>(forward));
    auto b = rotate_left<Rational>(backward, least_rotation<Rational>(backward));
    return GapVector{std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end()) ? std::move(b) : std::move(a)};
}

inline PeriodicSequence translate(const PeriodicSequence& s, const Rational& c) {
    std::vector<Rational> pts;
    for (const auto& p : s.motif()) pts.emplace_back(p + c);
    return PeriodicSequence::create(s.period(), std::move(pts));
}

/// Image under t -> -t.
inline PeriodicSequence reflect(const PeriodicSequence& s) {
    std::vector<Rational> pts;
    for (const auto& p : s.motif()) pts.emplace_back(-p);
    return PeriodicSequence::create(s.period(), std::move(pts));
}

} // namespace pdens
