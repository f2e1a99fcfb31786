#pragma once

/**
 * \file pwl.hpp
 *
 * Exact piecewise-linear functions on t >= 0 with bounded support.
 *
 * A function is its list of corners sorted by x. Between consecutive corners
 * it is linear; beyond the last corner it is 0; before the first corner it is
 * 0 (when the first corner sits at x = 0 the domain simply starts there).
 * The canonical form has strictly increasing x, no three consecutive collinear
 * corners, and no redundant zero corners at either end, so two canonical
 * functions are equal iff their corner lists are equal.
 */

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace pdens {

struct Corner {
    Rational x;
    Rational y;

    bool operator==(const Corner&) const = default;
};

/// Parameters (d_left, s, d_right) of one trapezoid summand of a density function.
struct TrapezoidTriple {
    Rational d_left;
    Rational s;
    Rational d_right;

    bool operator==(const TrapezoidTriple&) const = default;
};

class PiecewiseLinear {
public:
    PiecewiseLinear() = default;

    static PiecewiseLinear from_corners(std::vector<Corner> raw) {
        for (const auto& c : raw) {
            if (c.x < 0) throw error(errc::negative_coordinate, "corner x " + to_string(c.x) + " < 0");
            if (c.y < 0) throw error(errc::negative_coordinate, "corner y " + to_string(c.y) + " < 0");
        }
        std::stable_sort(raw.begin(), raw.end(), [](const Corner& a, const Corner& b) { return a.x < b.x; });

        std::vector<Corner> uniq;
        uniq.reserve(raw.size());
        for (auto& c : raw) {
            if (!uniq.empty() && uniq.back().x == c.x) {
                if (uniq.back().y != c.y)
                    throw error(errc::inconsistent_corner,
                                "x = " + to_string(c.x) + " has values " + to_string(uniq.back().y) + " and " + to_string(c.y));
                continue;
            }
            uniq.push_back(std::move(c));
        }
        return PiecewiseLinear(canonical(std::move(uniq)));
    }

    /// Trusted constructor for corners already in canonical form; checked only in debug builds.
    static PiecewiseLinear from_canonical_corners(std::vector<Corner> c) {
        assert(canonical(c) == c);
        return PiecewiseLinear(std::move(c));
    }

    const std::vector<Corner>& corners() const noexcept { return corners_; }
    bool is_zero() const noexcept { return corners_.empty(); }

    /// Value at t; at an end corner the corner's own value.
    Rational operator()(const Rational& t) const {
        if (corners_.empty() || t < corners_.front().x || t > corners_.back().x) return 0;
        auto it = std::lower_bound(corners_.begin(), corners_.end(), t,
                                   [](const Corner& c, const Rational& v) { return c.x < v; });
        if (it->x == t) return it->y;
        return interpolate(*(it - 1), *it, t);
    }

    /// Limit from the left (0 at or before the first corner).
    Rational left_limit(const Rational& t) const {
        if (corners_.empty() || t <= corners_.front().x || t > corners_.back().x) return 0;
        return (*this)(t);
    }

    /// Limit from the right (0 at or after the last corner).
    Rational right_limit(const Rational& t) const {
        if (corners_.empty() || t < corners_.front().x || t >= corners_.back().x) return 0;
        return (*this)(t);
    }

    bool operator==(const PiecewiseLinear&) const = default;

private:
    explicit PiecewiseLinear(std::vector<Corner> c) : corners_(std::move(c)) {}

    static Rational interpolate(const Corner& a, const Corner& b, const Rational& t) {
        Rational v = a.y + (b.y - a.y) * (t - a.x) / (b.x - a.x);
        return v;
    }

    static bool collinear(const Corner& a, const Corner& b, const Corner& c) {
        return (b.y - a.y) * (c.x - b.x) == (c.y - b.y) * (b.x - a.x);
    }

    // Input sorted with distinct x.
    static std::vector<Corner> canonical(std::vector<Corner> c) {
        std::size_t lead = 0;
        while (lead + 1 < c.size() && c[lead].y == 0 && c[lead + 1].y == 0) ++lead;
        c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lead));
        while (c.size() >= 2 && c.back().y == 0 && c[c.size() - 2].y == 0) c.pop_back();
        if (c.size() == 1 && c.front().y == 0) c.clear();

        std::vector<Corner> out;
        out.reserve(c.size());
        for (auto& p : c) {
            while (out.size() >= 2 && collinear(out[out.size() - 2], out.back(), p)) out.pop_back();
            out.push_back(std::move(p));
        }
        return out;
    }

    std::vector<Corner> corners_;
};

inline PiecewiseLinear from_corners(std::vector<Corner> raw) { return PiecewiseLinear::from_corners(std::move(raw)); }

inline Rational evaluate(const PiecewiseLinear& f, const Rational& t) { return f(t); }

inline bool equal(const PiecewiseLinear& f, const PiecewiseLinear& g) { return f == g; }

namespace detail {

inline std::vector<Rational> merged_breakpoints(const PiecewiseLinear& f, const PiecewiseLinear& g) {
    std::vector<Rational> xs;
    xs.reserve(f.corners().size() + g.corners().size());
    for (const auto& c : f.corners()) xs.push_back(c.x);
    for (const auto& c : g.corners()) xs.push_back(c.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

// Pointwise f + sign * g over the merged breakpoints.
inline std::vector<Corner> combine(const PiecewiseLinear& f, const PiecewiseLinear& g, int sign) {
    std::vector<Rational> xs = merged_breakpoints(f, g);
    std::vector<Corner> out;
    out.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const Rational& x = xs[i];
        Rational left = f.left_limit(x) + sign * g.left_limit(x);
        Rational right = f.right_limit(x) + sign * g.right_limit(x);
        if (xs.size() == 1) {
            out.push_back({x, Rational(f(x) + sign * g(x))});
        } else if (i == 0) {
            out.push_back({x, right});
        } else if (i + 1 == xs.size()) {
            out.push_back({x, left});
        } else {
            if (left != right)
                throw error(errc::discontinuous_sum, "sum jumps at x = " + to_string(x));
            out.push_back({x, left});
        }
    }
    return out;
}

} // namespace detail

inline PiecewiseLinear add(const PiecewiseLinear& f, const PiecewiseLinear& g) {
    return from_corners(detail::combine(f, g, 1));
}

/// f - g; throws NegativeCoordinate if the difference dips below zero.
inline PiecewiseLinear subtract(const PiecewiseLinear& f, const PiecewiseLinear& g) {
    return from_corners(detail::combine(f, g, -1));
}

/// Scales values by a non-negative factor.
inline PiecewiseLinear scale_values(const PiecewiseLinear& f, const Rational& factor) {
    std::vector<Corner> out;
    for (const auto& c : f.corners()) out.push_back({c.x, Rational(c.y * factor)});
    return from_corners(std::move(out));
}

/// Scales the argument: g(t) = f(t / factor), factor > 0.
inline PiecewiseLinear scale_argument(const PiecewiseLinear& f, const Rational& factor) {
    if (factor <= 0) throw error(errc::invalid_argument, "argument scale must be positive");
    std::vector<Corner> out;
    for (const auto& c : f.corners()) out.push_back({Rational(c.x * factor), c.y});
    return from_corners(std::move(out));
}

/// g(t) = f(c - t). The support of f must lie in [0, c].
inline PiecewiseLinear reflect_about(const PiecewiseLinear& f, const Rational& c) {
    const auto& cs = f.corners();
    if (cs.empty()) return f;
    for (const auto& p : cs)
        if (p.x > c && p.y != 0)
            throw error(errc::support_exceeds_reflection,
                        "value " + to_string(p.y) + " at " + to_string(p.x) + " beyond " + to_string(c));
    if (cs.back().x > c && f.right_limit(c) != 0)
        throw error(errc::support_exceeds_reflection, "function is nonzero right of " + to_string(c));

    std::vector<Corner> out;
    for (const auto& p : cs)
        if (p.x <= c) out.push_back({Rational(c - p.x), p.y});
    if (c > cs.front().x && c < cs.back().x) out.push_back({Rational(0), f(c)});
    return from_corners(std::move(out));
}

/// g(t) = f(t - c) for t >= c, 0 before.
inline PiecewiseLinear shift_right(const PiecewiseLinear& f, const Rational& c) {
    if (c < 0) throw error(errc::invalid_argument, "shift must be non-negative");
    std::vector<Corner> out;
    for (const auto& p : f.corners()) out.push_back({Rational(p.x + c), p.y});
    return from_corners(std::move(out));
}

/// f on [lo, hi], zero elsewhere. hi defaults to the end of the support.
inline PiecewiseLinear restrict_to(const PiecewiseLinear& f, const Rational& lo, std::optional<Rational> hi = std::nullopt) {
    const auto& cs = f.corners();
    if (cs.empty()) return f;
    const Rational upper = hi ? *hi : cs.back().x;
    if (upper < lo) return {};
    // f is continuous strictly inside its support.
    std::vector<Corner> out;
    if (lo > cs.front().x && lo < cs.back().x) out.push_back({lo, f(lo)});
    for (const auto& p : cs)
        if (lo <= p.x && p.x <= upper) out.push_back(p);
    if (upper > cs.front().x && upper < cs.back().x) out.push_back({upper, f(upper)});
    return from_corners(std::move(out));
}

/// Exact area under f.
inline Rational integral(const PiecewiseLinear& f) {
    const auto& cs = f.corners();
    Rational area = 0;
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) area += (cs[i + 1].x - cs[i].x) * (cs[i].y + cs[i + 1].y) / 2;
    return area;
}

/// Trapezoid with corners (s/2, 0), ((min+s)/2, min), ((max+s)/2, min), ((d_left+s+d_right)/2, 0).
inline PiecewiseLinear trapezoid(const TrapezoidTriple& tr) {
    if (tr.d_left <= 0 || tr.d_right <= 0)
        throw error(errc::invalid_argument, "trapezoid outer entries must be positive");
    if (tr.s < 0) throw error(errc::invalid_argument, "trapezoid middle entry must be non-negative");
    const Rational& lo = tr.d_left < tr.d_right ? tr.d_left : tr.d_right;
    const Rational& hi = tr.d_left < tr.d_right ? tr.d_right : tr.d_left;
    return from_corners({
        {Rational(tr.s / 2), Rational(0)},
        {Rational((lo + tr.s) / 2), lo},
        {Rational((hi + tr.s) / 2), lo},
        {Rational((tr.d_left + tr.s + tr.d_right) / 2), Rational(0)},
    });
}

} // namespace pdens
