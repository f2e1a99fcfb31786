#pragma once

/**
 * \file density.hpp
 *
 * Closed-form density functions psi_k of a periodic sequence.
 *
 * psi_k(t) is the fraction of a period covered by exactly k of the closed
 * intervals [p - t, p + t], p in S. All radii here are measured in units of
 * the period: every entry point rescales its input to period 1 first.
 *
 *  - psi_0 is read off the sorted gaps.
 *  - For 1 <= k <= m, psi_k is a sum of m trapezoids, one per motif point i,
 *    built from (d_{i-1}, d_i + ... + d_{i+k-2}, d_{i+k-1}).
 *  - For k > m, psi_{k+m}(t + 1/2) = psi_k(t).
 *  - psi_{m-k}(1/2 - t) = psi_k(t) on [0, 1/2], so k <= m/2 determines all.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "pwl.hpp"
#include "rational.hpp"
#include "sequence.hpp"

namespace pdens {

struct Fingerprint {
    std::size_t motif_size = 0;
    /// Length unit of the radii: 1 when rescaled, the sequence period otherwise.
    Rational period = 1;
    /// functions[k] is psi_k.
    std::vector<PiecewiseLinear> functions;
    /// rho[k] is the area under psi_k.
    std::vector<Rational> rho;

    bool operator==(const Fingerprint&) const = default;
};

struct FingerprintOptions {
    bool primitive_reduce = true;
    bool rescale = true;
    /// Highest k to emit; defaults to floor(m / 2).
    std::optional<std::size_t> k_max;
};

struct DensityReport {
    long k = 0;
    PiecewiseLinear psi;
    Rational rho;
    std::vector<TrapezoidTriple> triples;
};

inline PiecewiseLinear psi0(const PeriodicSequence& seq) {
    const PeriodicSequence s = scale_to_unit(seq);
    std::vector<Rational> d = gaps(s).values;
    std::sort(d.begin(), d.end());
    const std::size_t m = d.size();

    std::vector<Corner> corners;
    corners.reserve(m + 1);
    corners.push_back({Rational(0), Rational(1)});
    Rational covered = 0; // sum of the gaps already fully covered
    for (std::size_t i = 0; i < m; ++i) {
        Rational y = 1 - covered - static_cast<long>(m - i) * d[i];
        corners.push_back({Rational(d[i] / 2), y});
        covered += d[i];
    }
    return from_corners(std::move(corners));
}

inline std::vector<TrapezoidTriple> trapezoid_triples(const PeriodicSequence& seq, long k) {
    const std::size_t m = seq.size();
    if (k < 1 || static_cast<std::size_t>(k) > m)
        throw error(errc::k_out_of_range, "k = " + std::to_string(k) + " outside [1, " + std::to_string(m) + "]");
    const GapVector d = gaps(scale_to_unit(seq));
    const std::size_t kk = static_cast<std::size_t>(k);

    // s for point 0 is d_0 + ... + d_{k-2}; slide the window by one gap per point.
    Rational s = 0;
    for (std::size_t j = 0; j + 1 < kk; ++j) s += d[j % m];

    std::vector<TrapezoidTriple> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        out.push_back({d[(i + m - 1) % m], s, d[(i + kk - 1) % m]});
        if (kk >= 2) s += d[(i + kk - 1) % m] - d[i];
    }
    return out;
}

namespace detail {

// Gaps of the unit-scaled sequence as integers over a common denominator.
struct IntegerGaps {
    Integer denominator;
    std::vector<Integer> values;
};

inline IntegerGaps integer_gaps(const PeriodicSequence& seq) {
    const GapVector d = gaps(scale_to_unit(seq));
    Integer den = 1;
    for (const auto& g : d.values) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), g.get_den_mpz_t());
    IntegerGaps out{den, {}};
    out.values.reserve(d.size());
    for (const auto& g : d.values) out.values.emplace_back(g.get_num() * (den / g.get_den()));
    return out;
}

template <typename Int>
Int convert(const Integer& v) {
    if constexpr (std::is_same_v<Int, Integer>)
        return v;
    else
        return static_cast<Int>(v.get_si());
}

template <typename Int>
Rational ratio(const Int& num, const Integer& den) {
    Rational q;
    if constexpr (std::is_same_v<Int, Integer>)
        q.get_num() = num;
    else
        q.get_num() = static_cast<long>(num);
    q.get_den() = den;
    q.canonicalize();
    return q;
}

// Sum of the m trapezoids of psi_k by sweeping their slope changes.
// With X = 2*den*t and Y = den*psi every trapezoid edge has slope +-1.
template <typename Int>
PiecewiseLinear trapezoid_sum(const IntegerGaps& ig, std::size_t k) {
    const std::size_t m = ig.values.size();
    std::vector<Int> g;
    g.reserve(m);
    for (const auto& v : ig.values) g.push_back(convert<Int>(v));

    std::vector<std::pair<Int, int>> events;
    events.reserve(4 * m);
    Int s = 0;
    for (std::size_t j = 0; j + 1 < k; ++j) s += g[j % m];
    for (std::size_t i = 0; i < m; ++i) {
        const Int& left = g[(i + m - 1) % m];
        const Int& right = g[(i + k - 1) % m];
        const Int& lo = left < right ? left : right;
        const Int& hi = left < right ? right : left;
        events.emplace_back(s, 1);
        events.emplace_back(Int(s + lo), -1);
        events.emplace_back(Int(s + hi), -1);
        events.emplace_back(Int(s + left + right), 1);
        if (k >= 2) s += g[(i + k - 1) % m] - g[i];
    }
    std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    const Integer x_den = 2 * ig.denominator;
    std::vector<Corner> corners;
    Int value = 0;
    long slope = 0;
    Int prev = events.front().first;
    for (std::size_t e = 0; e < events.size();) {
        const Int x = events[e].first;
        value += Int(slope) * (x - prev);
        long delta = 0;
        for (; e < events.size() && events[e].first == x; ++e) delta += events[e].second;
        if (delta != 0) corners.push_back({ratio(x, x_den), ratio(value, ig.denominator)});
        slope += delta;
        prev = x;
    }
    // Corners sit exactly where the slope changes, so the list is already canonical.
    return PiecewiseLinear::from_canonical_corners(std::move(corners));
}

} // namespace detail

namespace detail {

inline PiecewiseLinear psi_k_from(const PeriodicSequence& seq, const IntegerGaps& ig, std::size_t k) {
    if (k == 0) return psi0(seq);
    const std::size_t m = ig.values.size();
    if (k > m) {
        const std::size_t base = (k - 1) % m + 1;
        const std::size_t wraps = (k - base) / m;
        return shift_right(psi_k_from(seq, ig, base), rational(static_cast<long>(wraps), 2));
    }
    // Values stay below 4 * m * den; fall back to big integers when that nears 2^62.
    const Integer bound = ig.denominator * static_cast<unsigned long>(4 * m + 4);
    if (mpz_sizeinbase(bound.get_mpz_t(), 2) < 62) return trapezoid_sum<std::int64_t>(ig, k);
    return trapezoid_sum<Integer>(ig, k);
}

inline Rational rho_from(const IntegerGaps& ig, std::size_t k) {
    const std::size_t m = ig.values.size();
    const auto& d = ig.values;
    Integer sum = 0;
    if (k == 0) {
        for (const auto& g : d) sum += g * g;
        Rational q(sum, 4 * ig.denominator * ig.denominator);
        q.canonicalize();
        return q;
    }
    const std::size_t kk = (k - 1) % m + 1;
    for (std::size_t i = 0; i < m; ++i) sum += d[(i + m - 1) % m] * d[(i + kk - 1) % m];
    Rational q(sum, 2 * ig.denominator * ig.denominator);
    q.canonicalize();
    return q;
}

} // namespace detail

/// psi_k of the unit-scaled sequence, k >= 0.
inline PiecewiseLinear psi_k(const PeriodicSequence& seq, long k) {
    if (k < 0) throw error(errc::negative_k, "k = " + std::to_string(k));
    if (k == 0) return psi0(seq);
    return detail::psi_k_from(seq, detail::integer_gaps(seq), static_cast<std::size_t>(k));
}

/// Area under psi_k from the gaps alone.
inline Rational rho_closed_form(const PeriodicSequence& seq, long k) {
    if (k < 0) throw error(errc::negative_k, "k = " + std::to_string(k));
    const GapVector d = gaps(scale_to_unit(seq));
    const std::size_t m = d.size();
    Rational sum = 0;
    if (k == 0) {
        for (const auto& g : d.values) sum += g * g;
        return sum / 4;
    }
    const std::size_t kk = (static_cast<std::size_t>(k) - 1) % m + 1;
    for (std::size_t i = 0; i < m; ++i) sum += d[(i + m - 1) % m] * d[(i + kk - 1) % m];
    return sum / 2;
}

inline DensityReport density_report(const PeriodicSequence& seq, long k) {
    DensityReport r;
    r.k = k;
    r.psi = psi_k(seq, k);
    r.rho = rho_closed_form(seq, k);
    if (k >= 1 && static_cast<std::size_t>(k) <= seq.size()) r.triples = trapezoid_triples(seq, k);
    return r;
}

inline Fingerprint fingerprint(const PeriodicSequence& seq, const FingerprintOptions& opts = {}) {
    const PeriodicSequence s = opts.primitive_reduce ? primitive_reduce(seq) : seq;
    const std::size_t m = s.size();
    const std::size_t k_max = opts.k_max.value_or(m / 2);

    Fingerprint fp;
    fp.motif_size = m;
    fp.period = opts.rescale ? Rational(1) : s.period();
    fp.functions.reserve(k_max + 1);
    const detail::IntegerGaps ig = detail::integer_gaps(s);
    for (std::size_t k = 0; k <= k_max; ++k) {
        PiecewiseLinear f = detail::psi_k_from(s, ig, k);
        Rational rho = detail::rho_from(ig, k);
        if (!opts.rescale) {
            f = scale_argument(f, s.period());
            rho *= s.period();
        }
        fp.functions.push_back(std::move(f));
        fp.rho.push_back(std::move(rho));
    }
    return fp;
}

/// First difference between two fingerprints, if any.
struct FingerprintDiff {
    std::optional<std::size_t> k; // empty when only the motif sizes differ
    std::size_t corner = 0;
    std::optional<Corner> left;
    std::optional<Corner> right;
};

inline std::optional<FingerprintDiff> diff_fingerprints(const Fingerprint& a, const Fingerprint& b) {
    if (a.motif_size != b.motif_size || a.period != b.period) return FingerprintDiff{};
    const std::size_t n = std::min(a.functions.size(), b.functions.size());
    for (std::size_t k = 0; k < n; ++k) {
        const auto& ca = a.functions[k].corners();
        const auto& cb = b.functions[k].corners();
        if (ca == cb) continue;
        std::size_t i = 0;
        while (i < ca.size() && i < cb.size() && ca[i] == cb[i]) ++i;
        FingerprintDiff d{k, i, {}, {}};
        if (i < ca.size()) d.left = ca[i];
        if (i < cb.size()) d.right = cb[i];
        return d;
    }
    return std::nullopt;
}

inline bool fingerprints_equal(const PeriodicSequence& a, const PeriodicSequence& b, const FingerprintOptions& opts = {}) {
    const PeriodicSequence ra = opts.primitive_reduce ? primitive_reduce(a) : a;
    const PeriodicSequence rb = opts.primitive_reduce ? primitive_reduce(b) : b;
    if (ra.size() != rb.size()) return false;
    if (!opts.rescale && ra.period() != rb.period()) return false;
    FingerprintOptions inner = opts;
    inner.primitive_reduce = false;
    inner.k_max.reset();
    return !diff_fingerprints(fingerprint(ra, inner), fingerprint(rb, inner)).has_value();
}

/// For k = 0..floor(m/2): does psi_{m-k}(1/2 - t) equal psi_k(t) on [0, 1/2]?
inline std::vector<std::pair<std::size_t, bool>> symmetry_report(const PeriodicSequence& seq) {
    const std::size_t m = seq.size();
    const Rational half = rational(1, 2);
    std::vector<std::pair<std::size_t, bool>> out;
    for (std::size_t k = 0; k <= m / 2; ++k) {
        PiecewiseLinear mirrored = reflect_about(restrict_to(psi_k(seq, static_cast<long>(m - k)), 0, half), half);
        PiecewiseLinear direct = restrict_to(psi_k(seq, static_cast<long>(k)), 0, half);
        out.emplace_back(k, mirrored == direct);
    }
    return out;
}

/// For k = 0..m: does psi_{k+m}(t + 1/2) equal psi_k(t) for t >= 0?
/// psi_{k+m} is compared on t >= 1/2 only, where the identity applies.
inline std::vector<std::pair<std::size_t, bool>> periodicity_report(const PeriodicSequence& seq) {
    const std::size_t m = seq.size();
    const Rational half = rational(1, 2);
    const detail::IntegerGaps ig = detail::integer_gaps(seq);
    std::vector<std::pair<std::size_t, bool>> out;
    for (std::size_t k = 0; k <= m; ++k) {
        // Build psi_{k+m} directly from its trapezoids (k >= 1), not from the shift rule under test.
        PiecewiseLinear upper = k == 0 ? psi_k(seq, static_cast<long>(m))
                                       : detail::trapezoid_sum<Integer>(ig, k + m);
        out.emplace_back(k, restrict_to(upper, half) == shift_right(psi_k(seq, static_cast<long>(k)), half));
    }
    return out;
}

} // namespace pdens
