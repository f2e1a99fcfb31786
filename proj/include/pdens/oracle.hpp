#pragma once

/**
 * \file oracle.hpp
 *
 * Density values straight from the definition: grow an interval of radius t
 * around every point of the sequence, sweep their endpoints across one unit
 * cell and measure how much of the cell is covered exactly k times.
 *
 * Nothing here uses the closed forms from density.hpp, so the two can check
 * each other. Touching endpoints produce zero-length events and are ignored.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "density.hpp"
#include "error.hpp"
#include "pwl.hpp"
#include "rational.hpp"
#include "sequence.hpp"

namespace pdens {

struct CoverageProfile {
    Rational radius;
    /// multiplicity -> length inside the unit cell; only positive lengths are stored
    std::map<long, Rational> measures;

    Rational operator[](long k) const {
        auto it = measures.find(k);
        return it == measures.end() ? Rational(0) : it->second;
    }
};

inline CoverageProfile coverage_profile(const PeriodicSequence& seq, const Rational& t) {
    if (t < 0) throw error(errc::negative_radius, "t = " + to_string(t));
    const PeriodicSequence s = scale_to_unit(seq);

    std::vector<std::pair<Rational, int>> events;
    for (const auto& p : s.motif()) {
        // Every translate of [p - t, p + t] meeting [0, 1).
        const Integer first = floor(Rational(-p - t));
        const Integer last = floor(Rational(1 - p + t)) + 1;
        for (Integer n = first; n <= last; ++n) {
            Rational a = p - t + n;
            Rational b = p + t + n;
            if (a < 0) a = 0;
            if (b > 1) b = 1;
            if (a < b) {
                events.emplace_back(std::move(a), 1);
                events.emplace_back(std::move(b), -1);
            }
        }
    }
    std::sort(events.begin(), events.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

    CoverageProfile out{t, {}};
    Rational pos = 0;
    long count = 0;
    auto credit = [&](const Rational& until) {
        if (until > pos) out.measures[count] += until - pos;
    };
    for (std::size_t e = 0; e < events.size();) {
        const Rational x = events[e].first;
        credit(x);
        for (; e < events.size() && events[e].first == x; ++e) count += events[e].second;
        pos = x;
    }
    credit(Rational(1));
    return out;
}

inline Rational psi_oracle(const PeriodicSequence& seq, long k, const Rational& t) {
    if (k < 0) throw error(errc::negative_k, "k = " + std::to_string(k));
    return coverage_profile(seq, t)[k];
}

/// 0, the corners of f, the midpoints between consecutive corners and one point past the support.
inline std::vector<Rational> sample_radii(const PiecewiseLinear& f) {
    std::vector<Rational> out{Rational(0)};
    const auto& cs = f.corners();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        out.push_back(cs[i].x);
        if (i + 1 < cs.size()) out.emplace_back((cs[i].x + cs[i + 1].x) / 2);
    }
    if (!cs.empty()) out.emplace_back(cs.back().x + rational(1, 4));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<Rational> critical_radii(const PeriodicSequence& seq, long k) {
    return sample_radii(psi_k(seq, k));
}

struct OracleMismatch {
    long k;
    Rational t;
    Rational oracle;
    Rational closed_form;
};

struct OracleCheckReport {
    std::size_t functions_checked = 0;
    std::size_t points_checked = 0;
    std::vector<OracleMismatch> mismatches;

    bool all_pass() const noexcept { return mismatches.empty(); }
};

using PsiProvider = std::function<PiecewiseLinear(const PeriodicSequence&, long)>;

/// Compares psi_k (k = 0..m) with the coverage oracle at every sample radius.
/// A seed adds random radii in [0, 1] to each k.
inline OracleCheckReport oracle_check(const PeriodicSequence& seq, std::optional<std::uint64_t> seed = std::nullopt,
                                      const PsiProvider& provider = [](const PeriodicSequence& s, long k) { return psi_k(s, k); }) {
    const PeriodicSequence s = scale_to_unit(seq);
    const long m = static_cast<long>(s.size());
    OracleCheckReport report;
    std::optional<std::mt19937_64> rng;
    if (seed) rng.emplace(*seed);

    for (long k = 0; k <= m; ++k) {
        const PiecewiseLinear f = provider(s, k);
        std::vector<Rational> radii = sample_radii(f);
        if (rng) {
            std::uniform_int_distribution<long> den_dist(1, 97);
            for (int i = 0; i < 8; ++i) {
                const long den = den_dist(*rng);
                radii.push_back(rational(std::uniform_int_distribution<long>(0, den)(*rng), den));
            }
        }
        ++report.functions_checked;
        for (const auto& t : radii) {
            ++report.points_checked;
            Rational expected = psi_oracle(s, k, t);
            Rational actual = f(t);
            if (expected != actual) report.mismatches.push_back({k, t, std::move(expected), std::move(actual)});
        }
    }
    return report;
}

} // namespace pdens
