#pragma once

/**
 * \file reconstruct.hpp
 *
 * Recovering a generic sequence (pairwise distinct gaps) from psi_1.
 *
 * psi_1 is the sum over motif points of the trapezoid T(a, b) built from the
 * two gaps a, b next to the point: slope +2 from 0, -2 at min(a, b)/2,
 * -2 at max(a, b)/2 and +2 at (a + b)/2. Summed up, the slope of psi_1
 * changes by -4 at d/2 for every gap d and by +2 at (a + b)/2 for every pair
 * of neighbouring gaps. Sweeping the corners of psi_1 from the left therefore
 * peels off one gap or one neighbour pair at a time. Each neighbour pair
 * closes at the radius (a + b)/2, after both of its gaps have been seen.
 *
 * A slope change of -2 at a corner means a new gap and a pair closing at the
 * same radius, and a change of 0 can hide a gap behind two closing pairs, so
 * the sweep branches on those readings and keeps the one that assembles all m
 * gaps into a single cycle. The result is always checked by recomputing psi_1.
 *
 * psi_1 is not complete for generic sequences: the gap cycles (1,2,3,4,5,6)
 * and (1,2,5,6,3,4) share their gaps and neighbour sums, hence psi_1, but are
 * not isometric. Distinct gaps make a pair set fix the cycle, so different
 * sweep solutions are different isometry classes.
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "density.hpp"
#include "error.hpp"
#include "pwl.hpp"
#include "rational.hpp"
#include "sequence.hpp"

namespace pdens {

struct ReconstructionResult {
    /// Unit period, first point at 0.
    PeriodicSequence sequence;
    /// Neighbouring gap pairs in the order the sweep closed them.
    std::vector<std::pair<Rational, Rational>> peeled_pairs;
};

namespace detail {

class GapSweep {
public:
    struct Solution {
        std::vector<Rational> gaps;
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
    };

    /// Stops after `limit` complete readings.
    GapSweep(std::vector<std::pair<Rational, long>> events, std::size_t m, std::size_t limit = 1)
        : events_(std::move(events)), m_(m), limit_(limit) {}

    bool run() {
        solutions_.clear();
        search(State{}, 0);
        return !solutions_.empty();
    }

    const std::vector<Solution>& solutions() const { return solutions_; }

private:
    struct State {
        Rational x = 0;
        Rational total = 0;
        std::vector<Rational> gaps;
        std::vector<int> open; // unclaimed neighbour slots per gap
        std::vector<std::size_t> parent;
        std::vector<std::pair<std::size_t, std::size_t>> pairs;

        std::size_t root(std::size_t i) const {
            while (parent[i] != i) i = parent[i];
            return i;
        }
        bool paired(std::size_t a, std::size_t b) const {
            return std::any_of(pairs.begin(), pairs.end(), [&](const auto& p) {
                return (p.first == a && p.second == b) || (p.first == b && p.second == a);
            });
        }
    };

    // Open gap pairs (i, j), i < j, that may still become neighbours.
    std::vector<std::pair<std::size_t, std::size_t>> open_pairs(const State& st) const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < st.gaps.size(); ++i)
            for (std::size_t j = i + 1; j < st.gaps.size(); ++j)
                if (st.open[i] > 0 && st.open[j] > 0 && !st.paired(i, j)) out.emplace_back(i, j);
        return out;
    }

    bool can_close(const State& st, std::size_t i, std::size_t j) const {
        if (st.root(i) != st.root(j)) return true;
        // Closing a cycle is only allowed for the very last pair.
        return st.gaps.size() == m_ && st.pairs.size() + 1 == m_;
    }

    static void close(State& st, std::size_t i, std::size_t j) {
        --st.open[i];
        --st.open[j];
        st.parent[st.root(i)] = st.root(j);
        st.pairs.emplace_back(i, j);
    }

    bool finished(const State& st) const {
        return st.gaps.size() == m_ && st.pairs.size() == m_ && st.total == 1
               && std::all_of(st.open.begin(), st.open.end(), [](int o) { return o == 0; });
    }

    bool dead(const State& st) const {
        if (st.gaps.size() > m_ || st.total > 1) return true;
        if (st.gaps.size() < m_) return false;
        // No more gaps can appear: every open slot needs a partner closing later.
        for (std::size_t i = 0; i < st.gaps.size(); ++i) {
            if (st.open[i] == 0) continue;
            bool any = false;
            for (std::size_t j = 0; j < st.gaps.size() && !any; ++j)
                any = j != i && st.open[j] > 0 && !st.paired(i, j) && (st.gaps[i] + st.gaps[j]) / 2 > st.x;
            if (!any) return true;
        }
        return false;
    }

    // Chooses `count` pairs among `candidates` (all summing to 2x) and recurses.
    bool choose(State st, const std::vector<std::pair<std::size_t, std::size_t>>& candidates, std::size_t from,
                long count, std::size_t next_event, bool new_gap) {
        if (count == 0) {
            if (new_gap) {
                st.gaps.emplace_back(2 * st.x);
                st.total += st.gaps.back();
                st.open.push_back(2);
                st.parent.push_back(st.parent.size());
            }
            if (dead(st)) return false;
            return search(std::move(st), next_event);
        }
        for (std::size_t c = from; c < candidates.size(); ++c) {
            const auto [i, j] = candidates[c];
            if (st.open[i] == 0 || st.open[j] == 0 || !can_close(st, i, j)) continue;
            State next = st;
            close(next, i, j);
            if (choose(std::move(next), candidates, c + 1, count - 1, next_event, new_gap)) return true;
        }
        return false;
    }

    bool search(State st, std::size_t next_event) {
        std::optional<Rational> hidden;
        for (const auto& [i, j] : open_pairs(st)) {
            Rational mid = (st.gaps[i] + st.gaps[j]) / 2;
            if (mid > st.x && (!hidden || mid < *hidden)) hidden = mid;
        }
        const bool have_corner = next_event < events_.size();
        if (!have_corner && !hidden) {
            if (!finished(st)) return false;
            solutions_.push_back({std::move(st.gaps), std::move(st.pairs)});
            return solutions_.size() >= limit_;
        }

        long mu = 0;
        std::size_t after = next_event;
        if (have_corner && (!hidden || events_[next_event].first <= *hidden)) {
            st.x = events_[next_event].first;
            mu = events_[next_event].second;
            after = next_event + 1;
        } else {
            st.x = *hidden;
        }
        if (mu % 2 != 0) return false;

        std::vector<std::pair<std::size_t, std::size_t>> candidates;
        for (const auto& [i, j] : open_pairs(st))
            if (st.gaps[i] + st.gaps[j] == 2 * st.x) candidates.emplace_back(i, j);

        // Reading 1: only neighbour pairs close here.
        if (mu >= 0 && choose(st, candidates, 0, mu / 2, after, false)) return true;
        // Reading 2: a new gap 2x appears, possibly alongside closing pairs.
        const long with_gap = mu / 2 + 2;
        const bool fresh = std::none_of(st.gaps.begin(), st.gaps.end(), [&](const Rational& g) { return g == 2 * st.x; });
        if (with_gap >= 0 && fresh && st.gaps.size() < m_ && choose(st, candidates, 0, with_gap, after, true)) return true;
        return false;
    }

    std::vector<std::pair<Rational, long>> events_;
    std::size_t m_;
    std::size_t limit_;
    std::vector<Solution> solutions_;
};

// Slope change at every corner with x > 0.
inline std::vector<std::pair<Rational, long>> slope_changes(const PiecewiseLinear& f) {
    const auto& cs = f.corners();
    std::vector<std::pair<Rational, long>> out;
    Rational before = 0;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        Rational after = i + 1 < cs.size() ? Rational((cs[i + 1].y - cs[i].y) / (cs[i + 1].x - cs[i].x)) : Rational(0);
        if (i > 0) {
            Rational change = after - before;
            if (change.get_den() != 1)
                throw error(errc::inconsistent_function, "non-integral slope change at t = " + to_string(cs[i].x));
            out.emplace_back(cs[i].x, change.get_num().get_si());
        }
        before = after;
    }
    return out;
}

} // namespace detail

/// Subtracts the trapezoids of the given neighbour pairs one by one and returns
/// every intermediate residual (the first entry is f itself).
inline std::vector<PiecewiseLinear> peel_residuals(const PiecewiseLinear& f,
                                                   const std::vector<std::pair<Rational, Rational>>& pairs) {
    std::vector<PiecewiseLinear> out{f};
    for (const auto& [a, b] : pairs) {
        try {
            out.push_back(subtract(out.back(), trapezoid({a, Rational(0), b})));
        } catch (const error& e) {
            throw error(errc::inconsistent_function, std::string("residual is not a trapezoid sum: ") + e.what());
        }
    }
    return out;
}

namespace detail {

inline std::vector<std::pair<Rational, long>> checked_events(const PiecewiseLinear& f, long m) {
    if (m < 1) throw error(errc::invalid_argument, "motif size must be at least 1");
    const auto& cs = f.corners();
    if (cs.size() < 2 || cs[0].x != 0 || cs[0].y != 0)
        throw error(errc::inconsistent_function, "psi_1 must start at (0, 0)");
    const Rational initial = (cs[1].y - cs[0].y) / (cs[1].x - cs[0].x);
    if (initial != 2 * m)
        throw error(errc::inconsistent_function,
                    "initial gradient " + to_string(initial) + " does not match 2m = " + std::to_string(2 * m));

    auto events = slope_changes(f);
    for (const auto& [x, change] : events)
        if (change < -4)
            throw error(errc::not_generic, "slope drops by " + std::to_string(-change) + " at t = " + to_string(x)
                                               + ": several gaps of length " + to_string(Rational(2 * x)));
    return events;
}

// Gap cycle of one sweep solution, walked from the smallest gap towards its smaller neighbour.
inline ReconstructionResult assemble(const GapSweep::Solution& sol) {
    const auto& g = sol.gaps;
    std::vector<std::vector<std::size_t>> adj(g.size());
    std::vector<std::pair<Rational, Rational>> pairs;
    for (const auto& [i, j] : sol.pairs) {
        adj[i].push_back(j);
        adj[j].push_back(i);
        pairs.emplace_back(g[i], g[j]);
    }
    std::vector<Rational> cycle{g[0]};
    std::size_t prev = 0;
    std::size_t cur = g[adj[0][0]] < g[adj[0][1]] ? adj[0][0] : adj[0][1];
    while (cur != 0) {
        cycle.push_back(g[cur]);
        const std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
    }
    return {from_gaps(cycle), std::move(pairs)};
}

inline std::vector<ReconstructionResult> reconstruct_up_to(const PiecewiseLinear& f, long m, std::size_t limit) {
    const auto events = checked_events(f, m);
    const auto& cs = f.corners();
    std::vector<ReconstructionResult> out;
    if (m <= 2) {
        // One or two gaps: the neighbour pairs repeat, so read the smallest gap off the first corner.
        const Rational a = 2 * cs[1].x;
        if (m == 1) {
            out.push_back({from_gaps(std::vector<Rational>{Rational(1)}), {{Rational(1), Rational(1)}}});
        } else {
            const Rational b = 1 - a;
            if (a == b) throw error(errc::not_generic, "both gaps equal 1/2");
            if (b < a) throw error(errc::inconsistent_function, "first corner is not at the smaller gap");
            out.push_back({from_gaps(std::vector<Rational>{a, b}), {{a, b}, {a, b}}});
        }
    } else {
        GapSweep sweep(events, static_cast<std::size_t>(m), limit);
        if (!sweep.run())
            throw error(errc::inconsistent_function,
                        "no generic " + std::to_string(m) + "-point sequence has this first density function");
        for (const auto& sol : sweep.solutions()) out.push_back(assemble(sol));
    }
    for (const auto& r : out) {
        if (!is_generic(r.sequence)) throw error(errc::not_generic, "reconstructed gaps are not distinct");
        if (psi_k(r.sequence, 1) != f) throw error(errc::inconsistent_function, "round trip through psi_1 failed");
    }
    return out;
}

} // namespace detail

/// Rebuilds a generic unit-period sequence whose psi_1 is f.
/// psi_1 only sees the gaps and the sums of neighbouring gaps, so other
/// non-isometric answers may exist; reconstruct_all_from_psi1 lists them.
inline ReconstructionResult reconstruct_from_psi1(const PiecewiseLinear& f, long m) {
    return std::move(detail::reconstruct_up_to(f, m, 1).front());
}

/// Every generic m-point sequence with this psi_1, one per isometry class, at most `limit` of them.
inline std::vector<ReconstructionResult> reconstruct_all_from_psi1(const PiecewiseLinear& f, long m,
                                                                   std::size_t limit = 64) {
    return detail::reconstruct_up_to(f, m, limit);
}

/// psi_1 determines a generic sequence up to isometry: rebuild and compare.
inline bool verify_completeness(const PeriodicSequence& seq) {
    if (!is_generic(seq)) throw error(errc::not_generic, "gaps are not pairwise distinct");
    const PeriodicSequence unit = scale_to_unit(seq);
    const ReconstructionResult r = reconstruct_from_psi1(psi_k(unit, 1), static_cast<long>(unit.size()));
    return canonical_isometry_form(r.sequence) == canonical_isometry_form(unit);
}

} // namespace pdens
