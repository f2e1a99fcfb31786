#pragma once

// Command implementations behind the pdens executable. Each command writes
// its result to `out` (or to config.out_path), diagnostics to `err`, and
// returns the process exit code: 0 success/equal, 1 unequal/mismatch/failed
// reconstruction, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "density.hpp"
#include "error.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "reconstruct.hpp"
#include "sequence.hpp"

namespace pdens::cli {

enum class Command { compute, compare, rho, reconstruct, oracle_check, plot };
enum class Format { json, csv, svg };

struct RunConfig {
    Command command = Command::compute;
    std::vector<std::string> inputs;
    std::optional<long> k_max;
    bool primitive_reduce = true;
    bool rescale = true;
    Format format = Format::json;
    std::optional<std::string> out_path;
    std::optional<std::uint64_t> seed;
};

constexpr int exit_ok = 0;
constexpr int exit_unequal = 1;
constexpr int exit_usage = 2;

namespace detail {

inline FingerprintOptions options(const RunConfig& cfg) {
    FingerprintOptions o;
    o.primitive_reduce = cfg.primitive_reduce;
    o.rescale = cfg.rescale;
    if (cfg.k_max) o.k_max = static_cast<std::size_t>(*cfg.k_max);
    return o;
}

inline void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (!cfg.out_path) {
        out << text;
        return;
    }
    std::ofstream file(*cfg.out_path, std::ios::binary);
    if (!file) throw error(errc::parse_error, *cfg.out_path + ": cannot write");
    file << text;
}

inline std::string corner_text(const std::optional<Corner>& c) {
    return c ? "(" + to_string(c->x) + ", " + to_string(c->y) + ")" : std::string("<none>");
}

} // namespace detail

inline int run_compute(const RunConfig& cfg, std::ostream& out) {
    const Fingerprint fp = fingerprint(io::read_sequence(cfg.inputs.at(0)), detail::options(cfg));
    switch (cfg.format) {
    case Format::json: detail::emit(cfg, out, io::dump(io::to_json(fp))); break;
    case Format::csv: detail::emit(cfg, out, io::to_csv(fp)); break;
    case Format::svg: detail::emit(cfg, out, io::to_svg(fp, cfg.inputs.at(0))); break;
    }
    return exit_ok;
}

inline int run_plot(const RunConfig& cfg, std::ostream& out) {
    const Fingerprint fp = fingerprint(io::read_sequence(cfg.inputs.at(0)), detail::options(cfg));
    detail::emit(cfg, out, io::to_svg(fp, cfg.inputs.at(0)));
    return exit_ok;
}

inline int run_compare(const RunConfig& cfg, std::ostream& out) {
    const PeriodicSequence a = io::read_sequence(cfg.inputs.at(0));
    const PeriodicSequence b = io::read_sequence(cfg.inputs.at(1));
    const FingerprintOptions opts = detail::options(cfg);
    const Fingerprint fa = fingerprint(a, opts);
    const Fingerprint fb = fingerprint(b, opts);

    std::ostringstream rep;
    rep << "motif_size: " << fa.motif_size << " vs " << fb.motif_size << "\n";
    bool equal = fa.motif_size == fb.motif_size && fa.period == fb.period;
    if (fa.period != fb.period) rep << "period: " << to_string(fa.period) << " vs " << to_string(fb.period) << "\n";
    if (fa.motif_size == fb.motif_size && fa.period == fb.period) {
        for (std::size_t k = 0; k < fa.functions.size(); ++k)
            rep << "psi_" << k << ": " << (fa.functions[k] == fb.functions[k] ? "equal" : "different") << "\n";
        if (auto d = diff_fingerprints(fa, fb)) {
            equal = false;
            rep << "first difference: k = " << *d->k << ", corner " << d->corner << ": " << detail::corner_text(d->left)
                << " vs " << detail::corner_text(d->right) << "\n";
        }
    }
    rep << "verdict: " << (equal ? "equal" : "unequal") << "\n";
    detail::emit(cfg, out, rep.str());
    return equal ? exit_ok : exit_unequal;
}

inline int run_rho(const RunConfig& cfg, std::ostream& out) {
    PeriodicSequence s = io::read_sequence(cfg.inputs.at(0));
    if (cfg.primitive_reduce) s = primitive_reduce(s);
    const long k_max = cfg.k_max.value_or(static_cast<long>(s.size()));
    const Rational unit = cfg.rescale ? Rational(1) : s.period();

    bool agree = true;
    io::json rows = io::json::array();
    std::ostringstream csv;
    csv << "k,closed_num,closed_den,integral_num,integral_den\n";
    for (long k = 0; k <= k_max; ++k) {
        const Rational closed = rho_closed_form(s, k) * unit;
        const Rational area = integral(psi_k(s, k)) * unit;
        agree = agree && closed == area;
        rows.push_back(io::json{{"k", k}, {"closed_form", io::to_json(closed)}, {"integral", io::to_json(area)}});
        csv << k << ',' << closed.get_num().get_str() << ',' << closed.get_den().get_str() << ','
            << area.get_num().get_str() << ',' << area.get_den().get_str() << '\n';
    }
    if (cfg.format == Format::csv)
        detail::emit(cfg, out, csv.str());
    else
        detail::emit(cfg, out,
                     io::dump(io::json{{"motif_size", s.size()}, {"period", io::to_json(unit)}, {"rho", std::move(rows)}}));
    return agree ? exit_ok : exit_unequal;
}

/// Upper bound on the alternative answers listed by reconstruct.
inline constexpr std::size_t reconstruct_limit = 16;

inline int run_reconstruct(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::string& path = cfg.inputs.at(0);
    const io::json doc = io::parse_json_text(io::read_file(path), path);

    PiecewiseLinear psi1;
    long m = 0;
    if (doc.is_object() && doc.contains("motif")) {
        const PeriodicSequence s = scale_to_unit(primitive_reduce(io::sequence_from_json(doc, path)));
        psi1 = psi_k(s, 1);
        m = static_cast<long>(s.size());
    } else {
        const Fingerprint fp = io::fingerprint_from_json(doc, path);
        m = static_cast<long>(fp.motif_size);
        if (fp.functions.size() > 1) {
            psi1 = scale_argument(fp.functions[1], Rational(1) / fp.period);
        } else if (m == 1 && fp.functions.size() == 1) {
            // A one-point fingerprint carries only psi_0, which must be the single-gap one.
            const PiecewiseLinear expected = from_corners({{Rational(0), Rational(1)}, {rational(1, 2), Rational(0)}});
            if (scale_argument(fp.functions[0], Rational(1) / fp.period) != expected) {
                err << path << ": psi_0 is not the density of a one-point sequence\n";
                return exit_unequal;
            }
            psi1 = trapezoid({Rational(1), Rational(0), Rational(1)});
        } else {
            throw error(errc::parse_error, path + ": fingerprint has no k = 1 entry (recompute with --k-max 1)");
        }
    }

    try {
        const std::vector<ReconstructionResult> all = reconstruct_all_from_psi1(psi1, m, reconstruct_limit);
        const ReconstructionResult& r = all.front();
        io::json j = io::to_json(r.sequence);
        io::json pairs = io::json::array();
        for (const auto& [a, b] : r.peeled_pairs) pairs.push_back(io::json::array({io::to_json(a), io::to_json(b)}));
        j["peeled_pairs"] = std::move(pairs);
        // psi_1 can be shared by non-isometric generic sequences; list the others.
        io::json others = io::json::array();
        for (std::size_t i = 1; i < all.size(); ++i) others.push_back(io::to_json(all[i].sequence)["motif"]);
        j["alternatives"] = std::move(others);
        if (all.size() > 1)
            err << path << ": psi_1 matches " << all.size() << (all.size() == reconstruct_limit ? " or more" : "")
                << " non-isometric sequences\n";
        detail::emit(cfg, out, io::dump(j));
        return exit_ok;
    } catch (const error& e) {
        if (e.code() != errc::not_generic && e.code() != errc::inconsistent_function) throw;
        err << path << ": " << e.what() << "\n";
        return exit_unequal;
    }
}

inline int run_oracle_check(const RunConfig& cfg, std::ostream& out, const PsiProvider& provider) {
    const PeriodicSequence s = io::read_sequence(cfg.inputs.at(0));
    const OracleCheckReport report = oracle_check(s, cfg.seed, provider);
    std::ostringstream rep;
    for (const auto& mm : report.mismatches)
        rep << "mismatch: k = " << mm.k << ", t = " << to_string(mm.t) << ", oracle = " << to_string(mm.oracle)
            << ", closed form = " << to_string(mm.closed_form) << "\n";
    rep << "functions checked: " << report.functions_checked << "\n"
        << "points checked: " << report.points_checked << "\n"
        << "all pass: " << (report.all_pass() ? "true" : "false") << "\n";
    detail::emit(cfg, out, rep.str());
    return report.all_pass() ? exit_ok : exit_unequal;
}

inline int run_oracle_check(const RunConfig& cfg, std::ostream& out) {
    return run_oracle_check(cfg, out, [](const PeriodicSequence& s, long k) { return psi_k(s, k); });
}

/// Validates the configuration and dispatches; never throws.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::size_t wanted = cfg.command == Command::compare ? 2 : 1;
    if (cfg.inputs.size() != wanted) {
        err << "error: this command takes exactly " << wanted << " input file" << (wanted == 1 ? "" : "s") << "\n";
        return exit_usage;
    }
    if (cfg.k_max && *cfg.k_max < 0) {
        err << "error: --k-max must be non-negative\n";
        return exit_usage;
    }
    try {
        switch (cfg.command) {
        case Command::compute: return run_compute(cfg, out);
        case Command::compare: return run_compare(cfg, out);
        case Command::rho: return run_rho(cfg, out);
        case Command::reconstruct: return run_reconstruct(cfg, out, err);
        case Command::oracle_check: return run_oracle_check(cfg, out);
        case Command::plot: return run_plot(cfg, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

} // namespace pdens::cli
