#pragma once

/**
 * \file io.hpp
 *
 * File formats.
 *
 *   sequence     {"period": "p/q", "motif": ["a/b", ...]}
 *   function     {"corners": [["x", "y"], ...]}
 *   fingerprint  {"motif_size": m, "period": "p/q",
 *                 "functions": [{"k": 0, "corners": [...]}, ...],
 *                 "rho": ["r0", "r1", ...]}
 *   CSV          k,x_num,x_den,y_num,y_den  (one row per corner)
 *   SVG          overlaid polylines of psi_k, decimal coordinates
 *
 * Rationals are always written as reduced "p/q" strings ("n" for integers).
 */

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "density.hpp"
#include "error.hpp"
#include "pwl.hpp"
#include "rational.hpp"
#include "sequence.hpp"

namespace pdens::io {

using json = nlohmann::ordered_json;

inline Rational rational_from_json(const json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const error& e) {
            throw error(errc::parse_error, where + ": " + e.what());
        }
    }
    if (v.is_number_integer()) return Rational(Integer(v.dump()));
    throw error(errc::parse_error, where + ": expected a rational string like \"p/q\", got " + v.dump());
}

inline json to_json(const Rational& q) { return to_string(q); }

inline json parse_json_text(std::string_view text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw error(errc::parse_error, source + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::parse_error, path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline const json& member(const json& obj, const char* key, const std::string& source) {
    if (!obj.is_object()) throw error(errc::parse_error, source + ": top level must be a JSON object");
    auto it = obj.find(key);
    if (it == obj.end()) throw error(errc::parse_error, source + ": missing key \"" + key + "\"");
    return *it;
}

// ---- sequences

inline PeriodicSequence sequence_from_json(const json& j, const std::string& source = "<input>") {
    Rational period = rational_from_json(member(j, "period", source), source + ": period");
    const json& motif = member(j, "motif", source);
    if (!motif.is_array()) throw error(errc::parse_error, source + ": motif must be an array");
    std::vector<Rational> pts;
    for (std::size_t i = 0; i < motif.size(); ++i)
        pts.push_back(rational_from_json(motif[i], source + ": motif[" + std::to_string(i) + "]"));
    try {
        return PeriodicSequence::create(std::move(period), std::move(pts));
    } catch (const error& e) {
        throw error(e.code(), source + ": " + e.what());
    }
}

inline json to_json(const PeriodicSequence& s) {
    json motif = json::array();
    for (const auto& p : s.motif()) motif.push_back(to_json(p));
    return json{{"period", to_json(s.period())}, {"motif", std::move(motif)}};
}

inline PeriodicSequence parse_sequence(std::string_view text, const std::string& source = "<input>") {
    return sequence_from_json(parse_json_text(text, source), source);
}

inline PeriodicSequence read_sequence(const std::string& path) { return parse_sequence(read_file(path), path); }

// ---- piecewise-linear functions

inline json corners_to_json(const PiecewiseLinear& f) {
    json out = json::array();
    for (const auto& c : f.corners()) out.push_back(json::array({to_json(c.x), to_json(c.y)}));
    return out;
}

inline PiecewiseLinear corners_from_json(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw error(errc::parse_error, where + ": corners must be an array");
    std::vector<Corner> cs;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (!arr[i].is_array() || arr[i].size() != 2) throw error(errc::parse_error, at + ": expected [x, y]");
        cs.push_back({rational_from_json(arr[i][0], at), rational_from_json(arr[i][1], at)});
    }
    try {
        return from_corners(std::move(cs));
    } catch (const error& e) {
        throw error(e.code(), where + ": " + e.what());
    }
}

inline json to_json(const PiecewiseLinear& f) { return json{{"corners", corners_to_json(f)}}; }

// ---- fingerprints

inline json to_json(const Fingerprint& fp) {
    json functions = json::array();
    for (std::size_t k = 0; k < fp.functions.size(); ++k)
        functions.push_back(json{{"k", k}, {"corners", corners_to_json(fp.functions[k])}});
    json rho = json::array();
    for (const auto& r : fp.rho) rho.push_back(to_json(r));
    return json{{"motif_size", fp.motif_size},
                {"period", to_json(fp.period)},
                {"functions", std::move(functions)},
                {"rho", std::move(rho)}};
}

inline Fingerprint fingerprint_from_json(const json& j, const std::string& source = "<input>") {
    Fingerprint fp;
    const json& m = member(j, "motif_size", source);
    if (!m.is_number_unsigned() || m.get<std::size_t>() == 0)
        throw error(errc::parse_error, source + ": motif_size must be a positive integer");
    fp.motif_size = m.get<std::size_t>();
    fp.period = rational_from_json(member(j, "period", source), source + ": period");
    const json& functions = member(j, "functions", source);
    if (!functions.is_array()) throw error(errc::parse_error, source + ": functions must be an array");
    for (std::size_t i = 0; i < functions.size(); ++i) {
        const std::string at = source + ": functions[" + std::to_string(i) + "]";
        const json& k = member(functions[i], "k", at);
        if (!k.is_number_unsigned() || k.get<std::size_t>() != i)
            throw error(errc::parse_error, at + ": expected k = " + std::to_string(i));
        fp.functions.push_back(corners_from_json(member(functions[i], "corners", at), at + ".corners"));
    }
    if (auto it = j.find("rho"); it != j.end()) {
        if (!it->is_array()) throw error(errc::parse_error, source + ": rho must be an array");
        for (std::size_t i = 0; i < it->size(); ++i)
            fp.rho.push_back(rational_from_json((*it)[i], source + ": rho[" + std::to_string(i) + "]"));
    }
    return fp;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---- CSV

inline std::string to_csv(const Fingerprint& fp) {
    std::ostringstream out;
    out << "k,x_num,x_den,y_num,y_den\n";
    for (std::size_t k = 0; k < fp.functions.size(); ++k)
        for (const auto& c : fp.functions[k].corners())
            out << k << ',' << c.x.get_num().get_str() << ',' << c.x.get_den().get_str() << ','
                << c.y.get_num().get_str() << ',' << c.y.get_den().get_str() << '\n';
    return out.str();
}

// ---- SVG

namespace detail {

inline std::string decimal(const Rational& q) {
    std::ostringstream s;
    s << std::setprecision(12) << to_double(q);
    return s.str();
}

constexpr std::string_view palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

} // namespace detail

inline std::string to_svg(const Fingerprint& fp, const std::string& title = "density functions") {
    const long width = 800, height = 500, left = 70, right = 150, top = 40, bottom = 60;
    const long plot_w = width - left - right, plot_h = height - top - bottom;

    Rational x_max = 0, y_max = 1;
    for (const auto& f : fp.functions)
        for (const auto& c : f.corners()) {
            if (c.x > x_max) x_max = c.x;
            if (c.y > y_max) y_max = c.y;
        }
    if (x_max == 0) x_max = fp.period / 2;

    auto px = [&](const Rational& x) { return detail::decimal(Rational(left + plot_w * x / x_max)); };
    auto py = [&](const Rational& y) { return detail::decimal(Rational(top + plot_h - plot_h * y / y_max)); };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << title << "</text>\n";

    // axes, ticks and labels
    s << "<g stroke=\"black\" stroke-width=\"1\">\n";
    s << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\"" << top + plot_h << "\"/>\n";
    s << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h << "\"/>\n";
    s << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 5; ++i) {
        const Rational fx = rational(i, 5);
        const Rational tx = x_max * fx;
        const Rational ty = y_max * fx;
        s << "<text x=\"" << px(tx) << "\" y=\"" << top + plot_h + 16 << "\" text-anchor=\"middle\">" << detail::decimal(tx) << "</text>\n";
        s << "<text x=\"" << left - 6 << "\" y=\"" << py(ty) << "\" text-anchor=\"end\" dominant-baseline=\"middle\">"
          << detail::decimal(ty) << "</text>\n";
    }
    s << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 16 << "\" text-anchor=\"middle\">radius t</text>\n";
    s << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << top + plot_h / 2
      << ")\">psi_k(t)</text>\n</g>\n";

    for (std::size_t k = 0; k < fp.functions.size(); ++k) {
        const auto& cs = fp.functions[k].corners();
        const std::string_view colour = detail::palette[k % std::size(detail::palette)];
        if (!cs.empty()) {
            s << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
            if (cs.front().y != 0 && cs.front().x != 0) s << px(cs.front().x) << ',' << py(0) << ' ';
            for (const auto& c : cs) s << px(c.x) << ',' << py(c.y) << ' ';
            if (cs.back().y != 0) s << px(cs.back().x) << ',' << py(0);
            s << "\"/>\n";
        }
        const long ly = top + 10 + static_cast<long>(k) * 18;
        s << "<line x1=\"" << width - right + 15 << "\" y1=\"" << ly << "\" x2=\"" << width - right + 40 << "\" y2=\"" << ly
          << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        s << "<text x=\"" << width - right + 46 << "\" y=\"" << ly << "\" font-family=\"sans-serif\" font-size=\"12\" "
          << "dominant-baseline=\"middle\">psi_" << k << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

} // namespace pdens::io
