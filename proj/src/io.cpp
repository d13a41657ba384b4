#include "lattice_heat/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace lattice_heat {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_number(std::string_view text, std::size_t line) {
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw std::invalid_argument("line " + std::to_string(line) + ": cannot parse '" + std::string(text) + "'");
    }
    return value;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

std::string format_double(double x) {
    char buf[40];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

std::string sequence_to_csv(const LatticeSequence& s) {
    std::string out = "n,value\n";
    for (int n = s.first(); n <= s.last(); ++n) {
        out += std::to_string(n);
        out += ',';
        out += format_double(s[n]);
        out += '\n';
    }
    return out;
}

LatticeSequence sequence_from_csv(std::string_view text) {
    std::map<int, double> rows;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "n,value") {
                throw std::invalid_argument("sequence CSV must start with the header 'n,value'");
            }
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 'n,value'");
        }
        const int n = parse_number<int>(trim(line.substr(0, comma)), line_no);
        const double v = parse_number<double>(trim(line.substr(comma + 1)), line_no);
        if (!std::isfinite(v)) throw std::invalid_argument("line " + std::to_string(line_no) + ": non-finite value");
        if (!rows.emplace(n, v).second) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": duplicate index " + std::to_string(n));
        }
    }
    if (!header_seen) throw std::invalid_argument("sequence CSV is empty");
    if (rows.empty()) return {};
    LatticeSequence s = LatticeSequence::zeros(rows.begin()->first, rows.rbegin()->first);
    auto v = s.mutable_values();
    for (const auto& [n, value] : rows) v[static_cast<std::size_t>(n - s.first())] = value;
    return s;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

LatticeSequence read_sequence_csv(const std::filesystem::path& path) {
    LatticeSequence s = sequence_from_csv(read_text(path));
    s.set_name(path.stem().string());
    return s;
}

void write_text_atomic(const std::filesystem::path& path, std::string_view text) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

ForcingSpec forcing_from_json(std::string_view text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("forcing JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("forcing JSON must be an object");
    const std::string kind = doc.value("kind", std::string("separable"));
    if (kind == "none") return ForcingSpec::none();
    if (kind != "separable") throw std::invalid_argument("forcing kind must be 'separable' or 'none'");
    if (!doc.contains("spatial") || !doc["spatial"].is_string()) {
        throw std::invalid_argument("forcing JSON needs a string 'spatial' path");
    }
    if (!doc.contains("gamma") || !doc["gamma"].is_number()) {
        throw std::invalid_argument("forcing JSON needs a numeric 'gamma'");
    }
    const double amplitude = doc.contains("amplitude") ? doc["amplitude"].get<double>() : 1.0;
    std::filesystem::path spatial = doc["spatial"].get<std::string>();
    if (spatial.is_relative()) spatial = base_dir / spatial;
    return ForcingSpec::separable(read_sequence_csv(spatial), doc["gamma"].get<double>(), amplitude);
}

ForcingSpec read_forcing_json(const std::filesystem::path& path) {
    return forcing_from_json(read_text(path), path.parent_path());
}

std::filesystem::path sidecar_path(const std::filesystem::path& out) {
    std::filesystem::path p = out;
    return p.replace_extension(".json");
}

std::filesystem::path plot_path(const std::filesystem::path& out) {
    std::filesystem::path p = out;
    return p.replace_extension(".svg");
}

std::string snapshot_sidecar(const SolutionSnapshot& s) {
    json doc = {{"t", s.t},
                {"quad_error", finite_or_null(s.quad_error)},
                {"trunc_error", finite_or_null(s.trunc_error)},
                {"certified", s.certified}};
    return doc.dump(2) + "\n";
}

std::string report_to_csv(const DecayReport& r) {
    std::string out = "t,value\n";
    for (const auto& [t, v] : r.pairs) out += format_double(t) + "," + format_double(v) + "\n";
    return out;
}

std::string report_sidecar(const DecayReport& r) {
    json dropped = json::array();
    for (const auto& pt : r.dropped) {
        dropped.push_back({{"t", pt.t}, {"value", finite_or_null(pt.value)}, {"error", finite_or_null(pt.error)}});
    }
    json doc = {{"label", r.label},
                {"slope", finite_or_null(r.slope)},
                {"intercept", finite_or_null(r.intercept)},
                {"max_residual", finite_or_null(r.max_residual)},
                {"t_range", {r.t_min, r.t_max}},
                {"experimental", r.experimental},
                {"points", r.pairs.size()},
                {"dropped", dropped}};
    return doc.dump(2) + "\n";
}

std::string report_to_svg(const DecayReport& r) {
    constexpr double width = 640.0, height = 480.0, margin = 60.0;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
    svg << "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << r.label << "</text>\n";
    svg << "<rect x=\"60\" y=\"60\" width=\"520\" height=\"360\" fill=\"none\" stroke=\"black\"/>\n";
    if (r.pairs.empty()) {
        svg << "</svg>\n";
        return svg.str();
    }

    double x_lo = std::log10(r.pairs.front().first), x_hi = std::log10(r.pairs.back().first);
    double y_lo = std::log10(r.pairs.front().second), y_hi = y_lo;
    for (const auto& [t, v] : r.pairs) {
        y_lo = std::min(y_lo, std::log10(v));
        y_hi = std::max(y_hi, std::log10(v));
    }
    if (x_hi - x_lo < 1e-12) x_hi = x_lo + 1.0;
    if (y_hi - y_lo < 1e-12) {
        y_lo -= 0.5;
        y_hi += 0.5;
    }
    auto px = [&](double lx) { return margin + (lx - x_lo) / (x_hi - x_lo) * (width - 2 * margin); };
    auto py = [&](double ly) { return height - margin - (ly - y_lo) / (y_hi - y_lo) * (height - 2 * margin); };
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };

    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < r.pairs.size(); ++i) {
        svg << (i ? " " : "") << fmt(px(std::log10(r.pairs[i].first))) << ","
            << fmt(py(std::log10(r.pairs[i].second)));
    }
    svg << "\"/>\n";
    for (const auto& [t, v] : r.pairs) {
        svg << "<circle cx=\"" << fmt(px(std::log10(t))) << "\" cy=\"" << fmt(py(std::log10(v)))
            << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    }
    if (r.has_fit()) {
        // log10 v = slope log10 t + intercept / ln 10
        auto fit = [&](double lx) { return r.slope * lx + r.intercept / std::log(10.0); };
        svg << "<line x1=\"" << fmt(px(x_lo)) << "\" y1=\"" << fmt(py(fit(x_lo))) << "\" x2=\"" << fmt(px(x_hi))
            << "\" y2=\"" << fmt(py(fit(x_hi))) << "\" stroke=\"#d62728\" stroke-dasharray=\"6,4\"/>\n";
        svg << "<text x=\"320\" y=\"460\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << "slope " << fmt(r.slope) << " (log-log)</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace lattice_heat
