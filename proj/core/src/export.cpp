#include "floatconv/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <vector>

#include "floatconv/error.hpp"

namespace floatconv {

namespace {

constexpr double m_to_mm = 1000.0;

void append_row(std::string& out, std::initializer_list<std::string_view> fields) {
    bool first = true;
    for (auto f : fields) {
        if (!first) out += ',';
        out += f;
        first = false;
    }
    out += '\n';
}

double parse_number(std::string_view field, std::size_t line) {
    double v = 0.0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        throw ParseError(line, "not a number: '" + std::string(field) + "'");
    return v;
}

}  // namespace

std::string format_fixed6(double value) {
    if (!std::isfinite(value)) throw ValidationError("cannot format a non-finite value");
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 6);
    if (ec != std::errc()) throw ValidationError("value too large to format");
    std::string s(buf, ptr);
    if (s == "-0.000000") s.erase(0, 1);
    return s;
}

std::string profile_to_svg(const PulleyProfile& profile, const SvgOptions& opts) {
    if (profile.size() == 0) throw ValidationError("cannot render an empty profile");
    if (!(opts.scale > 0.0)) throw ValidationError("SVG scale must be > 0");
    if (!(opts.margin >= 0.0)) throw ValidationError("SVG margin must be >= 0");

    std::vector<std::pair<double, double>> pts;
    pts.reserve(profile.size());
    const double marker = std::max(0.0, opts.axis_marker_radius);
    double min_x = -marker, max_x = marker, min_y = -marker, max_y = marker;
    for (const auto& s : profile.samples()) {
        const double r = s.r * m_to_mm;
        const double x = r * std::cos(s.theta);
        const double y = -r * std::sin(s.theta);
        pts.emplace_back(x, y);
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
    }

    const double vb_x = min_x - opts.margin;
    const double vb_y = min_y - opts.margin;
    const double vb_w = max_x - min_x + 2.0 * opts.margin;
    const double vb_h = max_y - min_y + 2.0 * opts.margin;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + format_fixed6(vb_w * opts.scale) +
           "\" height=\"" + format_fixed6(vb_h * opts.scale) + "\" viewBox=\"" + format_fixed6(vb_x) + " " +
           format_fixed6(vb_y) + " " + format_fixed6(vb_w) + " " + format_fixed6(vb_h) + "\">\n";
    out += "<path fill=\"none\" stroke=\"black\" stroke-width=\"" + format_fixed6(opts.stroke_width / opts.scale) +
           "\" d=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out += i == 0 ? "M" : " L";
        out += format_fixed6(pts[i].first);
        out += ' ';
        out += format_fixed6(pts[i].second);
    }
    if (opts.close_curve) out += " Z";
    out += "\"/>\n";
    out += "<circle cx=\"0.000000\" cy=\"0.000000\" r=\"" + format_fixed6(marker) + "\" fill=\"black\"/>\n";
    out += "</svg>\n";
    return out;
}

std::string profile_to_csv(const PulleyProfile& profile) {
    std::string out(profile_csv_header);
    out += '\n';
    for (const auto& s : profile.samples())
        append_row(out, {format_fixed6(rad_to_deg(s.theta)), format_fixed6(s.r * m_to_mm)});
    return out;
}

PulleyProfile read_profile_csv(std::string_view text, double circular_radius) {
    std::vector<PolarSample> samples;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        if (line_no == 1) {
            if (line != profile_csv_header)
                throw ParseError(1, "expected header '" + std::string(profile_csv_header) + "'");
            continue;
        }
        if (line.empty()) {
            if (pos >= text.size()) break;
            throw ParseError(line_no, "empty line");
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
            throw ParseError(line_no, "expected 2 fields");
        const double theta_deg = parse_number(line.substr(0, comma), line_no);
        const double r_mm = parse_number(line.substr(comma + 1), line_no);
        if (r_mm < 0.0) throw ParseError(line_no, "negative radius");
        if (!samples.empty() && !(deg_to_rad(theta_deg) > samples.back().theta))
            throw ParseError(line_no, "theta must be strictly increasing");
        samples.push_back({deg_to_rad(theta_deg), r_mm / m_to_mm});
    }
    if (line_no == 0) throw ParseError(1, "missing header");
    if (samples.empty()) throw ValidationError("profile CSV holds no samples");
    return PulleyProfile(circular_radius, std::move(samples));
}

std::string sweep_to_csv(const SweepTable& table) {
    std::string out(sweep_csv_header);
    out += '\n';
    for (const auto& r : table.rows)
        append_row(out, {format_fixed6(r.u * m_to_mm), format_fixed6(r.spring_force), format_fixed6(r.counter_force),
                         format_fixed6(r.op_force_ideal), format_fixed6(r.op_force_plus),
                         format_fixed6(r.op_force_minus)});
    return out;
}

std::string trace_to_csv(const GraspTrace& trace) {
    std::string out(trace_csv_header);
    out += '\n';
    for (const auto& r : trace.rows)
        append_row(out, {std::to_string(r.tick), to_string(r.phase), format_fixed6(r.jaw_position * m_to_mm),
                         format_fixed6(r.grip_force), format_fixed6(r.actuator_force), r.latch_engaged ? "1" : "0"});
    return out;
}

}  // namespace floatconv
