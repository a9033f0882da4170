#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyform/errors.hpp"
#include "polyform/polygon.hpp"
#include "polyform/transform.hpp"

namespace polyform {

/// Decimal with 17 significant digits; round-trips every double bit-exactly.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_complex_pair(const Complex& z) {
    return "[" + format_double(z.real()) + "," + format_double(z.imag()) + "]";
}

namespace detail {

inline std::vector<Complex> parse_vertex_array(const nlohmann::json& arr,
                                               const char* field) {
    if (!arr.is_array() || arr.size() < 3)
        throw ParseError(std::string(field) + ": expected an array of at least 3 entries");
    std::vector<Complex> out;
    out.reserve(arr.size());
    for (const auto& item : arr) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
            !item[1].is_number())
            throw ParseError(std::string(field) + ": each entry must be [re, im]");
        const double re = item[0].get<double>();
        const double im = item[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im))
            throw ParseError(std::string(field) + ": entries must be finite");
        out.emplace_back(re, im);
    }
    return out;
}

inline nlohmann::json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    nlohmann::json doc;
    try {
        // whole-input parse: trailing garbage is a parse error
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return doc;
}

inline std::string serialize_vertex_array(const std::vector<Complex>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += format_complex_pair(v[i]);
    }
    s += "]";
    return s;
}

} // namespace detail

inline Polygon read_polygon_file(const std::string& path) {
    nlohmann::json doc = detail::parse_file(path);
    if (!doc.is_object() || !doc.contains("vertices"))
        throw ParseError(path + ": expected {\"vertices\": [[re, im], ...]}");
    return Polygon{detail::parse_vertex_array(doc["vertices"], "vertices")};
}

inline WeightVector read_weights_file(const std::string& path) {
    nlohmann::json doc = detail::parse_file(path);
    if (!doc.is_object() || !doc.contains("weights"))
        throw ParseError(path + ": expected {\"weights\": [[re, im], ...]}");
    return WeightVector{detail::parse_vertex_array(doc["weights"], "weights")};
}

inline std::string polygon_to_json(const Polygon& p) {
    return "{\"vertices\":" + detail::serialize_vertex_array(p.vertices) + "}\n";
}

inline std::string weights_to_json(const WeightVector& w) {
    return "{\"weights\":" + detail::serialize_vertex_array(w.weights) + "}\n";
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

/// One JSON object per line per trajectory frame.
inline std::string trajectory_to_jsonl(const Trajectory& t) {
    std::string s;
    for (const TrajectoryFrame& f : t.frames) {
        s += "{\"step\":" + std::to_string(f.step);
        s += ",\"vertices\":" + detail::serialize_vertex_array(f.shape.vertices);
        s += ",\"log_scale\":" + format_double(f.log_scale);
        s += ",\"distance\":";
        s += f.distance_to_target ? format_double(*f.distance_to_target) : "null";
        s += "}\n";
    }
    return s;
}

} // namespace polyform
