#include "dcs/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dcs/rng.hpp"

namespace dcs {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw Error("format_double: conversion failed");
    return std::string(buf, ptr);
}

std::string hash_bytes_hex(std::string_view bytes) {
    const std::uint64_t h = fnv1a64(bytes);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf, 16);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

namespace {

void check_dims_or_throw(std::size_t rows, std::size_t cols) {
    if (!is_pow2(rows) || !is_pow2(cols))
        throw ConfigError("surface dims must be powers of two (got " + std::to_string(rows) +
                          "x" + std::to_string(cols) + "); resample or crop the input");
}

}  // namespace

SurfaceGrid parse_surface_csv(std::string_view text, const std::string& label) {
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = eol + 1;
        ++line_no;

        // Skip blank and comment lines.
        bool blank = true;
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch))) {
                blank = false;
                break;
            }
        if (blank || line.front() == '#') continue;

        std::vector<double> vals;
        std::size_t field_start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                std::string_view field = line.substr(field_start, i - field_start);
                // trim
                while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front())))
                    field.remove_prefix(1);
                while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back())))
                    field.remove_suffix(1);
                double v = 0.0;
                auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
                if (ec != std::errc{} || ptr != field.data() + field.size())
                    throw ParseError("CSV parse error at line " + std::to_string(line_no) +
                                     ", field " + std::to_string(vals.size() + 1) + ": '" +
                                     std::string(field) + "' is not a number");
                if (!std::isfinite(v))
                    throw ParseError("CSV: non-finite value at line " + std::to_string(line_no));
                vals.push_back(v);
                field_start = i + 1;
            }
        }
        if (!rows.empty() && vals.size() != rows.front().size())
            throw ParseError("CSV: row " + std::to_string(line_no) + " has " +
                             std::to_string(vals.size()) + " columns, expected " +
                             std::to_string(rows.front().size()));
        rows.push_back(std::move(vals));
    }
    if (rows.empty()) throw ParseError("CSV: no data rows");

    check_dims_or_throw(rows.size(), rows.front().size());
    SurfaceGrid s;
    s.dims = GridDims::make(rows.size(), rows.front().size());
    s.label = label;
    s.z.reserve(s.dims.n);
    for (const auto& r : rows) s.z.insert(s.z.end(), r.begin(), r.end());
    return s;
}

SurfaceGrid parse_surface_pgm(std::string_view bytes, const std::string& label) {
    std::size_t pos = 0;
    auto next_token = [&]() -> std::string {
        while (pos < bytes.size()) {
            if (bytes[pos] == '#') {  // comment to end of line
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
                ++pos;
            } else {
                break;
            }
        }
        const std::size_t start = pos;
        while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos])) &&
               bytes[pos] != '#')
            ++pos;
        if (start == pos) throw ParseError("PGM: unexpected end of header at byte " +
                                           std::to_string(pos));
        return std::string(bytes.substr(start, pos - start));
    };

    if (next_token() != "P5") throw ParseError("PGM: expected binary magic 'P5'");
    auto parse_uint = [&](const std::string& tok, const char* what) -> std::size_t {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            throw ParseError(std::string("PGM: bad ") + what + " '" + tok + "'");
        return v;
    };
    const std::size_t width = parse_uint(next_token(), "width");
    const std::size_t height = parse_uint(next_token(), "height");
    const std::size_t maxval = parse_uint(next_token(), "maxval");
    if (maxval == 0 || maxval > 65535) throw ParseError("PGM: maxval out of range");
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
        throw ParseError("PGM: missing whitespace after maxval");
    ++pos;  // single whitespace separates header from raster

    const std::size_t bytes_per = maxval > 255 ? 2 : 1;
    const std::size_t need = width * height * bytes_per;
    if (bytes.size() - pos < need)
        throw ParseError("PGM: raster truncated at byte " + std::to_string(bytes.size()) +
                         ", need " + std::to_string(pos + need));

    check_dims_or_throw(height, width);
    SurfaceGrid s;
    s.dims = GridDims::make(height, width);
    s.label = label;
    s.z.resize(s.dims.n);
    const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data()) + pos;
    const double scale = 1.0 / static_cast<double>(maxval);
    for (std::size_t i = 0; i < s.dims.n; ++i) {
        std::size_t v;
        if (bytes_per == 1)
            v = raw[i];
        else
            v = (static_cast<std::size_t>(raw[2 * i]) << 8) | raw[2 * i + 1];  // big-endian
        s.z[i] = static_cast<double>(v) * scale;
    }
    return s;
}

SurfaceGrid load_surface(const std::filesystem::path& path) {
    const std::string content = read_file(path);
    const std::string label = path.stem().string();
    if (path.extension() == ".pgm") return parse_surface_pgm(content, label);
    return parse_surface_csv(content, label);
}

std::string surface_to_csv(const SurfaceGrid& s) {
    std::string out;
    out.reserve(s.dims.n * 12);
    for (std::size_t r = 0; r < s.dims.rows; ++r) {
        for (std::size_t c = 0; c < s.dims.cols; ++c) {
            if (c) out += ',';
            out += format_double(s.at(r, c));
        }
        out += '\n';
    }
    return out;
}

}  // namespace dcs
