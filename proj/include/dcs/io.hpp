#pragma once

#include <filesystem>
#include <string>

#include "dcs/grid.hpp"

namespace dcs {

// Shortest decimal representation that round-trips to the same double;
// keeps every serialized result byte-reproducible.
std::string format_double(double v);

// FNV-1a of the raw bytes, printed as 16 hex digits.
std::string hash_bytes_hex(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

// Writes via a temp file in the same directory followed by an atomic rename,
// so interrupted runs never leave truncated output behind.
void atomic_write(const std::filesystem::path& path, std::string_view content);

// Surface ingestion. Format is chosen by extension: .pgm is binary PGM (P5,
// 8- or 16-bit, rescaled to [0,1]); anything else is parsed as CSV rows of
// decimal heights.
SurfaceGrid load_surface(const std::filesystem::path& path);
SurfaceGrid parse_surface_csv(std::string_view text, const std::string& label);
SurfaceGrid parse_surface_pgm(std::string_view bytes, const std::string& label);

std::string surface_to_csv(const SurfaceGrid& s);

}  // namespace dcs
