#pragma once

#include <filesystem>
#include <iosfwd>

#include "katka/index.hpp"

namespace katka {

// Single-file container, little-endian throughout. Layout in docs/index-format.md.
void save_index(const KatkaIndex& index, std::ostream& out);
void save_index(const KatkaIndex& index, const std::filesystem::path& path);

// Throws IndexFormatError on bad magic, unsupported version, checksum mismatch,
// truncation or inconsistent contents.
KatkaIndex load_index(std::istream& in);
KatkaIndex load_index(const std::filesystem::path& path);

}  // namespace katka
