#pragma once

#include "llec/geometry.hpp"
#include "llec/vq.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace llec {

struct Clustering;

/// One palette line: "id count r g b", channels 0..255.
struct PaletteEntry
{
    Index id = 0;
    Index count = 0;
    std::array<std::uint8_t, 3> rgb{};

    friend bool operator==(const PaletteEntry&, const PaletteEntry&) = default;
};

using Palette = std::vector<PaletteEntry>;

Palette make_palette(const Clustering& clustering);
Palette make_palette(const Codebook& codebook, std::span<const Index> assignment);

/// Centers at channel / 255, in palette order.
Codebook codebook_from_palette(const Palette& palette);

void write_palette(std::ostream& out, const Palette& palette);
void write_palette(const std::filesystem::path& path, const Palette& palette);
/// Blank lines and lines starting with '#' are skipped.
Palette read_palette(std::istream& in);
Palette read_palette(const std::filesystem::path& path);

/// Named colors, one "r g b" (0..255) triple per line, as a 3 x q matrix.
Eigen::MatrixXd read_color_table(const std::filesystem::path& path);

} // namespace llec
