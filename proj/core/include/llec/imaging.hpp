#pragma once

#include "llec/geometry.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace llec {

/// 8-bit RGB raster, row-major, 3 bytes per pixel.
struct RasterImage
{
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    RasterImage() = default;
    RasterImage(int w, int h);

    Index pixel_count() const { return static_cast<Index>(width) * height; }
    std::uint8_t* at(int x, int y) { return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x); }
    const std::uint8_t* at(int x, int y) const
    {
        return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
    }

    friend bool operator==(const RasterImage&, const RasterImage&) = default;
};

struct ImageLayout
{
    int width = 0;
    int height = 0;

    friend bool operator==(const ImageLayout&, const ImageLayout&) = default;
};

/// [0, 1] value to 8-bit channel: scale by 255, round half to even, clamp.
std::uint8_t to_channel(double value);

/// 3 x p cloud in row-major pixel order, channels divided by 255.
std::pair<PointCloud, ImageLayout> image_to_cloud(const RasterImage& image);

RasterImage cloud_to_image(const PointCloud& cloud, ImageLayout layout);

// Binary PPM (P6, maxval 255). Comments are accepted on read.
RasterImage read_ppm(std::istream& in);
RasterImage read_ppm(const std::filesystem::path& path);
void write_ppm(std::ostream& out, const RasterImage& image);
void write_ppm(const std::filesystem::path& path, const RasterImage& image);

RasterImage read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const RasterImage& image);

/// Format chosen by file signature on read and by extension on write
/// (".png" writes PNG, anything else PPM).
RasterImage read_image(const std::filesystem::path& path);
void write_image(const std::filesystem::path& path, const RasterImage& image);

Index unique_colors(const RasterImage& image);

struct QualityReport
{
    Index clusters = 0;              ///< S, or the number of LBG centers
    Index pixels = 0;                ///< p
    double distortion = 0.0;         ///< D with the 1/p factor, [0, 1] color scale
    double squared_error = 0.0;      ///< p * D = ||X - X*||_F^2
    Index unique_colors_before = 0;
    Index unique_colors_after = 0;
};

QualityReport quality_report(const RasterImage& original, const RasterImage& quantized, Index clusters);

/// "key: value" lines.
std::string format_report(const QualityReport& report);

} // namespace llec
