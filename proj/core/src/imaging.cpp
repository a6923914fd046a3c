#include "llec/imaging.hpp"

#include "llec/vq.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace llec {

RasterImage::RasterImage(int w, int h) : width(w), height(h)
{
    if (w < 1 || h < 1)
        throw std::invalid_argument("image dimensions must be positive");
    pixels.assign(3 * static_cast<std::size_t>(w) * h, 0);
}

std::uint8_t to_channel(double value)
{
    // nearbyint follows the default rounding mode, round-half-to-even.
    const double scaled = std::nearbyint(value * 255.0);
    return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

std::pair<PointCloud, ImageLayout> image_to_cloud(const RasterImage& image)
{
    const Index p = image.pixel_count();
    if (p < 1 || image.pixels.size() != static_cast<std::size_t>(3 * p))
        throw std::invalid_argument("image_to_cloud: malformed image");
    Eigen::MatrixXd data(3, p);
    for (Index i = 0; i < p; ++i)
        for (int c = 0; c < 3; ++c)
            data(c, i) = image.pixels[3 * i + c] / 255.0;
    return {PointCloud(std::move(data)), ImageLayout{image.width, image.height}};
}

RasterImage cloud_to_image(const PointCloud& cloud, ImageLayout layout)
{
    if (cloud.dim() != 3)
        throw std::invalid_argument("cloud_to_image: cloud must be 3-dimensional");
    if (layout.width < 1 || layout.height < 1 ||
        static_cast<Index>(layout.width) * layout.height != cloud.size())
        throw std::invalid_argument("cloud_to_image: layout " + std::to_string(layout.width) + "x" +
                                    std::to_string(layout.height) + " does not match " +
                                    std::to_string(cloud.size()) + " points");
    RasterImage out(layout.width, layout.height);
    for (Index i = 0; i < cloud.size(); ++i)
        for (int c = 0; c < 3; ++c)
            out.pixels[3 * i + c] = to_channel(cloud.data()(c, i));
    return out;
}

namespace {

// Next header token, skipping whitespace and '#' comments.
std::string ppm_token(std::istream& in)
{
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n')
                ;
            continue;
        }
        if (std::isspace(ch))
            continue;
        break;
    }
    while (ch != EOF && !std::isspace(ch) && ch != '#') {
        tok.push_back(static_cast<char>(ch));
        ch = in.get();
    }
    if (ch == '#')
        in.unget();
    // The single whitespace after the last header token has been consumed.
    return tok;
}

int ppm_int(std::istream& in, const char* what)
{
    const std::string tok = ppm_token(in);
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(c); }))
        throw std::runtime_error(std::string("ppm: bad ") + what + " '" + tok + "'");
    return std::stoi(tok);
}

} // namespace

RasterImage read_ppm(std::istream& in)
{
    if (ppm_token(in) != "P6")
        throw std::runtime_error("ppm: missing P6 magic");
    const int w = ppm_int(in, "width");
    const int h = ppm_int(in, "height");
    const int maxval = ppm_int(in, "maxval");
    if (maxval != 255)
        throw std::runtime_error("ppm: only maxval 255 is supported, got " + std::to_string(maxval));
    if (w < 1 || h < 1)
        throw std::runtime_error("ppm: empty image");
    RasterImage img(w, h);
    in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw std::runtime_error("ppm: truncated pixel data");
    return img;
}

RasterImage read_ppm(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return read_ppm(in);
}

void write_ppm(std::ostream& out, const RasterImage& image)
{
    out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()),
              static_cast<std::streamsize>(image.pixels.size()));
}

void write_ppm(const std::filesystem::path& path, const RasterImage& image)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    write_ppm(out, image);
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

RasterImage read_image(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    char sig[8] = {};
    in.read(sig, 8);
    static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (in.gcount() == 8 && std::equal(sig, sig + 8, reinterpret_cast<const char*>(png_sig)))
        return read_png(path);
    in.clear();
    in.seekg(0);
    return read_ppm(in);
}

void write_image(const std::filesystem::path& path, const RasterImage& image)
{
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png")
        write_png(path, image);
    else
        write_ppm(path, image);
}

Index unique_colors(const RasterImage& image)
{
    std::unordered_set<std::uint32_t> seen;
    for (std::size_t i = 0; i + 2 < image.pixels.size(); i += 3)
        seen.insert((std::uint32_t{image.pixels[i]} << 16) | (std::uint32_t{image.pixels[i + 1]} << 8) |
                    image.pixels[i + 2]);
    return static_cast<Index>(seen.size());
}

QualityReport quality_report(const RasterImage& original, const RasterImage& quantized, Index clusters)
{
    if (original.width != quantized.width || original.height != quantized.height)
        throw std::invalid_argument("quality_report: image dimensions differ");
    const PointCloud x = image_to_cloud(original).first;
    const PointCloud xstar = image_to_cloud(quantized).first;

    QualityReport r;
    r.clusters = clusters;
    r.pixels = x.size();
    r.squared_error = squared_residual(x.data(), xstar.data());
    r.distortion = r.squared_error / static_cast<double>(r.pixels);
    r.unique_colors_before = unique_colors(original);
    r.unique_colors_after = unique_colors(quantized);
    return r;
}

std::string format_report(const QualityReport& report)
{
    std::ostringstream out;
    out.precision(10);
    out << "clusters: " << report.clusters << '\n'
        << "pixels: " << report.pixels << '\n'
        << "distortion: " << report.distortion << '\n'
        << "squared_error: " << report.squared_error << '\n'
        << "unique_colors_before: " << report.unique_colors_before << '\n'
        << "unique_colors_after: " << report.unique_colors_after << '\n';
    return out.str();
}

} // namespace llec
