#include "llec/imaging.hpp"

#include <png.h>

#include <cstring>
#include <stdexcept>

namespace llec {

RasterImage read_png(const std::filesystem::path& path)
{
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str()))
        throw std::runtime_error("png: " + path.string() + ": " + image.message);

    image.format = PNG_FORMAT_RGB;
    RasterImage out(static_cast<int>(image.width), static_cast<int>(image.height));
    if (!png_image_finish_read(&image, nullptr, out.pixels.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw std::runtime_error("png: " + path.string() + ": " + msg);
    }
    return out;
}

void write_png(const std::filesystem::path& path, const RasterImage& img)
{
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width);
    image.height = static_cast<png_uint_32>(img.height);
    image.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&image, path.c_str(), 0, img.pixels.data(), 0, nullptr))
        throw std::runtime_error("png: cannot write " + path.string() + ": " + image.message);
}

} // namespace llec
