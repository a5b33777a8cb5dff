#include "cofuse/image_io.hpp"

#include "cofuse/error.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

namespace cofuse {

namespace {

struct png_image_guard {
    png_image* img;
    ~png_image_guard() { png_image_free(img); }
};

std::uint8_t quantize(double v)
{
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

void write_png(const std::filesystem::path& path, std::uint32_t width, std::uint32_t height,
               std::uint32_t format, const std::vector<std::uint8_t>& buffer)
{
    png_image img{};
    img.version = PNG_IMAGE_VERSION;
    img.width = width;
    img.height = height;
    img.format = format;
    if (!png_image_write_to_file(&img, path.string().c_str(), 0, buffer.data(), 0, nullptr))
        throw io_error("cannot write " + path.string() + ": " + img.message);
}

} // namespace

AnyImage load_image(const std::filesystem::path& path)
{
    png_image img{};
    img.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&img, path.string().c_str()))
        throw io_error("cannot read " + path.string() + ": " + img.message);
    png_image_guard guard{&img};

    if (img.format & PNG_FORMAT_FLAG_LINEAR)
        throw io_error(path.string() + ": only 8-bit images are supported");
    if (img.format & PNG_FORMAT_FLAG_ALPHA)
        throw io_error(path.string() + ": images with an alpha channel are not supported");

    const bool color = (img.format & PNG_FORMAT_FLAG_COLOR) != 0;
    img.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    const auto rows = static_cast<Eigen::Index>(img.height);
    const auto cols = static_cast<Eigen::Index>(img.width);
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(img));
    if (!png_image_finish_read(&img, nullptr, buffer.data(), 0, nullptr))
        throw io_error("cannot decode " + path.string() + ": " + img.message);

    if (!color) {
        GrayImage out(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r)
            for (Eigen::Index c = 0; c < cols; ++c)
                out.pixels(r, c) = buffer[r * cols + c] / 255.0;
        return out;
    }

    ColorImage out;
    out.space = ColorSpace::rgb;
    for (auto& ch : out.channels)
        ch.resize(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            for (int k = 0; k < 3; ++k)
                out.channels[k](r, c) = buffer[(r * cols + c) * 3 + k] / 255.0;
    return out;
}

void save_image(const GrayImage& img, const std::filesystem::path& path)
{
    const auto rows = img.height();
    const auto cols = img.width();
    std::vector<std::uint8_t> buffer(static_cast<std::size_t>(rows * cols));
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            buffer[r * cols + c] = quantize(img.pixels(r, c));
    write_png(path, static_cast<std::uint32_t>(cols), static_cast<std::uint32_t>(rows), PNG_FORMAT_GRAY, buffer);
}

void save_image(const ColorImage& img, const std::filesystem::path& path)
{
    if (img.space != ColorSpace::rgb)
        throw error("cannot save a YCbCr image: convert to RGB first");
    const auto rows = img.height();
    const auto cols = img.width();
    std::vector<std::uint8_t> buffer(static_cast<std::size_t>(rows * cols * 3));
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            for (int k = 0; k < 3; ++k)
                buffer[(r * cols + c) * 3 + k] = quantize(img.channels[k](r, c));
    write_png(path, static_cast<std::uint32_t>(cols), static_cast<std::uint32_t>(rows), PNG_FORMAT_RGB, buffer);
}

void save_image(const AnyImage& img, const std::filesystem::path& path)
{
    std::visit([&](const auto& i) { save_image(i, path); }, img);
}

} // namespace cofuse
