#include "cofuse/image.hpp"

#include "cofuse/error.hpp"

#include <string>

namespace cofuse {

namespace {

constexpr double kr = 0.299;
constexpr double kg = 0.587;
constexpr double kb = 0.114;
constexpr double cb_scale = 0.564;
constexpr double cr_scale = 0.713;

void require_same_size(const ColorImage& img)
{
    for (const auto& c : img.channels)
        if (c.rows() != img.height() || c.cols() != img.width())
            throw dimension_error("color channels differ in size");
}

} // namespace

void clip_unit(Plane& plane)
{
    plane = plane.cwiseMax(0.0).cwiseMin(1.0);
}

ColorImage rgb_to_ycbcr(const ColorImage& rgb)
{
    if (rgb.space != ColorSpace::rgb)
        throw error("rgb_to_ycbcr expects an RGB image");
    require_same_size(rgb);

    const Plane& r = rgb.channels[0];
    const Plane& g = rgb.channels[1];
    const Plane& b = rgb.channels[2];

    ColorImage out;
    out.space = ColorSpace::ycbcr;
    out.channels[0] = kr * r + kg * g + kb * b;
    // B - Y and R - Y written as channel differences (the weights sum to 1),
    // so gray input gives exactly neutral chroma.
    out.channels[1] = (0.5 + cb_scale * (kr * (b - r) + kg * (b - g)).array()).matrix();
    out.channels[2] = (0.5 + cr_scale * (kg * (r - g) + kb * (r - b)).array()).matrix();
    for (auto& c : out.channels)
        clip_unit(c);
    return out;
}

ColorImage ycbcr_to_rgb(const ColorImage& ycbcr)
{
    if (ycbcr.space != ColorSpace::ycbcr)
        throw error("ycbcr_to_rgb expects a YCbCr image");
    require_same_size(ycbcr);

    const Plane& y = ycbcr.channels[0];
    const Plane& cb = ycbcr.channels[1];
    const Plane& cr = ycbcr.channels[2];

    ColorImage out;
    out.space = ColorSpace::rgb;
    const Plane r_minus_y = (cr.array() - 0.5).matrix() / cr_scale;
    const Plane b_minus_y = (cb.array() - 0.5).matrix() / cb_scale;
    out.channels[0] = y + r_minus_y;
    out.channels[2] = y + b_minus_y;
    out.channels[1] = y - (kr * r_minus_y + kb * b_minus_y) / kg;
    for (auto& c : out.channels)
        clip_unit(c);
    return out;
}

ColorImage replace_luminance(const ColorImage& ycbcr, const GrayImage& y)
{
    if (ycbcr.space != ColorSpace::ycbcr)
        throw error("replace_luminance expects a YCbCr image");
    if (y.height() != ycbcr.height() || y.width() != ycbcr.width())
        throw dimension_error("luminance is " + std::to_string(y.height()) + "x" + std::to_string(y.width()) +
                              " but color image is " + std::to_string(ycbcr.height()) + "x" +
                              std::to_string(ycbcr.width()));
    ColorImage out = ycbcr;
    out.channels[0] = y.pixels;
    return out;
}

GrayImage luminance(const ColorImage& ycbcr)
{
    if (ycbcr.space != ColorSpace::ycbcr)
        throw error("luminance expects a YCbCr image");
    return GrayImage(ycbcr.channels[0]);
}

} // namespace cofuse
