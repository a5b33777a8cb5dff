#pragma once

#include <Eigen/Core>

#include <array>

namespace cofuse {

/// One image channel, indexed (row, col). Samples live in [0, 1].
using Plane = Eigen::MatrixXd;

struct GrayImage {
    Plane pixels;

    GrayImage() = default;
    explicit GrayImage(Plane p) : pixels(std::move(p)) {}
    GrayImage(Eigen::Index height, Eigen::Index width, double value = 0.0)
        : pixels(Plane::Constant(height, width, value)) {}

    Eigen::Index height() const { return pixels.rows(); }
    Eigen::Index width() const { return pixels.cols(); }
};

enum class ColorSpace { rgb, ycbcr };

/// Three planes tagged with the color space they hold: (R, G, B) or (Y, Cb, Cr).
struct ColorImage {
    std::array<Plane, 3> channels;
    ColorSpace space = ColorSpace::rgb;

    Eigen::Index height() const { return channels[0].rows(); }
    Eigen::Index width() const { return channels[0].cols(); }
};

// Full-range BT.601 on [0,1] samples with chroma offset 0.5:
//   Y  = 0.299 R + 0.587 G + 0.114 B
//   Cb = 0.5 + 0.564 (B - Y)
//   Cr = 0.5 + 0.713 (R - Y)
// Outputs are clipped to [0,1]. Both directions throw on a wrong tag.
ColorImage rgb_to_ycbcr(const ColorImage& rgb);
ColorImage ycbcr_to_rgb(const ColorImage& ycbcr);

/// Y channel becomes `y` exactly; Cb and Cr are copied through.
ColorImage replace_luminance(const ColorImage& ycbcr, const GrayImage& y);

GrayImage luminance(const ColorImage& ycbcr);

/// Clamp every sample into [0, 1].
void clip_unit(Plane& plane);

} // namespace cofuse
