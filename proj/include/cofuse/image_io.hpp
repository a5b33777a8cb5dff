#pragma once

#include "cofuse/image.hpp"

#include <filesystem>
#include <variant>

namespace cofuse {

using AnyImage = std::variant<GrayImage, ColorImage>;

/// Reads an 8-bit grayscale or RGB PNG (palette files are expanded) and maps
/// bytes v to v/255. Alpha channels and 16-bit files are rejected.
AnyImage load_image(const std::filesystem::path& path);

/// Writes an 8-bit PNG, quantizing by round(v * 255) after clamping to [0,1].
/// Color images must be tagged RGB.
void save_image(const GrayImage& img, const std::filesystem::path& path);
void save_image(const ColorImage& img, const std::filesystem::path& path);
void save_image(const AnyImage& img, const std::filesystem::path& path);

} // namespace cofuse
