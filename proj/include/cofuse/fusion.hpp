#pragma once

#include "cofuse/config.hpp"
#include "cofuse/decomposition.hpp"
#include "cofuse/image.hpp"

namespace cofuse {

/// Keeps, at every coefficient position, the entry of larger magnitude and
/// zeroes the other. Ties go to side 1 (|a1| >= |a2| keeps a1). Supports are
/// unchanged; unselected entries are stored as 0.
SparseCodePair select_coefficients(const SparseCodePair& codes);

/// Z_F = D1 A1' + D2 A2' with A' from select_coefficients.
Eigen::MatrixXd fuse_correlated(const DictionaryPair& dicts, const SparseCodePair& codes);

/// X_F = Z_F + E1 + E2. Decomposition residuals are discarded.
PatchMatrix fuse(const DecompositionResult& result);

struct FusionRun {
    GrayImage fused;
    DecompositionResult decomposition;
};

/// decompose -> fuse -> average overlapping patches -> clip to [0,1].
FusionRun fuse_images_detailed(const GrayImage& img1, const GrayImage& img2, const FusionConfig& cfg,
                               int threads = 1, const IterationObserver& observer = {});

GrayImage fuse_images(const GrayImage& img1, const GrayImage& img2, const FusionConfig& cfg, int threads = 1);

struct ColorFusionRun {
    ColorImage fused;        ///< RGB
    ColorImage fused_ycbcr;  ///< before the conversion back to RGB
    FusionRun luminance;
};

/// Fuses the luminance of an RGB functional image with a grayscale
/// anatomical image; chroma of the functional image is carried over.
ColorFusionRun fuse_color_detailed(const GrayImage& anatomical, const ColorImage& functional,
                                   const FusionConfig& cfg, int threads = 1, const IterationObserver& observer = {});

ColorImage fuse_color(const GrayImage& anatomical, const ColorImage& functional, const FusionConfig& cfg,
                      int threads = 1);

} // namespace cofuse
