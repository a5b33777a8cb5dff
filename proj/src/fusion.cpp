#include "cofuse/fusion.hpp"

#include "cofuse/error.hpp"

#include <cmath>

namespace cofuse {

SparseCodePair select_coefficients(const SparseCodePair& codes)
{
    SparseCodePair out = codes;
    for (ColumnCode& col : out.columns) {
        for (std::size_t k = 0; k < col.support.size(); ++k) {
            if (std::abs(col.first[k]) >= std::abs(col.second[k]))
                col.second[k] = 0.0;
            else
                col.first[k] = 0.0;
        }
    }
    return out;
}

Eigen::MatrixXd fuse_correlated(const DictionaryPair& dicts, const SparseCodePair& codes)
{
    check_pair(dicts);
    const SparseCodePair selected = select_coefficients(codes);
    return reconstruct(dicts.first, selected, 0) + reconstruct(dicts.second, selected, 1);
}

PatchMatrix fuse(const DecompositionResult& result)
{
    Eigen::MatrixXd fused = fuse_correlated(result.dictionaries, result.codes);
    if (fused.rows() != result.e1.data.rows() || fused.cols() != result.e1.data.cols())
        throw dimension_error("fused correlated component does not match the independent components");
    fused += result.e1.data + result.e2.data;
    return result.e1.with_data(std::move(fused));
}

FusionRun fuse_images_detailed(const GrayImage& img1, const GrayImage& img2, const FusionConfig& cfg, int threads,
                               const IterationObserver& observer)
{
    FusionRun run;
    run.decomposition = decompose(img1, img2, cfg, threads, observer);
    run.fused = assemble_image(fuse(run.decomposition));
    return run;
}

GrayImage fuse_images(const GrayImage& img1, const GrayImage& img2, const FusionConfig& cfg, int threads)
{
    return fuse_images_detailed(img1, img2, cfg, threads).fused;
}

ColorFusionRun fuse_color_detailed(const GrayImage& anatomical, const ColorImage& functional,
                                   const FusionConfig& cfg, int threads, const IterationObserver& observer)
{
    if (functional.space != ColorSpace::rgb)
        throw error("functional image must be RGB");
    const ColorImage ycc = rgb_to_ycbcr(functional);
    ColorFusionRun run;
    run.luminance = fuse_images_detailed(luminance(ycc), anatomical, cfg, threads, observer);
    run.fused_ycbcr = replace_luminance(ycc, run.luminance.fused);
    run.fused = ycbcr_to_rgb(run.fused_ycbcr);
    return run;
}

ColorImage fuse_color(const GrayImage& anatomical, const ColorImage& functional, const FusionConfig& cfg,
                      int threads)
{
    return fuse_color_detailed(anatomical, functional, cfg, threads).fused;
}

} // namespace cofuse
