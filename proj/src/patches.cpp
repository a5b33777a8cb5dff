#include "cofuse/patches.hpp"

#include "cofuse/error.hpp"

#include <string>

namespace cofuse {

PatchMatrix PatchMatrix::with_data(Eigen::MatrixXd d) const
{
    if (d.rows() != data.rows() || d.cols() != data.cols())
        throw dimension_error("patch data shape does not match geometry");
    return PatchMatrix{std::move(d), geometry};
}

std::vector<Eigen::Index> patch_positions(Eigen::Index extent, Eigen::Index side, Eigen::Index stride)
{
    std::vector<Eigen::Index> pos;
    const Eigen::Index last = extent - side;
    for (Eigen::Index p = 0; p <= last; p += stride)
        pos.push_back(p);
    if (pos.back() != last)
        pos.push_back(last);
    return pos;
}

PatchMatrix extract_patches(const GrayImage& img, const FusionConfig& cfg)
{
    cfg.validate();
    return extract_patches(img.pixels, cfg.patch_side(), cfg.stride);
}

PatchMatrix extract_patches(const Plane& img, Eigen::Index side, Eigen::Index stride)
{
    if (side < 1 || stride < 1)
        throw dimension_error("patch side and stride must be positive");
    if (stride > side)
        throw dimension_error("stride " + std::to_string(stride) + " exceeds the patch side " + std::to_string(side) +
                              " and would leave pixels uncovered");
    if (img.rows() < side || img.cols() < side)
        throw dimension_error("image " + std::to_string(img.rows()) + "x" + std::to_string(img.cols()) +
                              " is smaller than the " + std::to_string(side) + "x" + std::to_string(side) + " patch");

    auto geom = std::make_shared<PatchGeometry>();
    geom->image_rows = img.rows();
    geom->image_cols = img.cols();
    geom->side = side;
    geom->stride = stride;
    const auto rows = patch_positions(img.rows(), side, stride);
    const auto cols = patch_positions(img.cols(), side, stride);
    geom->coords.reserve(rows.size() * cols.size());
    for (auto r : rows)
        for (auto c : cols)
            geom->coords.push_back({r, c});

    const Eigen::Index count = static_cast<Eigen::Index>(geom->coords.size());
    Eigen::MatrixXd data(side * side, count);
    for (Eigen::Index j = 0; j < count; ++j) {
        const auto [r0, c0] = geom->coords[static_cast<std::size_t>(j)];
        for (Eigen::Index c = 0; c < side; ++c)
            data.col(j).segment(c * side, side) = img.col(c0 + c).segment(r0, side);
    }
    return PatchMatrix{std::move(data), std::move(geom)};
}

Plane assemble_plane(const PatchMatrix& patches)
{
    if (!patches.geometry)
        throw dimension_error("patch matrix has no geometry");
    const PatchGeometry& g = *patches.geometry;
    const Eigen::Index side = g.side;
    if (patches.data.rows() != side * side || patches.data.cols() != static_cast<Eigen::Index>(g.coords.size()))
        throw dimension_error("patch matrix shape " + std::to_string(patches.data.rows()) + "x" +
                              std::to_string(patches.data.cols()) + " does not match its geometry");

    Plane sum = Plane::Zero(g.image_rows, g.image_cols);
    Plane count = Plane::Zero(g.image_rows, g.image_cols);
    for (Eigen::Index j = 0; j < patches.data.cols(); ++j) {
        const auto [r0, c0] = g.coords[static_cast<std::size_t>(j)];
        if (r0 < 0 || c0 < 0 || r0 + side > g.image_rows || c0 + side > g.image_cols)
            throw dimension_error("patch coordinate outside the image");
        for (Eigen::Index c = 0; c < side; ++c) {
            sum.col(c0 + c).segment(r0, side) += patches.data.col(j).segment(c * side, side);
            count.col(c0 + c).segment(r0, side).array() += 1.0;
        }
    }
    if ((count.array() == 0.0).any())
        throw dimension_error("patch geometry leaves pixels uncovered");
    return sum.cwiseQuotient(count);
}

GrayImage assemble_image(const PatchMatrix& patches)
{
    Plane p = assemble_plane(patches);
    clip_unit(p);
    return GrayImage(std::move(p));
}

ColumnStats patch_column_stats(const Eigen::MatrixXd& patches)
{
    ColumnStats s;
    s.mean = patches.colwise().mean();
    s.variance = (patches.rowwise() - s.mean).array().square().colwise().mean().matrix();
    s.stddev = s.variance.cwiseSqrt();
    return s;
}

} // namespace cofuse
