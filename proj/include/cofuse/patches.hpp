#pragma once

#include "cofuse/config.hpp"
#include "cofuse/image.hpp"

#include <Eigen/Core>

#include <memory>
#include <vector>

namespace cofuse {

struct PatchCoord {
    Eigen::Index row;
    Eigen::Index col;
    bool operator==(const PatchCoord&) const = default;
};

/// Where the columns of a patch matrix came from.
struct PatchGeometry {
    Eigen::Index image_rows = 0;
    Eigen::Index image_cols = 0;
    Eigen::Index side = 0;
    Eigen::Index stride = 1;
    std::vector<PatchCoord> coords;  ///< top-left corner of column j

    bool operator==(const PatchGeometry&) const = default;
};

/// m x p matrix of vectorized patches. Column j holds the side x side window
/// at geometry->coords[j], vectorized column-major (rows vary fastest).
struct PatchMatrix {
    Eigen::MatrixXd data;
    std::shared_ptr<const PatchGeometry> geometry;

    Eigen::Index patch_dim() const { return data.rows(); }
    Eigen::Index count() const { return data.cols(); }

    /// Same data shape, same geometry; used to wrap derived matrices (Z, E, ...).
    PatchMatrix with_data(Eigen::MatrixXd d) const;
};

/// Patch positions along one axis: 0, s, 2s, ... plus the last valid
/// position (extent - side) when the stride does not land on it.
std::vector<Eigen::Index> patch_positions(Eigen::Index extent, Eigen::Index side, Eigen::Index stride);

PatchMatrix extract_patches(const GrayImage& img, const FusionConfig& cfg);
PatchMatrix extract_patches(const Plane& img, Eigen::Index side, Eigen::Index stride);

/// Places each column back at its position and averages overlapping samples.
/// No clipping: signed components (E, residuals) pass through unchanged.
Plane assemble_plane(const PatchMatrix& patches);

/// assemble_plane followed by clipping to [0,1].
GrayImage assemble_image(const PatchMatrix& patches);

struct ColumnStats {
    Eigen::RowVectorXd mean;
    Eigen::RowVectorXd variance;  ///< population variance (divide by m)
    Eigen::RowVectorXd stddev;
};

ColumnStats patch_column_stats(const Eigen::MatrixXd& patches);

} // namespace cofuse
