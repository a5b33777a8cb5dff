#pragma once

#include <Eigen/Core>

namespace cofuse {

/// m x n matrix whose columns (atoms) have unit Euclidean norm.
using Dictionary = Eigen::MatrixXd;

/// Coupled dictionaries: atom t of `first` and atom t of `second` describe
/// the same feature as seen by the two modalities.
struct DictionaryPair {
    Dictionary first;
    Dictionary second;

    Eigen::Index patch_dim() const { return first.rows(); }
    Eigen::Index atoms() const { return first.cols(); }
};

/// Largest deviation of any column norm from 1.
double max_atom_norm_error(const Dictionary& d);

/// Throws dimension_error unless both dictionaries are m x n with equal shapes.
void check_pair(const DictionaryPair& d);

} // namespace cofuse
