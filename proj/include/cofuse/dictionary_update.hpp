#pragma once

#include "cofuse/dictionary.hpp"
#include "cofuse/sparse_coding.hpp"

#include <Eigen/Core>

#include <vector>

namespace cofuse {

struct Rank1Approximation {
    Eigen::VectorXd left;   ///< unit m-vector u
    double sigma = 0.0;     ///< ||E' u||
    Eigen::VectorXd right;  ///< unit vector v with E ~ u sigma v'
    int iterations = 0;
};

/// Dominant singular triple of `e` by power iteration on E E'. The start
/// vector is the first nonzero column of `e`, normalized; iteration stops
/// when successive unit iterates differ by less than `tolerance` in norm or
/// after `max_iterations`. An all-zero matrix yields sigma = 0 with the first
/// unit vector as `left`.
Rank1Approximation dominant_singular_triple(const Eigen::MatrixXd& e, double tolerance = 1e-10,
                                            int max_iterations = 1000);

struct KsvdReport {
    std::vector<Eigen::Index> replaced_atoms;  ///< dead atoms re-seeded from data
};

/// One K-SVD sweep over the atoms of `d` against the signals `x`, for one
/// side (0 or 1) of `codes`. Supports are never changed: atom t and the
/// coefficients of the columns already using it are replaced by the
/// dominant singular pair of the error restricted to those columns. The
/// updated atom has its largest-magnitude entry positive.
///
/// An atom used by no column is replaced by the normalized signal with the
/// largest current residual (each signal is used at most once per sweep).
KsvdReport ksvd_update(Dictionary& d, SparseCodePair& codes, int side, const Eigen::MatrixXd& x);

/// ksvd_update on both sides. A dead atom is dead on both sides, since
/// supports are shared, so its coefficient rows stay zero in A1 and A2.
std::pair<KsvdReport, KsvdReport> update_pair(DictionaryPair& dicts, SparseCodePair& codes,
                                              const Eigen::MatrixXd& x1, const Eigen::MatrixXd& x2);

/// ||D1 A1 - X1||_F^2 + ||D2 A2 - X2||_F^2
double coding_objective(const DictionaryPair& dicts, const SparseCodePair& codes, const Eigen::MatrixXd& x1,
                        const Eigen::MatrixXd& x2);

} // namespace cofuse
