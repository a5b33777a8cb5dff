#pragma once

#include "cofuse/dictionary.hpp"

#include <Eigen/Core>

#include <vector>

namespace cofuse {

/// Codes of one column pair. Both sides use the same atoms (`support`, in
/// selection order); `first[k]` and `second[k]` are the coefficients of
/// atom support[k] on side 1 and side 2.
struct ColumnCode {
    std::vector<Eigen::Index> support;
    std::vector<double> first;
    std::vector<double> second;
};

/// Sparse codes A1, A2 (n x p) with identical column supports.
struct SparseCodePair {
    Eigen::Index atoms = 0;
    std::vector<ColumnCode> columns;

    Eigen::Index count() const { return static_cast<Eigen::Index>(columns.size()); }

    Eigen::MatrixXd dense_first() const;
    Eigen::MatrixXd dense_second() const;
};

/// D * A for one side of the code pair (side 0 -> first, 1 -> second).
Eigen::MatrixXd reconstruct(const Dictionary& d, const SparseCodePair& codes, int side);

/// Coupled greedy pursuit for one column pair.
///
/// Each step picks the atom maximizing |r1' d1_t| + |r2' d2_t| (ties go to
/// the smallest index), then re-fits each side by least squares over the
/// selected atoms of its own dictionary. The loop ends when T atoms are
/// selected or when either residual norm drops below `epsilon`. A candidate
/// whose addition makes either selected sub-dictionary numerically rank
/// deficient is rejected for this column and the search continues.
ColumnCode code_column_pair(const Eigen::Ref<const Eigen::VectorXd>& x1,
                            const Eigen::Ref<const Eigen::VectorXd>& x2,
                            const DictionaryPair& dicts, int sparsity, double epsilon);

/// code_column_pair on every column pair. Columns are independent; the
/// result is identical for any thread count.
SparseCodePair code_all(const Eigen::MatrixXd& x1, const Eigen::MatrixXd& x2, const DictionaryPair& dicts,
                        int sparsity, double epsilon, int threads = 1);

} // namespace cofuse
