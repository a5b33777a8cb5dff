#pragma once

#include "cofuse/config.hpp"
#include "cofuse/dictionary.hpp"
#include "cofuse/sparse_coding.hpp"

#include <vector>

namespace cofuse {

/// State of the coupled dictionary learning alternation.
struct ScdlState {
    DictionaryPair dictionaries;
    SparseCodePair codes;
    int effective_sparsity = 1;           ///< sparsity used by the next step, grows to cfg.sparsity_T
    std::vector<double> objective_trace;  ///< coding objective after each step
    std::vector<Eigen::Index> last_replaced;  ///< dead atoms re-seeded in the last step
};

/// Both dictionaries set to the overcomplete DCT, effective sparsity 1.
ScdlState initial_scdl_state(const FusionConfig& cfg);

/// One alternation on the targets x1, x2 (the inputs minus the current
/// independent components): coupled sparse coding at the effective sparsity,
/// a K-SVD sweep on each dictionary, objective recorded, then the effective
/// sparsity advances by one up to cfg.sparsity_T.
ScdlState scdl_step(const Eigen::MatrixXd& x1, const Eigen::MatrixXd& x2, ScdlState state, const FusionConfig& cfg,
                    int threads = 1);

} // namespace cofuse
