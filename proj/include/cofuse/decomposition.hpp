#pragma once

#include "cofuse/config.hpp"
#include "cofuse/image.hpp"
#include "cofuse/patches.hpp"
#include "cofuse/scdl.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace cofuse {

/// Full state of the alternating decomposition X_k = D_k A_k + E_k.
struct DecompositionState {
    Eigen::MatrixXd x1, x2;  ///< input patch matrices
    ScdlState scdl;
    Eigen::MatrixXd e1, e2;  ///< independent components
    int iteration = 0;
    double rho = 10.0;
    double delta = 1e-7;
};

struct DecompositionResult {
    PatchMatrix z1, z2;  ///< correlated components D_k A_k
    PatchMatrix e1, e2;  ///< independent components
    PatchMatrix residual1, residual2;  ///< X_k - Z_k - E_k
    DictionaryPair dictionaries;
    SparseCodePair codes;
    std::vector<double> objective_trace;  ///< relaxed objective after each outer iteration
};

/// Sum over all entries of the squared patch-normalized product of the
/// centered independent components:
///   ((E1_ij - mu1_j)(E2_ij - mu2_j))^2 / max(var1_j var2_j, delta)
double pearson_cost(const Eigen::MatrixXd& e1, const Eigen::MatrixXd& e2, double delta);

/// Closed-form update of both independent components from their current
/// values (simultaneous update; patch statistics computed once from the
/// current E1, E2). With w1 = 2 (E2 - mu2)^2 / max(var1 var2, delta):
///   E1+ = (rho (X1 - D1 A1) + w1 mu1) / (rho + w1)
/// and symmetrically for E2+.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> em_update(const Eigen::MatrixXd& data1, const Eigen::MatrixXd& data2,
                                                      const Eigen::MatrixXd& e1, const Eigen::MatrixXd& e2,
                                                      double rho, double delta);

/// em_update with data terms X_k - D_k A_k taken from the state.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> em_update_E(const DecompositionState& state);

/// pearson_cost + rho/2 * sum_k ||D_k A_k + E_k - X_k||_F^2
double relaxed_objective(const DecompositionState& state);

/// Called after every outer iteration.
using IterationObserver = std::function<void(const DecompositionState&)>;

/// E = 0, DCT dictionaries, effective sparsity 1; then cfg.outer_iters times:
/// one SCDL alternation on X - E followed by one E update.
DecompositionResult decompose_patches(const PatchMatrix& x1, const PatchMatrix& x2, const FusionConfig& cfg,
                                      int threads = 1, const IterationObserver& observer = {});

DecompositionResult decompose(const GrayImage& img1, const GrayImage& img2, const FusionConfig& cfg,
                              int threads = 1, const IterationObserver& observer = {});

} // namespace cofuse
