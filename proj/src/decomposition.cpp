#include "cofuse/decomposition.hpp"

#include "cofuse/error.hpp"

#include <string>

namespace cofuse {

namespace {

void require_same_shape(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const char* what)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw dimension_error(std::string(what) + ": shapes " + std::to_string(a.rows()) + "x" +
                              std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                              std::to_string(b.cols()) + " differ");
}

Eigen::RowVectorXd guarded_denominator(const ColumnStats& s1, const ColumnStats& s2, double delta)
{
    return s1.variance.cwiseProduct(s2.variance).cwiseMax(delta);
}

} // namespace

double pearson_cost(const Eigen::MatrixXd& e1, const Eigen::MatrixXd& e2, double delta)
{
    require_same_shape(e1, e2, "pearson_cost");
    const ColumnStats s1 = patch_column_stats(e1);
    const ColumnStats s2 = patch_column_stats(e2);
    const Eigen::RowVectorXd den = guarded_denominator(s1, s2, delta);
    const Eigen::ArrayXXd prod = (e1.rowwise() - s1.mean).array() * (e2.rowwise() - s2.mean).array();
    return (prod.square().rowwise() / den.array()).sum();
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> em_update(const Eigen::MatrixXd& data1, const Eigen::MatrixXd& data2,
                                                      const Eigen::MatrixXd& e1, const Eigen::MatrixXd& e2,
                                                      double rho, double delta)
{
    require_same_shape(e1, e2, "em_update");
    require_same_shape(data1, e1, "em_update");
    require_same_shape(data2, e2, "em_update");

    const ColumnStats s1 = patch_column_stats(e1);
    const ColumnStats s2 = patch_column_stats(e2);
    const Eigen::RowVectorXd den = guarded_denominator(s1, s2, delta);

    const Eigen::ArrayXXd w1 = 2.0 * ((e2.rowwise() - s2.mean).array().square().rowwise() / den.array());
    const Eigen::ArrayXXd w2 = 2.0 * ((e1.rowwise() - s1.mean).array().square().rowwise() / den.array());

    Eigen::MatrixXd next1 = ((rho * data1.array() + w1.rowwise() * s1.mean.array()) / (rho + w1)).matrix();
    Eigen::MatrixXd next2 = ((rho * data2.array() + w2.rowwise() * s2.mean.array()) / (rho + w2)).matrix();
    return {std::move(next1), std::move(next2)};
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> em_update_E(const DecompositionState& state)
{
    const Eigen::MatrixXd data1 = state.x1 - reconstruct(state.scdl.dictionaries.first, state.scdl.codes, 0);
    const Eigen::MatrixXd data2 = state.x2 - reconstruct(state.scdl.dictionaries.second, state.scdl.codes, 1);
    return em_update(data1, data2, state.e1, state.e2, state.rho, state.delta);
}

double relaxed_objective(const DecompositionState& state)
{
    const Eigen::MatrixXd z1 = reconstruct(state.scdl.dictionaries.first, state.scdl.codes, 0);
    const Eigen::MatrixXd z2 = reconstruct(state.scdl.dictionaries.second, state.scdl.codes, 1);
    const double penalty = (z1 + state.e1 - state.x1).squaredNorm() + (z2 + state.e2 - state.x2).squaredNorm();
    return pearson_cost(state.e1, state.e2, state.delta) + 0.5 * state.rho * penalty;
}

DecompositionResult decompose_patches(const PatchMatrix& x1, const PatchMatrix& x2, const FusionConfig& cfg,
                                      int threads, const IterationObserver& observer)
{
    cfg.validate();
    require_same_shape(x1.data, x2.data, "decompose");
    if (x1.patch_dim() != cfg.patch_dim)
        throw dimension_error("patch length " + std::to_string(x1.patch_dim()) + " does not match patch_dim " +
                              std::to_string(cfg.patch_dim));

    DecompositionState state;
    state.x1 = x1.data;
    state.x2 = x2.data;
    state.e1 = Eigen::MatrixXd::Zero(x1.data.rows(), x1.data.cols());
    state.e2 = Eigen::MatrixXd::Zero(x2.data.rows(), x2.data.cols());
    state.scdl = initial_scdl_state(cfg);
    state.scdl.codes.columns.resize(static_cast<std::size_t>(x1.count()));
    state.rho = cfg.rho;
    state.delta = cfg.delta;

    std::vector<double> trace;
    for (int it = 0; it < cfg.outer_iters; ++it) {
        state.scdl = scdl_step(state.x1 - state.e1, state.x2 - state.e2, std::move(state.scdl), cfg, threads);
        auto [e1, e2] = em_update_E(state);
        state.e1 = std::move(e1);
        state.e2 = std::move(e2);
        state.iteration = it + 1;
        trace.push_back(relaxed_objective(state));
        if (observer)
            observer(state);
    }

    Eigen::MatrixXd z1 = reconstruct(state.scdl.dictionaries.first, state.scdl.codes, 0);
    Eigen::MatrixXd z2 = reconstruct(state.scdl.dictionaries.second, state.scdl.codes, 1);

    DecompositionResult out{
        .z1 = x1.with_data(z1),
        .z2 = x2.with_data(z2),
        .e1 = x1.with_data(state.e1),
        .e2 = x2.with_data(state.e2),
        .residual1 = x1.with_data(state.x1 - z1 - state.e1),
        .residual2 = x2.with_data(state.x2 - z2 - state.e2),
        .dictionaries = std::move(state.scdl.dictionaries),
        .codes = std::move(state.scdl.codes),
        .objective_trace = std::move(trace),
    };
    return out;
}

DecompositionResult decompose(const GrayImage& img1, const GrayImage& img2, const FusionConfig& cfg, int threads,
                              const IterationObserver& observer)
{
    if (img1.height() != img2.height() || img1.width() != img2.width())
        throw dimension_error("image sizes differ: " + std::to_string(img1.height()) + "x" +
                              std::to_string(img1.width()) + " vs " + std::to_string(img2.height()) + "x" +
                              std::to_string(img2.width()));
    return decompose_patches(extract_patches(img1, cfg), extract_patches(img2, cfg), cfg, threads, observer);
}

} // namespace cofuse
