#include "cofuse/dictionary_update.hpp"

#include "cofuse/error.hpp"

#include <cmath>
#include <string>

namespace cofuse {

namespace {

struct Usage {
    Eigen::Index column;
    std::size_t position;  // index into the column's support list
};

void fix_sign(Eigen::VectorXd& u, Eigen::VectorXd& coefficients)
{
    Eigen::Index k = 0;
    u.cwiseAbs().maxCoeff(&k);
    if (u[k] < 0.0) {
        u = -u;
        coefficients = -coefficients;
    }
}

} // namespace

Rank1Approximation dominant_singular_triple(const Eigen::MatrixXd& e, double tolerance, int max_iterations)
{
    Rank1Approximation out;
    const Eigen::Index m = e.rows();
    out.left = Eigen::VectorXd::Unit(m, 0);
    out.right = Eigen::VectorXd::Zero(e.cols());

    Eigen::Index start = 0;
    while (start < e.cols() && e.col(start).squaredNorm() == 0.0)
        ++start;
    if (start == e.cols())
        return out;

    const Eigen::MatrixXd gram = e * e.transpose();
    Eigen::VectorXd u = e.col(start).normalized();
    for (int it = 0; it < max_iterations; ++it) {
        Eigen::VectorXd w = gram * u;
        const double norm = w.norm();
        if (norm == 0.0)
            break;
        w /= norm;
        out.iterations = it + 1;
        const double change = (w - u).norm();
        u = std::move(w);
        if (change < tolerance)
            break;
    }

    Eigen::VectorXd etu = e.transpose() * u;
    out.sigma = etu.norm();
    out.left = u;
    if (out.sigma > 0.0)
        out.right = etu / out.sigma;
    return out;
}

KsvdReport ksvd_update(Dictionary& d, SparseCodePair& codes, int side, const Eigen::MatrixXd& x)
{
    const Eigen::Index m = d.rows();
    const Eigen::Index atoms = d.cols();
    if (x.rows() != m || x.cols() != codes.count() || codes.atoms != atoms)
        throw dimension_error("ksvd_update: dictionary " + std::to_string(m) + "x" + std::to_string(atoms) +
                              ", signals " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) + ", codes " +
                              std::to_string(codes.atoms) + "x" + std::to_string(codes.count()));

    auto values = [side](ColumnCode& c) -> std::vector<double>& { return side == 0 ? c.first : c.second; };

    std::vector<std::vector<Usage>> usage(static_cast<std::size_t>(atoms));
    for (Eigen::Index j = 0; j < codes.count(); ++j) {
        const auto& support = codes.columns[static_cast<std::size_t>(j)].support;
        for (std::size_t k = 0; k < support.size(); ++k)
            usage[static_cast<std::size_t>(support[k])].push_back({j, k});
    }

    Eigen::MatrixXd residual = x - reconstruct(d, codes, side);
    std::vector<char> used_for_replacement(static_cast<std::size_t>(x.cols()), 0);
    KsvdReport report;

    for (Eigen::Index t = 0; t < atoms; ++t) {
        const auto& omega = usage[static_cast<std::size_t>(t)];

        if (omega.empty()) {
            Eigen::Index worst = -1;
            double worst_norm = 0.0;
            for (Eigen::Index j = 0; j < x.cols(); ++j) {
                if (used_for_replacement[static_cast<std::size_t>(j)])
                    continue;
                const double n = residual.col(j).squaredNorm();
                if (n > worst_norm) {
                    worst_norm = n;
                    worst = j;
                }
            }
            if (worst >= 0 && x.col(worst).norm() > 0.0) {
                used_for_replacement[static_cast<std::size_t>(worst)] = 1;
                d.col(t) = x.col(worst).normalized();
                report.replaced_atoms.push_back(t);
            }
            continue;
        }

        const auto count = static_cast<Eigen::Index>(omega.size());
        Eigen::MatrixXd err(m, count);
        Eigen::VectorXd old_coef(count);
        for (Eigen::Index k = 0; k < count; ++k) {
            const Usage& u = omega[static_cast<std::size_t>(k)];
            old_coef[k] = values(codes.columns[static_cast<std::size_t>(u.column)])[u.position];
            err.col(k) = residual.col(u.column) + old_coef[k] * d.col(t);
        }

        if (err.squaredNorm() == 0.0) {
            for (Eigen::Index k = 0; k < count; ++k) {
                const Usage& u = omega[static_cast<std::size_t>(k)];
                values(codes.columns[static_cast<std::size_t>(u.column)])[u.position] = 0.0;
                residual.col(u.column).setZero();
            }
            continue;
        }

        const Rank1Approximation triple = dominant_singular_triple(err);
        Eigen::VectorXd atom = triple.left;
        Eigen::VectorXd coef = triple.sigma * triple.right;

        // Power iteration may stall on a nearly degenerate spectrum. Keeping
        // the previous atom with refitted coefficients never increases the error.
        const Eigen::VectorXd old_fit = err.transpose() * d.col(t);
        if (old_fit.squaredNorm() > coef.squaredNorm()) {
            atom = d.col(t);
            coef = old_fit;
        }
        fix_sign(atom, coef);

        d.col(t) = atom;
        for (Eigen::Index k = 0; k < count; ++k) {
            const Usage& u = omega[static_cast<std::size_t>(k)];
            values(codes.columns[static_cast<std::size_t>(u.column)])[u.position] = coef[k];
            residual.col(u.column) = err.col(k) - coef[k] * atom;
        }
    }
    return report;
}

std::pair<KsvdReport, KsvdReport> update_pair(DictionaryPair& dicts, SparseCodePair& codes,
                                              const Eigen::MatrixXd& x1, const Eigen::MatrixXd& x2)
{
    check_pair(dicts);
    if (x1.rows() != x2.rows() || x1.cols() != x2.cols())
        throw dimension_error("signal matrices differ in shape");
    KsvdReport r1 = ksvd_update(dicts.first, codes, 0, x1);
    KsvdReport r2 = ksvd_update(dicts.second, codes, 1, x2);
    return {std::move(r1), std::move(r2)};
}

double coding_objective(const DictionaryPair& dicts, const SparseCodePair& codes, const Eigen::MatrixXd& x1,
                        const Eigen::MatrixXd& x2)
{
    return (reconstruct(dicts.first, codes, 0) - x1).squaredNorm() +
           (reconstruct(dicts.second, codes, 1) - x2).squaredNorm();
}

} // namespace cofuse
