#include "cofuse/sparse_coding.hpp"

#include "cofuse/error.hpp"
#include "cofuse/parallel.hpp"

#include <cmath>
#include <string>

namespace cofuse {

namespace {

// A new atom whose component orthogonal to the already selected ones is
// shorter than this (atoms have unit norm) is treated as linearly dependent.
constexpr double rank_tolerance = 1e-8;

/// Incrementally built thin QR factorization of the selected atoms of one
/// dictionary, via Gram-Schmidt with one re-orthogonalization pass.
class IncrementalQr {
public:
    IncrementalQr(Eigen::Index rows, int capacity) : q_(rows, capacity), r_(Eigen::MatrixXd::Zero(capacity, capacity)) {}

    int size() const { return size_; }

    /// Appends `atom`; returns false (leaving the factorization unchanged)
    /// when it is numerically dependent on the current columns.
    bool try_append(const Eigen::Ref<const Eigen::VectorXd>& atom)
    {
        const int k = size_;
        Eigen::VectorXd w = atom;
        Eigen::VectorXd proj = Eigen::VectorXd::Zero(k);
        for (int pass = 0; pass < 2; ++pass) {
            const Eigen::VectorXd h = q_.leftCols(k).transpose() * w;
            w.noalias() -= q_.leftCols(k) * h;
            proj += h;
        }
        const double norm = w.norm();
        if (!(norm > rank_tolerance * atom.norm()))
            return false;
        q_.col(k) = w / norm;
        r_.col(k).head(k) = proj;
        r_(k, k) = norm;
        ++size_;
        return true;
    }

    void pop_back() { --size_; }

    /// Least-squares coefficients of x over the appended atoms.
    Eigen::VectorXd solve(const Eigen::Ref<const Eigen::VectorXd>& x) const
    {
        const Eigen::VectorXd qtx = q_.leftCols(size_).transpose() * x;
        return r_.topLeftCorner(size_, size_).triangularView<Eigen::Upper>().solve(qtx);
    }

private:
    Eigen::MatrixXd q_;
    Eigen::MatrixXd r_;
    int size_ = 0;
};

Eigen::MatrixXd dense_side(const SparseCodePair& codes, int side)
{
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(codes.atoms, codes.count());
    for (Eigen::Index j = 0; j < codes.count(); ++j) {
        const ColumnCode& col = codes.columns[static_cast<std::size_t>(j)];
        const auto& values = side == 0 ? col.first : col.second;
        for (std::size_t k = 0; k < col.support.size(); ++k)
            a(col.support[k], j) = values[k];
    }
    return a;
}

} // namespace

Eigen::MatrixXd SparseCodePair::dense_first() const { return dense_side(*this, 0); }
Eigen::MatrixXd SparseCodePair::dense_second() const { return dense_side(*this, 1); }

Eigen::MatrixXd reconstruct(const Dictionary& d, const SparseCodePair& codes, int side)
{
    if (d.cols() != codes.atoms)
        throw dimension_error("dictionary has " + std::to_string(d.cols()) + " atoms, codes expect " +
                              std::to_string(codes.atoms));
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(d.rows(), codes.count());
    for (Eigen::Index j = 0; j < codes.count(); ++j) {
        const ColumnCode& col = codes.columns[static_cast<std::size_t>(j)];
        const auto& values = side == 0 ? col.first : col.second;
        for (std::size_t k = 0; k < col.support.size(); ++k)
            z.col(j) += values[k] * d.col(col.support[k]);
    }
    return z;
}

ColumnCode code_column_pair(const Eigen::Ref<const Eigen::VectorXd>& x1,
                            const Eigen::Ref<const Eigen::VectorXd>& x2,
                            const DictionaryPair& dicts, int sparsity, double epsilon)
{
    const Dictionary& d1 = dicts.first;
    const Dictionary& d2 = dicts.second;
    const Eigen::Index atoms = d1.cols();
    if (x1.size() != d1.rows() || x2.size() != d2.rows())
        throw dimension_error("signal length does not match dictionary rows");
    if (sparsity < 1)
        throw error("sparsity must be >= 1");

    ColumnCode code;
    Eigen::VectorXd r1 = x1;
    Eigen::VectorXd r2 = x2;
    if (r1.norm() < epsilon || r2.norm() < epsilon)
        return code;

    const int capacity = static_cast<int>(std::min<Eigen::Index>({sparsity, atoms, d1.rows()}));
    IncrementalQr qr1(d1.rows(), capacity);
    IncrementalQr qr2(d2.rows(), capacity);
    std::vector<char> eligible(static_cast<std::size_t>(atoms), 1);
    Eigen::VectorXd c1(atoms), c2(atoms);

    while (static_cast<int>(code.support.size()) < capacity) {
        c1.noalias() = d1.transpose() * r1;
        c2.noalias() = d2.transpose() * r2;

        Eigen::Index best = -1;
        double best_score = -1.0;
        for (Eigen::Index t = 0; t < atoms; ++t) {
            if (!eligible[static_cast<std::size_t>(t)])
                continue;
            const double score = std::abs(c1[t]) + std::abs(c2[t]);
            if (score > best_score) {
                best_score = score;
                best = t;
            }
        }
        if (best < 0)
            break;
        eligible[static_cast<std::size_t>(best)] = 0;

        // Both sides must accept the atom, otherwise neither does.
        if (!qr1.try_append(d1.col(best)))
            continue;
        if (!qr2.try_append(d2.col(best))) {
            qr1.pop_back();
            continue;
        }
        code.support.push_back(best);

        const Eigen::VectorXd a1 = qr1.solve(x1);
        const Eigen::VectorXd a2 = qr2.solve(x2);
        r1 = x1;
        r2 = x2;
        for (std::size_t k = 0; k < code.support.size(); ++k) {
            r1.noalias() -= a1[static_cast<Eigen::Index>(k)] * d1.col(code.support[k]);
            r2.noalias() -= a2[static_cast<Eigen::Index>(k)] * d2.col(code.support[k]);
        }
        code.first.assign(a1.data(), a1.data() + a1.size());
        code.second.assign(a2.data(), a2.data() + a2.size());

        if (r1.norm() < epsilon || r2.norm() < epsilon)
            break;
    }
    return code;
}

SparseCodePair code_all(const Eigen::MatrixXd& x1, const Eigen::MatrixXd& x2, const DictionaryPair& dicts,
                        int sparsity, double epsilon, int threads)
{
    check_pair(dicts);
    if (x1.rows() != x2.rows() || x1.cols() != x2.cols())
        throw dimension_error("signal matrices differ in shape: " + std::to_string(x1.rows()) + "x" +
                              std::to_string(x1.cols()) + " vs " + std::to_string(x2.rows()) + "x" +
                              std::to_string(x2.cols()));
    if (x1.rows() != dicts.patch_dim())
        throw dimension_error("signal length " + std::to_string(x1.rows()) + " does not match dictionary rows " +
                              std::to_string(dicts.patch_dim()));

    SparseCodePair codes;
    codes.atoms = dicts.atoms();
    codes.columns.resize(static_cast<std::size_t>(x1.cols()));
    parallel_for(x1.cols(), threads, [&](Eigen::Index begin, Eigen::Index end) {
        for (Eigen::Index j = begin; j < end; ++j)
            codes.columns[static_cast<std::size_t>(j)] =
                code_column_pair(x1.col(j), x2.col(j), dicts, sparsity, epsilon);
    });
    return codes;
}

} // namespace cofuse
