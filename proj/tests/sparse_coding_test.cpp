#include "cofuse/error.hpp"
#include "cofuse/sparse_coding.hpp"
#include "test_support.hpp"

#include <Eigen/QR>
#include <gtest/gtest.h>

#include <set>

using namespace cofuse;
using testing_support::random_matrix;
using testing_support::unit_columns;

namespace {

struct NaiveCode {
    std::vector<Eigen::Index> support;
    Eigen::VectorXd a1, a2;
};

// Straightforward greedy loop: exhaustive scoring, least squares from a
// fresh Householder QR of the selected columns at every step.
NaiveCode naive_coupled_pursuit(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2, const Eigen::MatrixXd& d1,
                                const Eigen::MatrixXd& d2, int t_max, double eps)
{
    NaiveCode out;
    Eigen::VectorXd r1 = x1, r2 = x2;
    while (static_cast<int>(out.support.size()) < t_max && r1.norm() >= eps && r2.norm() >= eps) {
        Eigen::Index best = -1;
        double best_score = -1.0;
        for (Eigen::Index t = 0; t < d1.cols(); ++t) {
            if (std::find(out.support.begin(), out.support.end(), t) != out.support.end())
                continue;
            double s1 = 0.0, s2 = 0.0;
            for (Eigen::Index i = 0; i < d1.rows(); ++i) {
                s1 += r1(i) * d1(i, t);
                s2 += r2(i) * d2(i, t);
            }
            const double score = std::abs(s1) + std::abs(s2);
            if (score > best_score) {
                best_score = score;
                best = t;
            }
        }
        out.support.push_back(best);
        const auto k = static_cast<Eigen::Index>(out.support.size());
        Eigen::MatrixXd s1(d1.rows(), k), s2(d2.rows(), k);
        for (Eigen::Index i = 0; i < k; ++i) {
            s1.col(i) = d1.col(out.support[static_cast<std::size_t>(i)]);
            s2.col(i) = d2.col(out.support[static_cast<std::size_t>(i)]);
        }
        out.a1 = s1.householderQr().solve(x1);
        out.a2 = s2.householderQr().solve(x2);
        r1 = x1 - s1 * out.a1;
        r2 = x2 - s2 * out.a2;
    }
    return out;
}

DictionaryPair random_pair(Eigen::Index m, Eigen::Index n, std::mt19937_64& rng)
{
    return {unit_columns(random_matrix(m, n, rng)), unit_columns(random_matrix(m, n, rng))};
}

Eigen::VectorXd residual(const Eigen::VectorXd& x, const Dictionary& d, const ColumnCode& code, int side)
{
    Eigen::VectorXd r = x;
    const auto& values = side == 0 ? code.first : code.second;
    for (std::size_t k = 0; k < code.support.size(); ++k)
        r -= values[k] * d.col(code.support[k]);
    return r;
}

} // namespace

TEST(CoupledPursuit, ExactSingleAtomSignals)
{
    std::mt19937_64 rng(1);
    const DictionaryPair d = random_pair(16, 24, rng);
    const Eigen::VectorXd x1 = 3.0 * d.first.col(5);
    const Eigen::VectorXd x2 = -2.0 * d.second.col(5);
    for (int t : {1, 3, 8}) {
        const ColumnCode code = code_column_pair(x1, x2, d, t, 1e-4);
        ASSERT_EQ(code.support, std::vector<Eigen::Index>{5});
        EXPECT_NEAR(code.first[0], 3.0, 1e-12);
        EXPECT_NEAR(code.second[0], -2.0, 1e-12);
        EXPECT_LE(residual(x1, d.first, code, 0).norm(), 1e-12);
        EXPECT_LE(residual(x2, d.second, code, 1).norm(), 1e-12);
    }
}

TEST(CoupledPursuit, ZeroSignalStopsImmediately)
{
    std::mt19937_64 rng(2);
    const DictionaryPair d = random_pair(16, 24, rng);
    const Eigen::VectorXd x2 = random_matrix(16, 1, rng);
    const ColumnCode code = code_column_pair(Eigen::VectorXd::Zero(16), x2, d, 4, 1e-4);
    EXPECT_TRUE(code.support.empty());
    EXPECT_TRUE(code.first.empty());
    EXPECT_TRUE(code.second.empty());
}

TEST(CoupledPursuit, MatchesNaiveOracle)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const DictionaryPair d = random_pair(8, 12, rng);
        const Eigen::VectorXd x1 = random_matrix(8, 1, rng);
        const Eigen::VectorXd x2 = random_matrix(8, 1, rng);
        const ColumnCode code = code_column_pair(x1, x2, d, 3, 1e-4);
        const NaiveCode ref = naive_coupled_pursuit(x1, x2, d.first, d.second, 3, 1e-4);
        ASSERT_EQ(code.support, ref.support) << "trial " << trial;
        for (std::size_t k = 0; k < ref.support.size(); ++k) {
            EXPECT_NEAR(code.first[k], ref.a1(static_cast<Eigen::Index>(k)), 1e-10);
            EXPECT_NEAR(code.second[k], ref.a2(static_cast<Eigen::Index>(k)), 1e-10);
        }
    }
}

TEST(CoupledPursuit, SupportsAreCommonAndBounded)
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 300; ++trial) {
        const int t = 1 + trial % 5;
        const DictionaryPair d = random_pair(16, 32, rng);
        const Eigen::MatrixXd x1 = random_matrix(16, 1, rng);
        const Eigen::MatrixXd x2 = random_matrix(16, 1, rng);
        SparseCodePair codes = code_all(x1, x2, d, t, 1e-4);
        const Eigen::MatrixXd a1 = codes.dense_first();
        const Eigen::MatrixXd a2 = codes.dense_second();
        std::set<Eigen::Index> s1, s2;
        for (Eigen::Index i = 0; i < 32; ++i) {
            if (a1(i, 0) != 0.0)
                s1.insert(i);
            if (a2(i, 0) != 0.0)
                s2.insert(i);
        }
        EXPECT_EQ(s1, s2);
        EXPECT_LE(s1.size(), static_cast<std::size_t>(t));
        EXPECT_EQ(s1, std::set<Eigen::Index>(codes.columns[0].support.begin(), codes.columns[0].support.end()));
    }
}

TEST(CoupledPursuit, ResidualEnergyDecreasesWithSparsity)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const DictionaryPair d = random_pair(16, 40, rng);
        const Eigen::VectorXd x1 = random_matrix(16, 1, rng);
        const Eigen::VectorXd x2 = random_matrix(16, 1, rng);
        double previous = x1.squaredNorm() + x2.squaredNorm();
        for (int t = 1; t <= 8; ++t) {
            const ColumnCode code = code_column_pair(x1, x2, d, t, 1e-4);
            const double energy =
                residual(x1, d.first, code, 0).squaredNorm() + residual(x2, d.second, code, 1).squaredNorm();
            EXPECT_LE(energy, previous + 1e-12);
            previous = energy;
        }
    }
}

TEST(CoupledPursuit, ResidualsAreOrthogonalToSelectedAtoms)
{
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const DictionaryPair d = random_pair(16, 40, rng);
        const Eigen::VectorXd x1 = random_matrix(16, 1, rng);
        const Eigen::VectorXd x2 = random_matrix(16, 1, rng);
        const ColumnCode code = code_column_pair(x1, x2, d, 5, 1e-4);
        const Eigen::VectorXd r1 = residual(x1, d.first, code, 0);
        const Eigen::VectorXd r2 = residual(x2, d.second, code, 1);
        for (Eigen::Index t : code.support) {
            EXPECT_NEAR(r1.dot(d.first.col(t)), 0.0, 1e-8);
            EXPECT_NEAR(r2.dot(d.second.col(t)), 0.0, 1e-8);
        }
    }
}

TEST(CoupledPursuit, DependentAtomIsSkipped)
{
    // Atom 1 duplicates atom 0 in the first dictionary only.
    std::mt19937_64 rng(7);
    DictionaryPair d = random_pair(8, 6, rng);
    d.first.col(1) = d.first.col(0);
    const Eigen::VectorXd x1 = d.first.col(0);
    const Eigen::VectorXd x2 = d.second.col(0) + d.second.col(1) + 0.3 * d.second.col(4);
    const ColumnCode code = code_column_pair(x1, x2, d, 4, 1e-12);
    std::set<Eigen::Index> seen(code.support.begin(), code.support.end());
    EXPECT_EQ(seen.size(), code.support.size());
    EXPECT_FALSE(seen.count(0) && seen.count(1));
    for (std::size_t k = 0; k < code.support.size(); ++k) {
        EXPECT_TRUE(std::isfinite(code.first[k]));
        EXPECT_TRUE(std::isfinite(code.second[k]));
    }
}

TEST(CoupledPursuit, SingleColumnCodeAllMatchesColumnCoder)
{
    std::mt19937_64 rng(8);
    const DictionaryPair d = random_pair(16, 32, rng);
    const Eigen::MatrixXd x1 = random_matrix(16, 1, rng);
    const Eigen::MatrixXd x2 = random_matrix(16, 1, rng);
    const SparseCodePair all = code_all(x1, x2, d, 4, 1e-4);
    const ColumnCode one = code_column_pair(x1.col(0), x2.col(0), d, 4, 1e-4);
    ASSERT_EQ(all.count(), 1);
    EXPECT_EQ(all.columns[0].support, one.support);
    EXPECT_EQ(all.columns[0].first, one.first);
    EXPECT_EQ(all.columns[0].second, one.second);
}

TEST(CoupledPursuit, SymmetricInputsGiveEqualCodes)
{
    std::mt19937_64 rng(9);
    const Dictionary d = unit_columns(random_matrix(16, 32, rng));
    const Eigen::MatrixXd x = random_matrix(16, 50, rng);
    const SparseCodePair codes = code_all(x, x, DictionaryPair{d, d}, 5, 1e-4);
    EXPECT_EQ(codes.dense_first(), codes.dense_second());
}

TEST(CoupledPursuit, ThreadCountDoesNotChangeCodes)
{
    std::mt19937_64 rng(10);
    const DictionaryPair d = random_pair(16, 32, rng);
    const Eigen::MatrixXd x1 = random_matrix(16, 301, rng);
    const Eigen::MatrixXd x2 = random_matrix(16, 301, rng);
    const SparseCodePair a = code_all(x1, x2, d, 4, 1e-4, 1);
    const SparseCodePair b = code_all(x1, x2, d, 4, 1e-4, 4);
    EXPECT_EQ(a.dense_first(), b.dense_first());
    EXPECT_EQ(a.dense_second(), b.dense_second());
    for (Eigen::Index j = 0; j < a.count(); ++j)
        EXPECT_EQ(a.columns[static_cast<std::size_t>(j)].support, b.columns[static_cast<std::size_t>(j)].support);
}

TEST(CoupledPursuit, ReconstructMatchesDenseProduct)
{
    std::mt19937_64 rng(11);
    const DictionaryPair d = random_pair(16, 32, rng);
    const Eigen::MatrixXd x1 = random_matrix(16, 20, rng);
    const Eigen::MatrixXd x2 = random_matrix(16, 20, rng);
    const SparseCodePair codes = code_all(x1, x2, d, 3, 1e-4);
    EXPECT_LE((reconstruct(d.first, codes, 0) - d.first * codes.dense_first()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((reconstruct(d.second, codes, 1) - d.second * codes.dense_second()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(CoupledPursuit, ShapeErrors)
{
    std::mt19937_64 rng(12);
    const DictionaryPair d = random_pair(16, 32, rng);
    EXPECT_THROW(code_all(Eigen::MatrixXd::Zero(16, 3), Eigen::MatrixXd::Zero(16, 4), d, 3, 1e-4), dimension_error);
    EXPECT_THROW(code_all(Eigen::MatrixXd::Zero(9, 3), Eigen::MatrixXd::Zero(9, 3), d, 3, 1e-4), dimension_error);
    const DictionaryPair uneven{d.first, d.second.leftCols(30)};
    EXPECT_THROW(code_all(Eigen::MatrixXd::Zero(16, 3), Eigen::MatrixXd::Zero(16, 3), uneven, 3, 1e-4),
                 dimension_error);
}
