#include "cofuse/error.hpp"
#include "cofuse/fusion.hpp"
#include "cofuse/image_io.hpp"
#include "cofuse/synthetic.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace cofuse;
using testing_support::random_matrix;
using testing_support::unit_columns;

namespace {

SparseCodePair one_entry(double a1, double a2)
{
    SparseCodePair c;
    c.atoms = 3;
    c.columns.push_back({{1}, {a1}, {a2}});
    return c;
}

SparseCodePair random_codes(Eigen::Index atoms, Eigen::Index count, std::mt19937_64& rng)
{
    SparseCodePair codes;
    codes.atoms = atoms;
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_int_distribution<Eigen::Index> pick(0, atoms - 1);
    for (Eigen::Index j = 0; j < count; ++j) {
        ColumnCode col;
        for (int k = 0; k < 3; ++k) {
            const Eigen::Index t = pick(rng);
            if (std::find(col.support.begin(), col.support.end(), t) != col.support.end())
                continue;
            col.support.push_back(t);
            col.first.push_back(u(rng));
            col.second.push_back(k == 2 ? col.first.back() * -1.0 : u(rng));  // some exact ties
        }
        codes.columns.push_back(col);
    }
    return codes;
}

GrayImage fixture(const char* name)
{
    return std::get<GrayImage>(load_image(testing_support::data_dir() / name));
}

DecompositionResult hand_result(const DictionaryPair& d, const SparseCodePair& codes, const Eigen::MatrixXd& e1,
                                const Eigen::MatrixXd& e2)
{
    auto geom = std::make_shared<PatchGeometry>();
    DecompositionResult r;
    r.dictionaries = d;
    r.codes = codes;
    r.z1 = PatchMatrix{reconstruct(d.first, codes, 0), geom};
    r.z2 = PatchMatrix{reconstruct(d.second, codes, 1), geom};
    r.e1 = PatchMatrix{e1, geom};
    r.e2 = PatchMatrix{e2, geom};
    r.residual1 = PatchMatrix{Eigen::MatrixXd::Constant(e1.rows(), e1.cols(), 9.0), geom};
    r.residual2 = r.residual1;
    return r;
}

} // namespace

TEST(Selection, LargerMagnitudeWins)
{
    const SparseCodePair s = select_coefficients(one_entry(3.0, -5.0));
    EXPECT_EQ(s.columns[0].first[0], 0.0);
    EXPECT_EQ(s.columns[0].second[0], -5.0);
}

TEST(Selection, TiesGoToTheFirstSide)
{
    const SparseCodePair s = select_coefficients(one_entry(2.0, -2.0));
    EXPECT_EQ(s.columns[0].first[0], 2.0);
    EXPECT_EQ(s.columns[0].second[0], 0.0);
}

TEST(Selection, ZerosStayZero)
{
    const SparseCodePair s = select_coefficients(one_entry(0.0, 0.0));
    EXPECT_EQ(s.columns[0].first[0], 0.0);
    EXPECT_EQ(s.columns[0].second[0], 0.0);
}

TEST(Selection, ExclusiveAndScaleInvariant)
{
    std::mt19937_64 rng(1);
    const SparseCodePair codes = random_codes(20, 200, rng);
    const SparseCodePair s = select_coefficients(codes);
    EXPECT_TRUE((s.dense_first().array() * s.dense_second().array() == 0.0).all());

    SparseCodePair scaled = codes;
    for (auto& col : scaled.columns)
        for (std::size_t k = 0; k < col.support.size(); ++k) {
            col.first[k] *= 3.5;
            col.second[k] *= 3.5;
        }
    const SparseCodePair t = select_coefficients(scaled);
    EXPECT_TRUE(((s.dense_first().array() != 0.0) == (t.dense_first().array() != 0.0)).all());
    EXPECT_TRUE(((s.dense_second().array() != 0.0) == (t.dense_second().array() != 0.0)).all());
    for (std::size_t j = 0; j < codes.columns.size(); ++j)
        EXPECT_EQ(s.columns[j].support, codes.columns[j].support);
}

TEST(FuseCorrelated, MatchesBruteForceSelection)
{
    std::mt19937_64 rng(2);
    const DictionaryPair d{unit_columns(random_matrix(16, 20, rng)), unit_columns(random_matrix(16, 20, rng))};
    const SparseCodePair codes = random_codes(20, 50, rng);
    const Eigen::MatrixXd a1 = codes.dense_first(), a2 = codes.dense_second();
    Eigen::MatrixXd s1 = Eigen::MatrixXd::Zero(20, 50), s2 = Eigen::MatrixXd::Zero(20, 50);
    for (Eigen::Index j = 0; j < 50; ++j)
        for (Eigen::Index i = 0; i < 20; ++i) {
            if (std::abs(a1(i, j)) >= std::abs(a2(i, j)))
                s1(i, j) = a1(i, j);
            else
                s2(i, j) = a2(i, j);
        }
    const Eigen::MatrixXd expected = d.first * s1 + d.second * s2;
    EXPECT_LE((fuse_correlated(d, codes) - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FuseCorrelated, OneSidedAndSymmetricCases)
{
    std::mt19937_64 rng(3);
    const Dictionary d1 = unit_columns(random_matrix(16, 20, rng));
    SparseCodePair codes = random_codes(20, 40, rng);
    for (auto& col : codes.columns)
        std::fill(col.second.begin(), col.second.end(), 0.0);
    const DictionaryPair pair{d1, unit_columns(random_matrix(16, 20, rng))};
    EXPECT_LE((fuse_correlated(pair, codes) - d1 * codes.dense_first()).cwiseAbs().maxCoeff(), 1e-12);

    for (auto& col : codes.columns)
        col.second = col.first;
    EXPECT_LE((fuse_correlated(DictionaryPair{d1, d1}, codes) - d1 * codes.dense_first()).cwiseAbs().maxCoeff(),
              1e-12);
}

TEST(Fuse, AddsIndependentPartsAndDropsResiduals)
{
    std::mt19937_64 rng(4);
    const DictionaryPair d{unit_columns(random_matrix(16, 20, rng)), unit_columns(random_matrix(16, 20, rng))};
    const SparseCodePair codes = random_codes(20, 30, rng);
    const Eigen::MatrixXd zf = fuse_correlated(d, codes);

    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(16, 30);
    EXPECT_EQ(fuse(hand_result(d, codes, zero, zero)).data, zf);

    const Eigen::MatrixXd e1 = random_matrix(16, 30, rng), e2 = random_matrix(16, 30, rng);
    EXPECT_LE((fuse(hand_result(d, codes, e1, e2)).data - (zf + e1 + e2)).cwiseAbs().maxCoeff(), 1e-12);

    SparseCodePair empty;
    empty.atoms = 20;
    empty.columns.resize(30);
    EXPECT_LE((fuse(hand_result(d, empty, e1, e2)).data - (e1 + e2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(FuseImages, SmoothImageFusedWithItselfIsUnchanged)
{
    for (const GrayImage& img : {synthetic::gradient_disc(128), synthetic::soft_texture(128)}) {
        const GrayImage fused = fuse_images(img, img, FusionConfig{});
        EXPECT_LE((fused.pixels - img.pixels).cwiseAbs().maxCoeff(), 0.02);
    }
}

TEST(FuseImages, BlackPartnerDoesNotAttenuate)
{
    const GrayImage img = fixture("camera.png");
    const GrayImage fused = fuse_images(img, GrayImage(img.height(), img.width(), 0.0), FusionConfig{});
    EXPECT_LE((fused.pixels - img.pixels).cwiseAbs().maxCoeff(), 0.05);
}

TEST(FuseImages, OutputIsClippedAndDeterministic)
{
    const GrayImage a = synthetic::shepp_logan(48);
    const GrayImage b = synthetic::soft_texture(48);
    const GrayImage f1 = fuse_images(a, b, FusionConfig{});
    const GrayImage f2 = fuse_images(a, b, FusionConfig{}, 2);
    EXPECT_GE(f1.pixels.minCoeff(), 0.0);
    EXPECT_LE(f1.pixels.maxCoeff(), 1.0);
    EXPECT_EQ(f1.pixels, f2.pixels);
}

TEST(FuseColor, AchromaticFunctionalStaysAchromatic)
{
    const GrayImage anatomical = synthetic::shepp_logan(40);
    const GrayImage g = synthetic::soft_texture(40);
    ColorImage functional;
    functional.channels = {g.pixels, g.pixels, g.pixels};
    const ColorFusionRun run = fuse_color_detailed(anatomical, functional, FusionConfig{});
    EXPECT_TRUE((run.fused_ycbcr.channels[1].array() == 0.5).all());
    EXPECT_TRUE((run.fused_ycbcr.channels[2].array() == 0.5).all());
    EXPECT_EQ(run.fused.space, ColorSpace::rgb);
    EXPECT_LE((run.fused.channels[0] - run.fused.channels[1]).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((run.fused.channels[2] - run.fused.channels[1]).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FuseColor, ChromaPassesThrough)
{
    std::mt19937_64 rng(5);
    const GrayImage anatomical = synthetic::shepp_logan(40);
    ColorImage functional;
    for (auto& ch : functional.channels)
        ch = 0.5 * synthetic::soft_texture(40).pixels + 0.5 * random_matrix(40, 40, rng, 0.0, 1.0);
    const ColorFusionRun run = fuse_color_detailed(anatomical, functional, FusionConfig{});
    const ColorImage input = rgb_to_ycbcr(functional);
    EXPECT_EQ(run.fused_ycbcr.channels[1], input.channels[1]);
    EXPECT_EQ(run.fused_ycbcr.channels[2], input.channels[2]);
    EXPECT_EQ(run.fused_ycbcr.channels[0], run.luminance.fused.pixels);
}

TEST(FuseColor, BlackFunctionalKeepsAnatomy)
{
    const GrayImage anatomical = fixture("moon.png");
    ColorImage functional;
    functional.channels.fill(Plane::Zero(anatomical.height(), anatomical.width()));
    const ColorFusionRun run = fuse_color_detailed(anatomical, functional, FusionConfig{});
    EXPECT_LE((run.fused_ycbcr.channels[0] - anatomical.pixels).cwiseAbs().maxCoeff(), 0.05);
    EXPECT_TRUE((run.fused_ycbcr.channels[1].array() == 0.5).all());
    EXPECT_TRUE((run.fused_ycbcr.channels[2].array() == 0.5).all());
}

TEST(FuseColor, RejectsNonRgbFunctional)
{
    ColorImage functional;
    functional.channels.fill(Plane::Zero(16, 16));
    functional.space = ColorSpace::ycbcr;
    EXPECT_THROW(fuse_color(GrayImage(16, 16, 0.0), functional, FusionConfig{}), error);
}
