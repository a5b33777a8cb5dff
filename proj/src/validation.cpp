#include "cofuse/validation.hpp"

#include "cofuse/decomposition.hpp"
#include "cofuse/fusion.hpp"
#include "cofuse/patches.hpp"
#include "cofuse/sparse_coding.hpp"
#include "cofuse/synthetic.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

namespace cofuse {

namespace {

CheckResult timed(const std::function<CheckResult()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    CheckResult r = body();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

CheckResult common_support(const ValidationOptions& opt)
{
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> normal;
    const int trials = opt.quick ? 200 : 1000;
    int violations = 0;
    for (int i = 0; i < trials; ++i) {
        DictionaryPair dicts{synthetic::random_dictionary(16, 32, rng), synthetic::random_dictionary(16, 32, rng)};
        Eigen::VectorXd x1(16), x2(16);
        for (Eigen::Index k = 0; k < 16; ++k) {
            x1(k) = normal(rng);
            x2(k) = normal(rng);
        }
        const int t = 1 + i % 5;
        const ColumnCode code = code_column_pair(x1, x2, dicts, t, 1e-4);
        std::vector<Eigen::Index> atoms = code.support;
        std::sort(atoms.begin(), atoms.end());
        const bool distinct = std::adjacent_find(atoms.begin(), atoms.end()) == atoms.end();
        const bool in_range = atoms.empty() || (atoms.front() >= 0 && atoms.back() < 32);
        if (!distinct || !in_range || atoms.size() > static_cast<std::size_t>(t) ||
            code.first.size() != atoms.size() || code.second.size() != atoms.size())
            ++violations;
    }
    return {.name = "common_support", .passed = violations == 0,
            .value = static_cast<double>(violations),
            .bound = 0.0,
            .detail = std::to_string(trials) + " column pairs"};
}

CheckResult planted_recovery(const ValidationOptions& opt)
{
    synthetic::PlantedSpec spec;
    if (opt.quick)
        spec.count = 500;
    const synthetic::PlantedModel model = synthetic::planted_model(spec, opt.seed);

    FusionConfig cfg;
    cfg.sparsity_T = spec.sparsity;
    const DecompositionResult r =
        decompose_patches(PatchMatrix{model.x1, nullptr}, PatchMatrix{model.x2, nullptr}, cfg, opt.threads);

    Eigen::MatrixXd truth(model.z1.rows(), 2 * model.z1.cols());
    Eigen::MatrixXd found(truth.rows(), truth.cols());
    truth << model.z1, model.z2;
    found << r.z1.data, r.z2.data;
    const double rel = (found - truth).norm() / truth.norm();
    return {.name = "planted_recovery", .passed = rel <= 0.1, .value = rel, .bound = 0.1,
            .detail = "relative error of Z over " + std::to_string(spec.count) + " columns"};
}

CheckResult idempotence(const ValidationOptions& opt)
{
    FusionConfig cfg;
    double worst = 0.0;
    std::string detail;
    for (const auto& [name, img] : synthetic::standard_images(opt.quick ? 40 : 128)) {
        const GrayImage fused = fuse_images(img, img, cfg, opt.threads);
        const double err = (fused.pixels - img.pixels).cwiseAbs().maxCoeff();
        worst = std::max(worst, err);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s%s %.4f", detail.empty() ? "" : ", ", name.c_str(), err);
        detail += buf;
    }
    return {.name = "idempotence", .passed = worst <= 0.02, .value = worst, .bound = 0.02,
            .detail = detail};
}

CheckResult dark_preservation(const ValidationOptions& opt)
{
    FusionConfig cfg;
    double worst = 0.0;
    for (const auto& [name, img] : synthetic::standard_images(opt.quick ? 40 : 128)) {
        const GrayImage black(img.height(), img.width(), 0.0);
        const GrayImage fused = fuse_images(img, black, cfg, opt.threads);
        worst = std::max(worst, (fused.pixels - img.pixels).cwiseAbs().maxCoeff());
    }
    return {.name = "dark_preservation", .passed = worst <= 0.05, .value = worst, .bound = 0.05,
            .detail = "max pixel error"};
}

CheckResult patch_round_trip(const ValidationOptions& opt)
{
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit;
    Plane img(37, 29);
    for (Eigen::Index c = 0; c < img.cols(); ++c)
        for (Eigen::Index r = 0; r < img.rows(); ++r)
            img(r, c) = unit(rng);
    double worst = 0.0;
    for (int stride : {1, 2, 3})
        worst = std::max(worst, (assemble_plane(extract_patches(img, 8, stride)) - img).cwiseAbs().maxCoeff());
    return {.name = "patch_round_trip", .passed = worst <= 1e-12, .value = worst, .bound = 1e-12,
            .detail = "37x29, strides 1-3"};
}

} // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& options)
{
    std::vector<CheckResult> out;
    out.push_back(timed([&] { return common_support(options); }));
    out.push_back(timed([&] { return planted_recovery(options); }));
    out.push_back(timed([&] { return idempotence(options); }));
    out.push_back(timed([&] { return dark_preservation(options); }));
    out.push_back(timed([&] { return patch_round_trip(options); }));
    return out;
}

std::string format_results(const std::vector<CheckResult>& results)
{
    std::string text;
    int failed = 0;
    for (const CheckResult& r : results) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%-4s %-18s value=%-11.4g bound=%-8.3g %6.2fs  %s\n", r.passed ? "PASS" : "FAIL",
                      r.name.c_str(), r.value, r.bound, r.seconds, r.detail.c_str());
        text += buf;
        failed += r.passed ? 0 : 1;
    }
    text += std::to_string(results.size() - failed) + "/" + std::to_string(results.size()) + " checks passed\n";
    return text;
}

} // namespace cofuse
