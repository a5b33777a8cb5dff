#include "cofuse/config.hpp"
#include "cofuse/error.hpp"
#include "cofuse/fusion.hpp"
#include "cofuse/image_io.hpp"
#include "cofuse/metrics.hpp"
#include "cofuse/validation.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace cofuse;

namespace {

constexpr const char* version_string = "cofuse 0.1.0";

// Bad command-line usage: reported with exit code 2.
struct usage_error : error {
    using error::error;
};

struct PairOptions {
    std::string first, second;
    std::string out = ".";
    std::string config;
    bool dump_dicts = false;
    bool dump_components = false;
    int threads = 1;
};

struct LoadedPair {
    GrayImage gray1, gray2;               // gray + gray
    std::optional<ColorImage> functional;  // set when one input is RGB; gray1 is then the anatomical image
};

std::string size_text(Eigen::Index rows, Eigen::Index cols)
{
    return std::to_string(cols) + "x" + std::to_string(rows);
}

LoadedPair load_pair(const PairOptions& opt)
{
    AnyImage a = load_image(opt.first);
    AnyImage b = load_image(opt.second);
    auto dims = [](const AnyImage& img) {
        return std::visit([](const auto& i) { return std::pair{i.height(), i.width()}; }, img);
    };
    const auto [ra, ca] = dims(a);
    const auto [rb, cb] = dims(b);
    if (ra != rb || ca != cb)
        throw usage_error("input sizes differ: " + opt.first + " is " + size_text(ra, ca) + ", " + opt.second +
                          " is " + size_text(rb, cb));

    const bool color_a = std::holds_alternative<ColorImage>(a);
    const bool color_b = std::holds_alternative<ColorImage>(b);
    if (color_a && color_b)
        throw usage_error("at most one color input is supported");

    LoadedPair p;
    if (color_a || color_b) {
        p.functional = std::get<ColorImage>(color_a ? a : b);
        p.gray1 = std::get<GrayImage>(color_a ? b : a);
    } else {
        p.gray1 = std::get<GrayImage>(a);
        p.gray2 = std::get<GrayImage>(b);
    }
    return p;
}

FusionConfig load_options_config(const PairOptions& opt)
{
    try {
        return opt.config.empty() ? FusionConfig{} : load_config_file(opt.config);
    } catch (const config_error& e) {
        throw usage_error(e.what());
    } catch (const io_error& e) {
        throw usage_error(e.what());
    }
}

// Affine map min -> 0, max -> 1 for signed components; the parameters go into the report.
void save_visualized(const Plane& plane, const fs::path& path, const std::string& key, MetricsReport& report)
{
    const double lo = plane.minCoeff();
    const double hi = plane.maxCoeff();
    const double span = hi - lo;
    GrayImage vis(span > 0.0 ? Plane((plane.array() - lo) / span) : Plane::Zero(plane.rows(), plane.cols()));
    save_image(vis, path);
    report.extra[key + "_vis_min"] = lo;
    report.extra[key + "_vis_max"] = hi;
}

void save_components(const DecompositionResult& d, const fs::path& dir, MetricsReport& report)
{
    save_image(assemble_image(d.z1), dir / "Z1.png");
    save_image(assemble_image(d.z2), dir / "Z2.png");
    save_visualized(assemble_plane(d.e1), dir / "E1.png", "E1", report);
    save_visualized(assemble_plane(d.e2), dir / "E2.png", "E2", report);
    save_visualized(assemble_plane(d.residual1), dir / "res1.png", "res1", report);
    save_visualized(assemble_plane(d.residual2), dir / "res2.png", "res2", report);
}

// Atoms as side x side tiles, each min-max normalized, on a grid with 1-pixel gaps.
GrayImage atom_mosaic(const Dictionary& d)
{
    const auto side = static_cast<Eigen::Index>(std::lround(std::sqrt(static_cast<double>(d.rows()))));
    const auto n = d.cols();
    const auto grid_cols = static_cast<Eigen::Index>(std::ceil(std::sqrt(static_cast<double>(n))));
    const auto grid_rows = (n + grid_cols - 1) / grid_cols;
    GrayImage out(grid_rows * (side + 1) + 1, grid_cols * (side + 1) + 1, 1.0);
    for (Eigen::Index t = 0; t < n; ++t) {
        const auto atom = d.col(t);
        const double lo = atom.minCoeff();
        const double span = atom.maxCoeff() - lo;
        const auto r0 = 1 + (t / grid_cols) * (side + 1);
        const auto c0 = 1 + (t % grid_cols) * (side + 1);
        for (Eigen::Index c = 0; c < side; ++c)
            for (Eigen::Index r = 0; r < side; ++r)
                out.pixels(r0 + r, c0 + c) = span > 0.0 ? (atom(c * side + r) - lo) / span : 0.5;
    }
    return out;
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f)
        throw io_error("cannot write " + path.string());
}

int run_pair(const PairOptions& opt, bool decompose_only)
{
    const FusionConfig cfg = load_options_config(opt);
    const LoadedPair in = load_pair(opt);
    const fs::path dir = opt.out;
    fs::create_directories(dir);

    const auto start = std::chrono::steady_clock::now();
    FusionRun run;
    std::optional<ColorImage> color_out;
    if (in.functional) {
        ColorFusionRun c = fuse_color_detailed(in.gray1, *in.functional, cfg, opt.threads);
        color_out = std::move(c.fused);
        run = std::move(c.luminance);
    } else {
        run = fuse_images_detailed(in.gray1, in.gray2, cfg, opt.threads);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    MetricsReport report = build_report(run.fused, run.decomposition, seconds, cfg.delta);
    report.extra["e1_norm"] = run.decomposition.e1.data.norm();
    report.extra["e2_norm"] = run.decomposition.e2.data.norm();
    report.extra["z1_norm"] = run.decomposition.z1.data.norm();
    report.extra["z2_norm"] = run.decomposition.z2.data.norm();
    if (!run.decomposition.objective_trace.empty())
        report.extra["final_objective"] = run.decomposition.objective_trace.back();
    report.extra["color"] = in.functional ? 1.0 : 0.0;

    if (!decompose_only) {
        if (color_out)
            save_image(*color_out, dir / "fused.png");
        else
            save_image(run.fused, dir / "fused.png");
    }
    if (decompose_only || opt.dump_components)
        save_components(run.decomposition, dir, report);
    if (opt.dump_dicts) {
        save_image(atom_mosaic(run.decomposition.dictionaries.first), dir / "D1.png");
        save_image(atom_mosaic(run.decomposition.dictionaries.second), dir / "D2.png");
    }
    write_text(dir / "report.json", to_json(report));
    std::cerr << "wrote " << (dir / (decompose_only ? "report.json" : "fused.png")).string() << " in " << seconds
              << " s\n";
    return 0;
}

void add_pair_options(CLI::App* cmd, PairOptions& opt)
{
    cmd->add_option("first", opt.first, "first input PNG")->required()->check(CLI::ExistingFile);
    cmd->add_option("second", opt.second, "second input PNG")->required()->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", opt.out, "output directory (created if missing)");
    cmd->add_option("-c,--config", opt.config, "key=value configuration file")->check(CLI::ExistingFile);
    cmd->add_flag("--dump-dicts", opt.dump_dicts, "write D1.png and D2.png atom mosaics");
    cmd->add_flag("--dump-components", opt.dump_components, "write Z, E and residual images");
    cmd->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fusion of co-registered multimodal images by coupled sparse decomposition"};
    app.require_subcommand(1);

    PairOptions fuse_opt;
    CLI::App* fuse_cmd = app.add_subcommand("fuse", "fuse two images into fused.png and report.json");
    add_pair_options(fuse_cmd, fuse_opt);

    PairOptions decomp_opt;
    CLI::App* decomp_cmd = app.add_subcommand("decompose", "write correlated, independent and residual images");
    add_pair_options(decomp_cmd, decomp_opt);

    ValidationOptions val_opt;
    CLI::App* val_cmd = app.add_subcommand("validate", "run the synthetic self-checks");
    val_cmd->add_option("--seed", val_opt.seed, "seed of the synthetic instances");
    val_cmd->add_flag("--quick", val_opt.quick, "smaller instances");
    val_cmd->add_option("--threads", val_opt.threads, "worker threads")->check(CLI::PositiveNumber);

    CLI::App* version_cmd = app.add_subcommand("version", "print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*version_cmd) {
            std::cout << version_string << "\n";
            return 0;
        }
        if (*val_cmd) {
            const auto results = run_validation(val_opt);
            std::cout << format_results(results);
            for (const auto& r : results)
                if (!r.passed)
                    return 1;
            return 0;
        }
        if (*fuse_cmd)
            return run_pair(fuse_opt, false);
        return run_pair(decomp_opt, true);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
