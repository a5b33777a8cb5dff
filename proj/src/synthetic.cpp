#include "cofuse/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

namespace cofuse::synthetic {

namespace {

struct Ellipse {
    double intensity, a, b, x0, y0, phi_deg;
};

// Toft's modified Shepp-Logan parameters.
constexpr std::array<Ellipse, 10> shepp_logan_ellipses{{
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
    {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0},
    {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0},
    {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},
    {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
    {0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0},
    {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0},
}};

double unit_coord(Eigen::Index i, Eigen::Index size)
{
    return (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(size) - 1.0;
}

} // namespace

GrayImage shepp_logan(Eigen::Index size)
{
    GrayImage img(size, size);
    for (Eigen::Index r = 0; r < size; ++r) {
        const double y = -unit_coord(r, size);
        for (Eigen::Index c = 0; c < size; ++c) {
            const double x = unit_coord(c, size);
            double v = 0.0;
            for (const Ellipse& e : shepp_logan_ellipses) {
                const double phi = e.phi_deg * std::numbers::pi / 180.0;
                const double dx = x - e.x0;
                const double dy = y - e.y0;
                const double u = dx * std::cos(phi) + dy * std::sin(phi);
                const double w = -dx * std::sin(phi) + dy * std::cos(phi);
                if ((u * u) / (e.a * e.a) + (w * w) / (e.b * e.b) <= 1.0)
                    v += e.intensity;
            }
            img.pixels(r, c) = v;
        }
    }
    clip_unit(img.pixels);
    return img;
}

GrayImage gradient_disc(Eigen::Index size)
{
    GrayImage img(size, size);
    for (Eigen::Index r = 0; r < size; ++r) {
        const double y = unit_coord(r, size);
        for (Eigen::Index c = 0; c < size; ++c) {
            const double x = unit_coord(c, size);
            const double radial = 0.6 * std::exp(-(x * x + y * y) / 0.5);
            const double ramp = 0.15 * (x + 1.0);
            const double dx = x - 0.3, dy = y + 0.25;
            const double disc = 0.3 / (1.0 + std::exp((std::sqrt(dx * dx + dy * dy) - 0.25) / 0.02));
            img.pixels(r, c) = radial + ramp + disc;
        }
    }
    clip_unit(img.pixels);
    return img;
}

GrayImage soft_texture(Eigen::Index size)
{
    GrayImage img(size, size);
    for (Eigen::Index r = 0; r < size; ++r) {
        const double y = unit_coord(r, size);
        for (Eigen::Index c = 0; c < size; ++c) {
            const double x = unit_coord(c, size);
            const double envelope = std::exp(-(x * x + y * y) / 0.6);
            const double wave = std::sin(6.0 * x + 2.0 * y) * std::cos(4.0 * y - 1.5 * x);
            img.pixels(r, c) = 0.1 + 0.8 * envelope * (0.55 + 0.45 * wave);
        }
    }
    clip_unit(img.pixels);
    return img;
}

std::vector<NamedImage> standard_images(Eigen::Index size)
{
    return {
        {"shepp_logan", shepp_logan(size)},
        {"gradient_disc", gradient_disc(size)},
        {"soft_texture", soft_texture(size)},
    };
}

Dictionary random_dictionary(Eigen::Index rows, Eigen::Index atoms, std::mt19937_64& rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    Dictionary d(rows, atoms);
    for (Eigen::Index t = 0; t < atoms; ++t) {
        for (Eigen::Index i = 0; i < rows; ++i)
            d(i, t) = normal(rng);
        d.col(t).normalize();
    }
    return d;
}

PlantedModel planted_model(const PlantedSpec& spec, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    PlantedModel model;
    model.dictionaries.first = random_dictionary(spec.patch_dim, spec.atoms, rng);
    model.dictionaries.second = random_dictionary(spec.patch_dim, spec.atoms, rng);

    std::uniform_real_distribution<double> magnitude(spec.coefficient_min, spec.coefficient_max);
    std::bernoulli_distribution sign(0.5);
    auto draw = [&] { return sign(rng) ? magnitude(rng) : -magnitude(rng); };

    std::vector<Eigen::Index> atom_ids(static_cast<std::size_t>(spec.atoms));
    std::iota(atom_ids.begin(), atom_ids.end(), Eigen::Index{0});
    std::vector<Eigen::Index> pixel_ids(static_cast<std::size_t>(spec.patch_dim));
    std::iota(pixel_ids.begin(), pixel_ids.end(), Eigen::Index{0});

    model.codes.atoms = spec.atoms;
    model.codes.columns.resize(static_cast<std::size_t>(spec.count));
    model.e1 = Eigen::MatrixXd::Zero(spec.patch_dim, spec.count);
    model.e2 = Eigen::MatrixXd::Zero(spec.patch_dim, spec.count);
    for (Eigen::Index j = 0; j < spec.count; ++j) {
        std::shuffle(atom_ids.begin(), atom_ids.end(), rng);
        ColumnCode& col = model.codes.columns[static_cast<std::size_t>(j)];
        for (int k = 0; k < spec.sparsity; ++k) {
            col.support.push_back(atom_ids[static_cast<std::size_t>(k)]);
            col.first.push_back(draw());
            col.second.push_back(draw());
        }

        std::shuffle(pixel_ids.begin(), pixel_ids.end(), rng);
        for (Eigen::Index k = 0; k < spec.mask_size; ++k) {
            model.e1(pixel_ids[static_cast<std::size_t>(k)], j) = spec.independent_amplitude * (sign(rng) ? 1.0 : -1.0);
            model.e2(pixel_ids[static_cast<std::size_t>(spec.mask_size + k)], j) =
                spec.independent_amplitude * (sign(rng) ? 1.0 : -1.0);
        }
    }

    model.z1 = reconstruct(model.dictionaries.first, model.codes, 0);
    model.z2 = reconstruct(model.dictionaries.second, model.codes, 1);
    model.x1 = model.z1 + model.e1;
    model.x2 = model.z2 + model.e2;
    return model;
}

} // namespace cofuse::synthetic
