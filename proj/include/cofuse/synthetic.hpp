#pragma once

#include "cofuse/dictionary.hpp"
#include "cofuse/image.hpp"
#include "cofuse/sparse_coding.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace cofuse::synthetic {

/// Modified Shepp-Logan head phantom, size x size, values in [0,1].
GrayImage shepp_logan(Eigen::Index size);

/// Smooth radial gradient with a bright disc and a soft ramp, in [0,1].
GrayImage gradient_disc(Eigen::Index size);

/// Low-frequency sinusoidal texture modulated by a Gaussian envelope, in [0,1].
GrayImage soft_texture(Eigen::Index size);

/// Named standard images used by the validation checks.
struct NamedImage {
    std::string name;
    GrayImage image;
};
std::vector<NamedImage> standard_images(Eigen::Index size);

/// Matrix with i.i.d. standard normal entries and unit-norm columns.
Dictionary random_dictionary(Eigen::Index rows, Eigen::Index atoms, std::mt19937_64& rng);

struct PlantedModel {
    DictionaryPair dictionaries;
    SparseCodePair codes;            ///< common supports, independent coefficient values
    Eigen::MatrixXd z1, z2;          ///< correlated parts D_k A_k
    Eigen::MatrixXd e1, e2;          ///< independent parts on disjoint pixel masks
    Eigen::MatrixXd x1, x2;          ///< z_k + e_k
};

struct PlantedSpec {
    Eigen::Index patch_dim = 64;
    Eigen::Index atoms = 128;
    Eigen::Index count = 2000;
    int sparsity = 3;
    double coefficient_min = 0.5;     ///< |coefficient| drawn from [min, max] with random sign
    double coefficient_max = 1.5;
    Eigen::Index mask_size = 4;       ///< pixels per column carrying an independent component, per side
    double independent_amplitude = 0.1;
};

/// Coupled generative model X_k = D_k A_k + E_k with supp A1 = supp A2 and
/// E1, E2 supported on disjoint random pixel subsets of every column.
PlantedModel planted_model(const PlantedSpec& spec, std::uint64_t seed);

} // namespace cofuse::synthetic
