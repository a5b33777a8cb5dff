#include "cofuse/dct_dictionary.hpp"

#include "cofuse/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cofuse {

double max_atom_norm_error(const Dictionary& d)
{
    if (d.cols() == 0)
        return 0.0;
    return (d.colwise().norm().array() - 1.0).abs().maxCoeff();
}

void check_pair(const DictionaryPair& d)
{
    if (d.first.rows() != d.second.rows() || d.first.cols() != d.second.cols())
        throw dimension_error("coupled dictionaries differ in shape");
    if (d.first.rows() == 0 || d.first.cols() == 0)
        throw dimension_error("empty dictionary");
}

Dictionary overcomplete_dct(int patch_dim, int atoms)
{
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(patch_dim))));
    if (patch_dim < 1 || side * side != patch_dim)
        throw dimension_error("patch_dim " + std::to_string(patch_dim) + " is not a perfect square");
    if (atoms < 1)
        throw dimension_error("dictionary needs at least one atom");

    const int freqs = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(atoms)) - 1e-12));

    Eigen::MatrixXd basis(side, freqs);
    for (int k = 0; k < freqs; ++k) {
        for (int i = 0; i < side; ++i)
            basis(i, k) = std::cos(std::numbers::pi * k * (2 * i + 1) / (2.0 * freqs));
        if (k > 0)
            basis.col(k).array() -= basis.col(k).mean();
        const double norm = basis.col(k).norm();
        if (norm < 1e-12)
            throw dimension_error("degenerate DCT frequency " + std::to_string(k));
        basis.col(k) /= norm;
    }

    Dictionary d(patch_dim, atoms);
    int t = 0;
    for (int kr = 0; kr < freqs && t < atoms; ++kr) {
        for (int kc = 0; kc < freqs && t < atoms; ++kc, ++t) {
            for (int c = 0; c < side; ++c)
                d.col(t).segment(c * side, side) = basis.col(kr) * basis(c, kc);
            d.col(t).normalize();
        }
    }
    return d;
}

} // namespace cofuse
