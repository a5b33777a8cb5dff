#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace cofuse {

/// Tunable scalars of the fusion pipeline. Defaults are the published
/// settings: 8x8 fully overlapping patches, 128 atoms, 5 outer iterations,
/// at most 5 nonzeros per code, rho = 10, epsilon = 1e-4, delta = 1e-7.
struct FusionConfig {
    int patch_dim = 64;     ///< pixels per patch (square patch of side sqrt(patch_dim))
    int dict_atoms = 128;   ///< atoms per dictionary
    int outer_iters = 5;    ///< decomposition iterations
    int sparsity_T = 5;     ///< max nonzeros per code column
    double rho = 10.0;      ///< weight of the quadratic coupling penalty
    double epsilon = 1e-4;  ///< absolute residual-norm stopping threshold
    double delta = 1e-7;    ///< floor of the variance product in the Pearson term
    int stride = 1;         ///< patch step in pixels, at most the patch side

    /// Side length of a patch. Only meaningful after validate().
    int patch_side() const;

    /// Throws config_error naming the first violated invariant.
    void validate() const;

    bool operator==(const FusionConfig&) const = default;
};

/// Parses flat `key=value` text. Blank lines and lines starting with `#` are
/// ignored, absent keys keep their defaults, unknown or repeated keys are
/// rejected. The result is validated.
FusionConfig load_config(std::string_view source);

FusionConfig load_config_file(const std::filesystem::path& path);

/// Inverse of load_config: every field, one per line, shortest round-trip
/// formatting for reals.
std::string to_config_text(const FusionConfig& cfg);

} // namespace cofuse
