#pragma once

#include "cofuse/dictionary.hpp"

namespace cofuse {

/// Separable overcomplete 2-D DCT dictionary with `atoms` columns for
/// sqrt(patch_dim) x sqrt(patch_dim) patches.
///
/// With b = sqrt(patch_dim) and K = ceil(sqrt(atoms)), the 1-D atoms are
/// cos(pi k (2i+1) / (2K)) for i < b and k < K, mean-removed for k > 0 and
/// normalized. Column (kr, kc) of the 2-D dictionary, taken in lexicographic
/// order and truncated to `atoms`, holds v_kr(r) * v_kc(c) at vector index
/// c * b + r, matching the column-major patch layout.
///
/// Throws dimension_error when patch_dim is not a perfect square.
Dictionary overcomplete_dct(int patch_dim, int atoms);

} // namespace cofuse
