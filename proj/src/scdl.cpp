#include "cofuse/scdl.hpp"

#include "cofuse/dct_dictionary.hpp"
#include "cofuse/dictionary_update.hpp"

#include <algorithm>

namespace cofuse {

ScdlState initial_scdl_state(const FusionConfig& cfg)
{
    cfg.validate();
    ScdlState s;
    s.dictionaries.first = overcomplete_dct(cfg.patch_dim, cfg.dict_atoms);
    s.dictionaries.second = s.dictionaries.first;
    s.codes.atoms = cfg.dict_atoms;
    s.effective_sparsity = 1;
    return s;
}

ScdlState scdl_step(const Eigen::MatrixXd& x1, const Eigen::MatrixXd& x2, ScdlState state, const FusionConfig& cfg,
                    int threads)
{
    const int sparsity = std::min(state.effective_sparsity, cfg.sparsity_T);
    state.codes = code_all(x1, x2, state.dictionaries, sparsity, cfg.epsilon, threads);
    auto [rep1, rep2] = update_pair(state.dictionaries, state.codes, x1, x2);

    state.last_replaced = std::move(rep1.replaced_atoms);
    state.last_replaced.insert(state.last_replaced.end(), rep2.replaced_atoms.begin(), rep2.replaced_atoms.end());
    std::sort(state.last_replaced.begin(), state.last_replaced.end());
    state.last_replaced.erase(std::unique(state.last_replaced.begin(), state.last_replaced.end()),
                              state.last_replaced.end());

    state.objective_trace.push_back(coding_objective(state.dictionaries, state.codes, x1, x2));
    state.effective_sparsity = std::min(sparsity + 1, cfg.sparsity_T);
    return state;
}

} // namespace cofuse
