#include "rezqu/basis.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace rezqu {

std::vector<BasisLabel> enumerate_basis(int max_excitation) {
    if (max_excitation < 1 || max_excitation > 2)
        throw std::invalid_argument("enumerate_basis: max_excitation must be 1 or 2");

    std::vector<BasisLabel> labels;
    for (int n_m = 0; n_m <= 2; ++n_m)
        for (int n_q = 0; n_q <= 2; ++n_q)
            for (int n_b = 0; n_b <= 2; ++n_b)
                if (n_m + n_q + n_b <= max_excitation)
                    labels.push_back({n_m, n_q, n_b});

    std::sort(labels.begin(), labels.end(), [](const BasisLabel& a, const BasisLabel& b) {
        return std::tuple(a.total(), a.n_m, a.n_q, a.n_b) <
               std::tuple(b.total(), b.n_m, b.n_q, b.n_b);
    });
    return labels;
}

Basis::Basis(int max_excitation)
    : max_excitation_(max_excitation), labels_(enumerate_basis(max_excitation)) {
    block_offsets_.assign(max_excitation_ + 2, 0);
    for (int n = 0; n <= max_excitation_; ++n) {
        int dim = 0;
        for (const auto& l : labels_)
            if (l.total() == n) ++dim;
        block_offsets_[n + 1] = block_offsets_[n] + dim;
    }
}

int Basis::index_of(const BasisLabel& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels_[i] == label) return i;
    return -1;
}

int Basis::block_offset(int n_exc) const {
    if (n_exc < 0 || n_exc > max_excitation_)
        throw std::invalid_argument("Basis::block_offset: block out of range");
    return block_offsets_[n_exc];
}

int Basis::block_dim(int n_exc) const {
    if (n_exc < 0 || n_exc > max_excitation_)
        throw std::invalid_argument("Basis::block_dim: block out of range");
    return block_offsets_[n_exc + 1] - block_offsets_[n_exc];
}

int Basis::block_index_of(const BasisLabel& label) const {
    const int idx = index_of(label);
    if (idx < 0 || label.total() > max_excitation_) return -1;
    return idx - block_offset(label.total());
}

BasisLabel Basis::block_label(int n_exc, int block_index) const {
    if (block_index < 0 || block_index >= block_dim(n_exc))
        throw std::invalid_argument("Basis::block_label: index out of range");
    return labels_[block_offset(n_exc) + block_index];
}

} // namespace rezqu
