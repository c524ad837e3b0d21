#pragma once

#include <vector>

namespace rezqu {

// Bare product state |n_m n_q n_b> of the truncated device.
struct BasisLabel {
    int n_m = 0;
    int n_q = 0;
    int n_b = 0;

    int total() const { return n_m + n_q + n_b; }
    bool operator==(const BasisLabel&) const = default;
};

// Deterministic basis order: by total excitation number, then
// lexicographically by (n_m, n_q, n_b). For max_excitation = 2 this gives
// 1 + 3 + 6 = 10 states. max_excitation must be 1 or 2.
std::vector<BasisLabel> enumerate_basis(int max_excitation);

// The ordered truncated basis with block bookkeeping.
class Basis {
public:
    explicit Basis(int max_excitation);

    const std::vector<BasisLabel>& labels() const { return labels_; }
    int size() const { return static_cast<int>(labels_.size()); }
    int max_excitation() const { return max_excitation_; }

    // Index in the full ordered basis; -1 if the label is not present.
    int index_of(const BasisLabel& label) const;

    int block_offset(int n_exc) const;
    int block_dim(int n_exc) const;
    // Index within the n_exc block; -1 if not in that block.
    int block_index_of(const BasisLabel& label) const;
    BasisLabel block_label(int n_exc, int block_index) const;

private:
    int max_excitation_;
    std::vector<BasisLabel> labels_;
    std::vector<int> block_offsets_;
};

} // namespace rezqu
