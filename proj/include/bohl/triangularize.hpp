#ifndef BOHL_TRIANGULARIZE_HPP
#define BOHL_TRIANGULARIZE_HPP

#include <memory>

#include "bohl/systems.hpp"

namespace bohl {

// Dynamically equivalent upper triangular normal form obtained by stepwise
// QR: A(n) T(n) = T(n+1) B(n), T(0) = I, diag(B(n)) > 0. The T frames are
// kept at a checkpoint stride and recomputed in between on demand.
struct TriangularForm {
    int dim = 0;
    long n_max = 0;
    long checkpoint_stride = 1024;

    MatrixSequence source;
    std::shared_ptr<const std::vector<Matrix>> b;  // B(0) .. B(n_max - 1)
    std::vector<Matrix> t_checkpoints;             // T(0), T(s), T(2s), ...

    double residual = 0.0;              // max_n ||T(n+1) B(n) - A(n) T(n)||_F
    double orthogonality_defect = 0.0;  // max_n ||T(n)^T T(n) - I||_F
    double b_diag_min = 0.0;
    double b_diag_max = 0.0;

    Matrix t_at(long n) const;
    MatrixSequence b_sequence() const;
    TransformSequence t_sequence() const;
};

TriangularForm qr_normal_form(const MatrixSequence& seq, long n_max,
                              long checkpoint_stride = 1024);

// Scalar Lyapunov sequences n -> [B(n)_kk], one per diagonal slot.
std::vector<MatrixSequence> diagonal_part(const TriangularForm& tri);

// Cumulative log of the k-th diagonal entry: S(0)=0, S(n) = sum ln B(j)_kk.
std::vector<double> diagonal_cumlog(const TriangularForm& tri, int k);

// Upper triangular sequence restricted to its leading k x k block (the
// block of a product of upper triangulars is the product of the blocks).
MatrixSequence leading_block_sequence(const TriangularForm& tri, int k);

// All frames T(0) .. T(n_max) in one sequential pass (for dumping).
std::vector<Matrix> all_frames(const TriangularForm& tri);

}  // namespace bohl

#endif
