#include "bohl/triangularize.hpp"

#include <cmath>

namespace bohl {

TriangularForm qr_normal_form(const MatrixSequence& seq, long n_max, long checkpoint_stride) {
    if (n_max < 1) throw ComputeError("qr_normal_form: n_max must be >= 1");
    if (checkpoint_stride < 1) throw ComputeError("qr_normal_form: bad checkpoint stride");

    const int d = seq.dim();
    auto data = seq.ensure(n_max);

    TriangularForm tri;
    tri.dim = d;
    tri.n_max = n_max;
    tri.checkpoint_stride = checkpoint_stride;
    tri.source = seq;
    tri.b_diag_min = std::numeric_limits<double>::infinity();
    tri.b_diag_max = 0.0;

    auto b_mats = std::make_shared<std::vector<Matrix>>();
    b_mats->reserve(n_max);

    const Matrix identity = Matrix::Identity(d, d);
    Matrix t = identity;
    Matrix t_next, b_n, m;
    tri.t_checkpoints.push_back(t);
    for (long n = 0; n < n_max; ++n) {
        m = data->a[n] * t;
        qr_positive(m, t_next, b_n);
        for (int k = 0; k < d; ++k) {
            const double diag = b_n(k, k);
            if (!(diag > 1e-250) || !std::isfinite(diag))
                throw ComputeError(
                    "qr_normal_form: QR breakdown at n=" + std::to_string(n) +
                    " (coefficient matrix numerically singular)");
            tri.b_diag_min = std::min(tri.b_diag_min, diag);
            tri.b_diag_max = std::max(tri.b_diag_max, diag);
        }
        tri.residual = std::max(tri.residual, (t_next * b_n - m).norm());
        tri.orthogonality_defect =
            std::max(tri.orthogonality_defect, (t_next.transpose() * t_next - identity).norm());
        b_mats->push_back(b_n);
        t = t_next;
        if ((n + 1) % checkpoint_stride == 0) tri.t_checkpoints.push_back(t);
    }
    tri.b = std::move(b_mats);
    return tri;
}

Matrix TriangularForm::t_at(long n) const {
    if (n < 0 || n > n_max) throw ComputeError("t_at: index out of range");
    const long chk = n / checkpoint_stride;
    if (chk < static_cast<long>(t_checkpoints.size()) && chk * checkpoint_stride == n)
        return t_checkpoints[chk];
    const long start_chk = std::min(chk, static_cast<long>(t_checkpoints.size()) - 1);
    Matrix t = t_checkpoints[start_chk];
    auto data = source.ensure(n);
    Matrix q, r;
    for (long j = start_chk * checkpoint_stride; j < n; ++j) {
        qr_positive(data->a[j] * t, q, r);
        t = q;
    }
    return t;
}

MatrixSequence TriangularForm::b_sequence() const {
    auto mats = b;
    const long len = n_max;
    auto gen = [mats, len](long n, Matrix& a, Matrix& a_inv) {
        if (n >= len)
            throw ComputeError("triangular form holds " + std::to_string(len) +
                               " matrices, requested n=" + std::to_string(n));
        a = (*mats)[n];
        a_inv = a.triangularView<Eigen::Upper>().solve(Matrix::Identity(a.rows(), a.cols()));
    };
    // orthogonal equivalence preserves spectral norms, so the source bounds apply
    return MatrixSequence(dim, gen, source.norm_bound(), source.inv_norm_bound(), n_max,
                          source.label() + "+triangular");
}

TransformSequence TriangularForm::t_sequence() const {
    auto self = std::make_shared<TriangularForm>(*this);
    auto gen = [self](long n, Matrix& a, Matrix& a_inv) {
        a = self->t_at(n);
        a_inv = a.transpose();
    };
    return MatrixSequence(dim, gen, 1.0, 1.0, n_max, source.label() + "+frames");
}

std::vector<MatrixSequence> diagonal_part(const TriangularForm& tri) {
    std::vector<MatrixSequence> out;
    out.reserve(tri.dim);
    const long len = tri.n_max;
    for (int k = 0; k < tri.dim; ++k) {
        auto mats = tri.b;
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const auto& m : *mats) {
            lo = std::min(lo, m(k, k));
            hi = std::max(hi, m(k, k));
        }
        auto gen = [mats, k, len](long n, Matrix& a, Matrix& a_inv) {
            if (n >= len)
                throw ComputeError("diagonal part holds " + std::to_string(len) + " entries");
            a = Matrix::Constant(1, 1, (*mats)[n](k, k));
            a_inv = Matrix::Constant(1, 1, 1.0 / (*mats)[n](k, k));
        };
        out.emplace_back(1, gen, hi, 1.0 / lo, len,
                         tri.source.label() + "+diag" + std::to_string(k));
    }
    return out;
}

std::vector<double> diagonal_cumlog(const TriangularForm& tri, int k) {
    if (k < 0 || k >= tri.dim) throw ComputeError("diagonal_cumlog: bad index");
    std::vector<double> cum;
    cum.reserve(tri.n_max + 1);
    cum.push_back(0.0);
    for (const auto& m : *tri.b) cum.push_back(cum.back() + std::log(m(k, k)));
    return cum;
}

std::vector<Matrix> all_frames(const TriangularForm& tri) {
    std::vector<Matrix> frames;
    frames.reserve(tri.n_max + 1);
    Matrix t = Matrix::Identity(tri.dim, tri.dim);
    frames.push_back(t);
    auto data = tri.source.ensure(tri.n_max);
    Matrix q, r;
    for (long n = 0; n < tri.n_max; ++n) {
        qr_positive(data->a[n] * t, q, r);
        t = q;
        frames.push_back(t);
    }
    return frames;
}

MatrixSequence leading_block_sequence(const TriangularForm& tri, int k) {
    if (k < 1 || k > tri.dim) throw ComputeError("leading_block_sequence: bad block size");
    auto mats = tri.b;
    const long len = tri.n_max;
    auto gen = [mats, k, len](long n, Matrix& a, Matrix& a_inv) {
        if (n >= len)
            throw ComputeError("triangular form holds " + std::to_string(len) + " matrices");
        a = (*mats)[n].topLeftCorner(k, k);
        a_inv = a.triangularView<Eigen::Upper>().solve(Matrix::Identity(k, k));
    };
    return MatrixSequence(k, gen, tri.source.norm_bound(), tri.source.inv_norm_bound(), len,
                          tri.source.label() + "+lead" + std::to_string(k));
}

}  // namespace bohl
