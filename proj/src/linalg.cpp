#include "bohl/linalg.hpp"

#include <cmath>

namespace bohl {

double spectral_norm(const Matrix& m) {
    if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

std::pair<double, double> extreme_singular_values(const Matrix& m) {
    if (m.rows() == 1 && m.cols() == 1) {
        const double v = std::abs(m(0, 0));
        return {v, v};
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    return {sv(0), sv(sv.size() - 1)};
}

void qr_positive(const Matrix& m, Matrix& q, Matrix& r) {
    const auto cols = m.cols();
    Eigen::HouseholderQR<Matrix> qr(m);
    q = qr.householderQ() * Matrix::Identity(m.rows(), cols);
    r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < cols; ++k) {
        if (r(k, k) < 0) {
            r.row(k) = -r.row(k);
            q.col(k) = -q.col(k);
        }
    }
}

double max_abs(const Matrix& m) {
    return m.cwiseAbs().maxCoeff();
}

double inverse_residual(const Matrix& a, const Matrix& a_inv) {
    Matrix res = a * a_inv - Matrix::Identity(a.rows(), a.cols());
    return max_abs(res);
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) {
    // mix the stream id into the seed so streams are independent
    std::uint64_t s = seed ^ (stream * 0xD6E8FEB86659FD93ULL + 0xA3EC647659359ACDULL);
    state_ = splitmix64(s);
    state_ = splitmix64(state_);
}

std::uint64_t CounterRng::next_u64() {
    return splitmix64(state_);
}

double CounterRng::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = next_uniform();
    const double u2 = next_uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * M_PI * u2;
    spare_ = mag * std::sin(ang);
    has_spare_ = true;
    return mag * std::cos(ang);
}

Matrix random_orthogonal(int dim, CounterRng& rng) {
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.next_gaussian();
    Matrix q, r;
    qr_positive(g, q, r);
    return q;
}

Matrix rotation2(double theta) {
    Matrix m(2, 2);
    m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return m;
}

}  // namespace bohl
