#ifndef BOHL_LINALG_HPP
#define BOHL_LINALG_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace bohl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Raised when an input description is malformed (bad spec, bad file, bad flag).
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a computation cannot proceed (singular matrix, horizon too small, ...).
struct ComputeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operator norm induced by the Euclidean vector norm (largest singular value).
double spectral_norm(const Matrix& m);

// (sigma_max, sigma_min) of a general rectangular matrix.
std::pair<double, double> extreme_singular_values(const Matrix& m);

// Thin QR factorization m = q * r with the sign convention diag(r) > 0,
// which makes the factorization unique for invertible m.
void qr_positive(const Matrix& m, Matrix& q, Matrix& r);

double max_abs(const Matrix& m);

// max-entry norm of a * a_inv - I
double inverse_residual(const Matrix& a, const Matrix& a_inv);

// Deterministic counter-based random stream: the values drawn for a given
// (seed, stream) pair never depend on what other streams were drawn before.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);
    std::uint64_t next_u64();
    double next_uniform();   // [0, 1)
    double next_gaussian();

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Haar-like random orthogonal matrix (QR of a Gaussian matrix, positive diag).
Matrix random_orthogonal(int dim, CounterRng& rng);

Matrix rotation2(double theta);

}  // namespace bohl

#endif
