#ifndef BOHL_SYSTEMS_HPP
#define BOHL_SYSTEMS_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bohl/linalg.hpp"
#include "json.hpp"

namespace bohl {

// Coefficient sequence families the library can generate or load.
enum class SystemKind {
    constant,
    periodic,
    diagonal,
    upper_triangular,
    dyadic_switching_scalar,
    random_qdq,
    file,
};

std::string to_string(SystemKind kind);
SystemKind system_kind_from_string(const std::string& s);

// Declarative description of a coefficient sequence A(n). The params payload
// is kind-specific; see from_json for the accepted shapes.
struct SystemSpec {
    SystemKind kind = SystemKind::constant;
    int dim = 1;
    nlohmann::json params;
    long horizon_hint = 100000;

    static SystemSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    static SystemSpec constant(const Matrix& a, long horizon);
    static SystemSpec periodic(const std::vector<Matrix>& period, long horizon);
    static SystemSpec diagonal(const std::vector<std::vector<double>>& entry_cycles, long horizon);
    static SystemSpec upper_triangular(const std::vector<Matrix>& period, long horizon);
    static SystemSpec dyadic_switching(long horizon);
    static SystemSpec random_qdq(int dim, std::uint64_t seed, double d_lo, double d_hi, long horizon);
    static SystemSpec from_file(const std::string& path, long horizon);
};

// Evaluable form of an invertible, bounded coefficient sequence together with
// bounds sup_n ||A(n)|| and sup_n ||A(n)^-1|| (spectral norm). Evaluations are
// cached; a sequence is cheap to copy and safe to read from many threads.
class MatrixSequence {
public:
    // Fills a and a_inv for index n. Must be pure: same n, same matrices.
    using Generator = std::function<void(long n, Matrix& a, Matrix& a_inv)>;

    MatrixSequence() = default;
    MatrixSequence(int dim, Generator gen, double norm_bound, double inv_norm_bound,
                   long horizon_hint, std::string label);

    int dim() const { return dim_; }
    double norm_bound() const { return norm_bound_; }
    double inv_norm_bound() const { return inv_norm_bound_; }
    long horizon_hint() const { return horizon_hint_; }
    const std::string& label() const { return label_; }
    bool valid() const { return dim_ > 0; }

    Matrix eval(long n) const;
    Matrix eval_inv(long n) const;

    // Materialized snapshot of [0, n_hi): zero-overhead indexed access for the
    // scan loops. Snapshots stay valid after further growth.
    struct Data {
        std::vector<Matrix> a;
        std::vector<Matrix> a_inv;
    };
    std::shared_ptr<const Data> ensure(long n_hi) const;

private:
    int dim_ = 0;
    double norm_bound_ = 0.0;
    double inv_norm_bound_ = 0.0;
    long horizon_hint_ = 0;
    std::string label_;
    struct Cache;
    std::shared_ptr<Cache> cache_;
};

// A Lyapunov transformation T has exactly the shape of a coefficient
// sequence: bounded, invertible, bounded inverse.
using TransformSequence = MatrixSequence;

struct ValidationReport {
    long horizon = 0;
    double declared_norm_bound = 0.0;
    double declared_inv_norm_bound = 0.0;
    double observed_norm_bound = 0.0;
    double observed_inv_norm_bound = 0.0;
    double worst_inverse_residual = 0.0;
    std::vector<std::string> flags;

    bool ok() const { return flags.empty(); }
    nlohmann::json to_json() const;
};

// Builds the evaluable sequence for a spec. Bounds come from exact formulas
// where the family admits them (constant, periodic, diagonal, triangular,
// dyadic, random_qdq) and from a scan over [0, horizon_hint) otherwise.
MatrixSequence load_system(const SystemSpec& spec);

// Observed bounds and inverse residual over n < horizon; flags any violation
// of the declared bounds beyond 1e-9 relative.
ValidationReport validate_lyapunov(const MatrixSequence& seq, long horizon);

// gamma-shifted sequence e^{-gamma} A(n).
MatrixSequence shift(const MatrixSequence& seq, double gamma);

// Conjugated sequence T(n+1)^-1 A(n) T(n).
MatrixSequence transform(const MatrixSequence& seq, const TransformSequence& t);

// Pointwise inverse sequence n -> T(n)^-1 (used to undo a transformation).
TransformSequence inverse_sequence(const TransformSequence& t);

// Matrix-file format: JSON array of row-major d*d arrays, indexed by n.
std::vector<Matrix> read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const std::vector<Matrix>& mats);

}  // namespace bohl

#endif
