#include "bohl/systems.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <mutex>

namespace bohl {

using nlohmann::json;

namespace {

constexpr double kSingularDetTol = 1e-12;

Matrix matrix_from_flat(const json& flat, int dim, const char* what) {
    if (!flat.is_array() || static_cast<int>(flat.size()) != dim * dim)
        throw SpecError(std::string(what) + ": expected " + std::to_string(dim * dim) +
                        " row-major entries");
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const auto& v = flat[i * dim + j];
            if (!v.is_number()) throw SpecError(std::string(what) + ": non-numeric entry");
            m(i, j) = v.get<double>();
        }
    if (!m.allFinite()) throw SpecError(std::string(what) + ": non-finite entry");
    return m;
}

json matrix_to_flat(const Matrix& m) {
    json flat = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) flat.push_back(m(i, j));
    return flat;
}

Matrix checked_inverse(const Matrix& m, const char* what) {
    const double det = m.determinant();
    if (!std::isfinite(det) || std::abs(det) < kSingularDetTol)
        throw SpecError(std::string(what) + ": matrix is singular (|det| < 1e-12)");
    return m.inverse();
}

// +1 on even dyadic blocks [2^k-1, 2^{k+1}-1), -1 on odd ones.
int dyadic_sign(long n) {
    const auto block = std::bit_width(static_cast<unsigned long long>(n) + 1ULL) - 1;
    return block % 2 == 0 ? 1 : -1;
}

}  // namespace

std::string to_string(SystemKind kind) {
    switch (kind) {
        case SystemKind::constant: return "constant";
        case SystemKind::periodic: return "periodic";
        case SystemKind::diagonal: return "diagonal";
        case SystemKind::upper_triangular: return "upper_triangular";
        case SystemKind::dyadic_switching_scalar: return "dyadic_switching_scalar";
        case SystemKind::random_qdq: return "random_qdq";
        case SystemKind::file: return "file";
    }
    throw SpecError("unknown system kind");
}

SystemKind system_kind_from_string(const std::string& s) {
    if (s == "constant") return SystemKind::constant;
    if (s == "periodic") return SystemKind::periodic;
    if (s == "diagonal") return SystemKind::diagonal;
    if (s == "upper_triangular") return SystemKind::upper_triangular;
    if (s == "dyadic_switching_scalar") return SystemKind::dyadic_switching_scalar;
    if (s == "random_qdq") return SystemKind::random_qdq;
    if (s == "file") return SystemKind::file;
    throw SpecError("unknown system kind '" + s + "'");
}

SystemSpec SystemSpec::from_json(const json& j) {
    if (!j.is_object()) throw SpecError("system spec: expected a JSON object");
    SystemSpec spec;
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw SpecError("system spec: missing string field 'kind'");
    spec.kind = system_kind_from_string(j.at("kind").get<std::string>());
    if (!j.contains("dim") || !j.at("dim").is_number_integer())
        throw SpecError("system spec: missing integer field 'dim'");
    spec.dim = j.at("dim").get<int>();
    if (spec.dim < 1) throw SpecError("system spec: dim must be >= 1");
    spec.params = j.value("params", json::object());
    spec.horizon_hint = j.value("horizon_hint", 100000L);
    if (spec.horizon_hint < 1) throw SpecError("system spec: horizon_hint must be >= 1");
    return spec;
}

json SystemSpec::to_json() const {
    return json{{"kind", bohl::to_string(kind)},
                {"dim", dim},
                {"params", params},
                {"horizon_hint", horizon_hint}};
}

SystemSpec SystemSpec::constant(const Matrix& a, long horizon) {
    SystemSpec s;
    s.kind = SystemKind::constant;
    s.dim = static_cast<int>(a.rows());
    s.params = json{{"matrix", matrix_to_flat(a)}};
    s.horizon_hint = horizon;
    return s;
}

SystemSpec SystemSpec::periodic(const std::vector<Matrix>& period, long horizon) {
    SystemSpec s;
    s.kind = SystemKind::periodic;
    s.dim = static_cast<int>(period.at(0).rows());
    json mats = json::array();
    for (const auto& m : period) mats.push_back(matrix_to_flat(m));
    s.params = json{{"matrices", mats}};
    s.horizon_hint = horizon;
    return s;
}

SystemSpec SystemSpec::diagonal(const std::vector<std::vector<double>>& entry_cycles, long horizon) {
    SystemSpec s;
    s.kind = SystemKind::diagonal;
    s.dim = static_cast<int>(entry_cycles.size());
    s.params = json{{"entries", entry_cycles}};
    s.horizon_hint = horizon;
    return s;
}

SystemSpec SystemSpec::upper_triangular(const std::vector<Matrix>& period, long horizon) {
    SystemSpec s = periodic(period, horizon);
    s.kind = SystemKind::upper_triangular;
    return s;
}

SystemSpec SystemSpec::dyadic_switching(long horizon) {
    SystemSpec s;
    s.kind = SystemKind::dyadic_switching_scalar;
    s.dim = 1;
    s.params = json::object();
    s.horizon_hint = horizon;
    return s;
}

SystemSpec SystemSpec::random_qdq(int dim, std::uint64_t seed, double d_lo, double d_hi,
                                  long horizon) {
    SystemSpec s;
    s.kind = SystemKind::random_qdq;
    s.dim = dim;
    s.params = json{{"seed", seed}, {"d_lo", d_lo}, {"d_hi", d_hi}};
    s.horizon_hint = horizon;
    return s;
}

SystemSpec SystemSpec::from_file(const std::string& path, long horizon) {
    SystemSpec s;
    s.kind = SystemKind::file;
    s.dim = 0;  // resolved at load time
    s.params = json{{"path", path}, {"format", "json-matrices"}};
    s.horizon_hint = horizon;
    return s;
}

// ---------------------------------------------------------------------------
// MatrixSequence cache

struct MatrixSequence::Cache {
    Generator gen;
    std::mutex mutex;
    std::shared_ptr<const Data> snapshot = std::make_shared<Data>();
};

MatrixSequence::MatrixSequence(int dim, Generator gen, double norm_bound, double inv_norm_bound,
                               long horizon_hint, std::string label)
    : dim_(dim),
      norm_bound_(norm_bound),
      inv_norm_bound_(inv_norm_bound),
      horizon_hint_(horizon_hint),
      label_(std::move(label)),
      cache_(std::make_shared<Cache>()) {
    cache_->gen = std::move(gen);
}

std::shared_ptr<const MatrixSequence::Data> MatrixSequence::ensure(long n_hi) const {
    if (!cache_) throw ComputeError("evaluating an empty MatrixSequence");
    std::lock_guard<std::mutex> lk(cache_->mutex);
    auto cur = cache_->snapshot;
    const long have = static_cast<long>(cur->a.size());
    if (have >= n_hi) return cur;
    // geometric growth, capped at the horizon hint; old snapshots stay valid
    long target = std::max(n_hi, std::min(2 * have, std::max(horizon_hint_, n_hi)));
    auto grown = std::make_shared<Data>(*cur);
    grown->a.reserve(target);
    grown->a_inv.reserve(target);
    Matrix a, a_inv;
    for (long n = have; n < target; ++n) {
        cache_->gen(n, a, a_inv);
        if (!a.allFinite() || !a_inv.allFinite())
            throw ComputeError(label_ + ": non-finite matrix entries at n=" + std::to_string(n));
        grown->a.push_back(a);
        grown->a_inv.push_back(a_inv);
    }
    cache_->snapshot = grown;
    return grown;
}

Matrix MatrixSequence::eval(long n) const {
    if (n < 0) throw ComputeError("eval: negative index");
    return ensure(n + 1)->a[n];
}

Matrix MatrixSequence::eval_inv(long n) const {
    if (n < 0) throw ComputeError("eval_inv: negative index");
    return ensure(n + 1)->a_inv[n];
}

// ---------------------------------------------------------------------------
// Loading

namespace {

MatrixSequence make_cyclic(int dim, std::vector<Matrix> mats, long horizon, std::string label) {
    if (mats.empty()) throw SpecError(label + ": empty period");
    auto invs = std::make_shared<std::vector<Matrix>>();
    double nb = 0.0, ib = 0.0;
    for (const auto& m : mats) {
        if (m.rows() != dim || m.cols() != dim) throw SpecError(label + ": dimension mismatch");
        invs->push_back(checked_inverse(m, label.c_str()));
        nb = std::max(nb, spectral_norm(m));
        ib = std::max(ib, spectral_norm(invs->back()));
    }
    auto shared = std::make_shared<std::vector<Matrix>>(std::move(mats));
    const long p = static_cast<long>(shared->size());
    auto gen = [shared, invs, p](long n, Matrix& a, Matrix& a_inv) {
        a = (*shared)[n % p];
        a_inv = (*invs)[n % p];
    };
    return MatrixSequence(dim, gen, nb, ib, horizon, std::move(label));
}

std::vector<Matrix> parse_matrix_list(const json& params, int dim, const char* what) {
    if (!params.contains("matrices") || !params.at("matrices").is_array())
        throw SpecError(std::string(what) + ": missing 'matrices' array");
    std::vector<Matrix> mats;
    for (const auto& flat : params.at("matrices")) mats.push_back(matrix_from_flat(flat, dim, what));
    return mats;
}

}  // namespace

MatrixSequence load_system(const SystemSpec& spec) {
    switch (spec.kind) {
        case SystemKind::constant: {
            if (!spec.params.contains("matrix"))
                throw SpecError("constant: missing 'matrix' in params");
            Matrix a = matrix_from_flat(spec.params.at("matrix"), spec.dim, "constant");
            return make_cyclic(spec.dim, {a}, spec.horizon_hint, "constant");
        }
        case SystemKind::periodic:
            return make_cyclic(spec.dim, parse_matrix_list(spec.params, spec.dim, "periodic"),
                               spec.horizon_hint, "periodic");
        case SystemKind::upper_triangular: {
            auto mats = parse_matrix_list(spec.params, spec.dim, "upper_triangular");
            for (const auto& m : mats)
                for (int i = 0; i < spec.dim; ++i)
                    for (int j = 0; j < i; ++j)
                        if (m(i, j) != 0.0)
                            throw SpecError("upper_triangular: nonzero below-diagonal entry");
            return make_cyclic(spec.dim, std::move(mats), spec.horizon_hint, "upper_triangular");
        }
        case SystemKind::diagonal: {
            if (!spec.params.contains("entries") || !spec.params.at("entries").is_array())
                throw SpecError("diagonal: missing 'entries' array");
            auto cycles = spec.params.at("entries").get<std::vector<std::vector<double>>>();
            if (static_cast<int>(cycles.size()) != spec.dim)
                throw SpecError("diagonal: need one entry cycle per dimension");
            double nb = 0.0, ib = 0.0;
            for (const auto& cyc : cycles) {
                if (cyc.empty()) throw SpecError("diagonal: empty entry cycle");
                for (double v : cyc) {
                    if (!std::isfinite(v) || std::abs(v) < kSingularDetTol)
                        throw SpecError("diagonal: zero or non-finite diagonal entry");
                    nb = std::max(nb, std::abs(v));
                    ib = std::max(ib, 1.0 / std::abs(v));
                }
            }
            auto shared = std::make_shared<std::vector<std::vector<double>>>(std::move(cycles));
            const int d = spec.dim;
            auto gen = [shared, d](long n, Matrix& a, Matrix& a_inv) {
                a = Matrix::Zero(d, d);
                a_inv = Matrix::Zero(d, d);
                for (int k = 0; k < d; ++k) {
                    const auto& cyc = (*shared)[k];
                    const double v = cyc[n % static_cast<long>(cyc.size())];
                    a(k, k) = v;
                    a_inv(k, k) = 1.0 / v;
                }
            };
            return MatrixSequence(d, gen, nb, ib, spec.horizon_hint, "diagonal");
        }
        case SystemKind::dyadic_switching_scalar: {
            if (spec.dim != 1) throw SpecError("dyadic_switching_scalar: dim must be 1");
            auto gen = [](long n, Matrix& a, Matrix& a_inv) {
                const double v = std::exp(static_cast<double>(dyadic_sign(n)));
                a = Matrix::Constant(1, 1, v);
                a_inv = Matrix::Constant(1, 1, 1.0 / v);
            };
            const double e = std::exp(1.0);
            return MatrixSequence(1, gen, e, e, spec.horizon_hint, "dyadic_switching_scalar");
        }
        case SystemKind::random_qdq: {
            if (!spec.params.contains("seed")) throw SpecError("random_qdq: missing 'seed'");
            const auto seed = spec.params.at("seed").get<std::uint64_t>();
            const double d_lo = spec.params.value("d_lo", 0.5);
            const double d_hi = spec.params.value("d_hi", 2.0);
            if (!(0.0 < d_lo && d_lo <= d_hi))
                throw SpecError("random_qdq: need 0 < d_lo <= d_hi");
            const int d = spec.dim;
            auto gen = [seed, d_lo, d_hi, d](long n, Matrix& a, Matrix& a_inv) {
                CounterRng rng(seed, static_cast<std::uint64_t>(n));
                const Matrix q1 = random_orthogonal(d, rng);
                const Matrix q2 = random_orthogonal(d, rng);
                Vector diag(d);
                for (int k = 0; k < d; ++k)
                    diag(k) = d_lo + (d_hi - d_lo) * rng.next_uniform();
                a = q1 * diag.asDiagonal() * q2;
                a_inv = q2.transpose() * diag.cwiseInverse().asDiagonal() * q1.transpose();
            };
            return MatrixSequence(d, gen, d_hi, 1.0 / d_lo, spec.horizon_hint, "random_qdq");
        }
        case SystemKind::file: {
            if (!spec.params.contains("path")) throw SpecError("file: missing 'path'");
            const auto path = spec.params.at("path").get<std::string>();
            const auto format = spec.params.value("format", std::string("json-matrices"));
            if (format != "json-matrices")
                throw SpecError("file: unsupported format '" + format + "'");
            auto mats = std::make_shared<std::vector<Matrix>>(read_matrix_file(path));
            if (mats->empty()) throw SpecError("file: no matrices in " + path);
            const int d = static_cast<int>((*mats)[0].rows());
            if (spec.dim != 0 && spec.dim != d)
                throw SpecError("file: dim in spec does not match file contents");
            auto invs = std::make_shared<std::vector<Matrix>>();
            double nb = 0.0, ib = 0.0;
            for (const auto& m : *mats) {
                if (m.rows() != d || m.cols() != d)
                    throw SpecError("file: inconsistent matrix shapes in " + path);
                invs->push_back(checked_inverse(m, "file"));
                nb = std::max(nb, spectral_norm(m));
                ib = std::max(ib, spectral_norm(invs->back()));
            }
            const long len = static_cast<long>(mats->size());
            auto gen = [mats, invs, len, path](long n, Matrix& a, Matrix& a_inv) {
                if (n >= len)
                    throw ComputeError("file system '" + path + "' has only " +
                                       std::to_string(len) + " matrices, requested n=" +
                                       std::to_string(n));
                a = (*mats)[n];
                a_inv = (*invs)[n];
            };
            const long horizon = std::min(spec.horizon_hint, len);
            return MatrixSequence(d, gen, nb, ib, horizon, "file");
        }
    }
    throw SpecError("unhandled system kind");
}

ValidationReport validate_lyapunov(const MatrixSequence& seq, long horizon) {
    if (horizon < 1) throw ComputeError("validate_lyapunov: horizon must be >= 1");
    ValidationReport rep;
    rep.horizon = horizon;
    rep.declared_norm_bound = seq.norm_bound();
    rep.declared_inv_norm_bound = seq.inv_norm_bound();
    auto data = seq.ensure(horizon);
    for (long n = 0; n < horizon; ++n) {
        rep.observed_norm_bound = std::max(rep.observed_norm_bound, spectral_norm(data->a[n]));
        rep.observed_inv_norm_bound =
            std::max(rep.observed_inv_norm_bound, spectral_norm(data->a_inv[n]));
        rep.worst_inverse_residual =
            std::max(rep.worst_inverse_residual, inverse_residual(data->a[n], data->a_inv[n]));
    }
    const double rel = 1e-9;
    if (rep.observed_norm_bound > rep.declared_norm_bound * (1.0 + rel))
        rep.flags.push_back("norm_bound violated: observed " +
                            std::to_string(rep.observed_norm_bound) + " > declared " +
                            std::to_string(rep.declared_norm_bound));
    if (rep.observed_inv_norm_bound > rep.declared_inv_norm_bound * (1.0 + rel))
        rep.flags.push_back("inv_norm_bound violated: observed " +
                            std::to_string(rep.observed_inv_norm_bound) + " > declared " +
                            std::to_string(rep.declared_inv_norm_bound));
    if (rep.worst_inverse_residual > 1e-12)
        rep.flags.push_back("inverse residual above 1e-12: " +
                            std::to_string(rep.worst_inverse_residual));
    return rep;
}

json ValidationReport::to_json() const {
    return json{{"horizon", horizon},
                {"declared_norm_bound", declared_norm_bound},
                {"declared_inv_norm_bound", declared_inv_norm_bound},
                {"observed_norm_bound", observed_norm_bound},
                {"observed_inv_norm_bound", observed_inv_norm_bound},
                {"worst_inverse_residual", worst_inverse_residual},
                {"flags", flags}};
}

MatrixSequence shift(const MatrixSequence& seq, double gamma) {
    const double f = std::exp(-gamma);
    const double f_inv = std::exp(gamma);
    auto base = seq;  // shares the evaluation cache
    auto gen = [base, f, f_inv](long n, Matrix& a, Matrix& a_inv) {
        a = f * base.eval(n);
        a_inv = f_inv * base.eval_inv(n);
    };
    return MatrixSequence(seq.dim(), gen, f * seq.norm_bound(), f_inv * seq.inv_norm_bound(),
                          seq.horizon_hint(), seq.label() + "+shift");
}

MatrixSequence transform(const MatrixSequence& seq, const TransformSequence& t) {
    if (seq.dim() != t.dim()) throw ComputeError("transform: dimension mismatch");
    auto a_seq = seq;
    auto t_seq = t;
    auto gen = [a_seq, t_seq](long n, Matrix& b, Matrix& b_inv) {
        b = t_seq.eval_inv(n + 1) * a_seq.eval(n) * t_seq.eval(n);
        b_inv = t_seq.eval_inv(n) * a_seq.eval_inv(n) * t_seq.eval(n + 1);
    };
    const double nb = t.inv_norm_bound() * seq.norm_bound() * t.norm_bound();
    const double ib = t.inv_norm_bound() * seq.inv_norm_bound() * t.norm_bound();
    return MatrixSequence(seq.dim(), gen, nb, ib, seq.horizon_hint(),
                          seq.label() + "+transform");
}

TransformSequence inverse_sequence(const TransformSequence& t) {
    auto t_seq = t;
    auto gen = [t_seq](long n, Matrix& a, Matrix& a_inv) {
        a = t_seq.eval_inv(n);
        a_inv = t_seq.eval(n);
    };
    return MatrixSequence(t.dim(), gen, t.inv_norm_bound(), t.norm_bound(), t.horizon_hint(),
                          t.label() + "^-1");
}

std::vector<Matrix> read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open matrix file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SpecError("matrix file '" + path + "': " + e.what());
    }
    if (!j.is_array()) throw SpecError("matrix file '" + path + "': expected a JSON array");
    std::vector<Matrix> mats;
    for (const auto& flat : j) {
        if (!flat.is_array()) throw SpecError("matrix file '" + path + "': expected arrays");
        const auto len = flat.size();
        const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(len))));
        if (static_cast<std::size_t>(d) * d != len)
            throw SpecError("matrix file '" + path + "': entry length is not a square");
        mats.push_back(matrix_from_flat(flat, d, "matrix file"));
    }
    return mats;
}

void write_matrix_file(const std::string& path, const std::vector<Matrix>& mats) {
    json j = json::array();
    for (const auto& m : mats) j.push_back(matrix_to_flat(m));
    std::ofstream out(path);
    if (!out) throw ComputeError("cannot write matrix file '" + path + "'");
    out << j.dump() << "\n";
}

}  // namespace bohl
