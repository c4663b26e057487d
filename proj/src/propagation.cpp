#include "bohl/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bohl/parallel.hpp"

namespace bohl {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

LogSolution propagate_direction(const MatrixSequence& seq, const Vector& x0, long n_max) {
    if (n_max < 1) throw ComputeError("propagate_direction: n_max must be >= 1");
    const double norm0 = x0.norm();
    if (!(norm0 > 0.0) || !x0.allFinite())
        throw ComputeError("propagate_direction: initial vector must be nonzero and finite");
    if (x0.size() != seq.dim()) throw ComputeError("propagate_direction: dimension mismatch");

    auto data = seq.ensure(n_max);
    LogSolution sol;
    sol.x0 = x0 / norm0;
    sol.dirs.reserve(n_max + 1);
    sol.logn.reserve(n_max + 1);
    sol.dirs.push_back(sol.x0);
    sol.logn.push_back(0.0);
    Vector v = sol.x0;
    double logn = 0.0;
    for (long n = 0; n < n_max; ++n) {
        Vector u = data->a[n] * v;
        const double r = u.norm();
        if (!(r > 0.0) || !std::isfinite(r))
            throw ComputeError("propagate_direction: degenerate step at n=" + std::to_string(n));
        logn += std::log(r);
        v = u / r;
        sol.dirs.push_back(v);
        sol.logn.push_back(logn);
    }
    return sol;
}

std::vector<std::vector<double>> propagate_log_norms(const MatrixSequence& seq,
                                                     const Matrix& dirs0, long n_max) {
    if (n_max < 1) throw ComputeError("propagate_log_norms: n_max must be >= 1");
    const long k = dirs0.cols();
    if (dirs0.rows() != seq.dim()) throw ComputeError("propagate_log_norms: dimension mismatch");
    auto data = seq.ensure(n_max);

    std::vector<std::vector<double>> logs(k);
    Matrix v = dirs0;
    for (long j = 0; j < k; ++j) {
        const double norm0 = v.col(j).norm();
        if (!(norm0 > 0.0)) throw ComputeError("propagate_log_norms: zero direction");
        v.col(j) /= norm0;
        logs[j].reserve(n_max + 1);
        logs[j].push_back(0.0);
    }
    for (long n = 0; n < n_max; ++n) {
        v = data->a[n] * v;
        for (long j = 0; j < k; ++j) {
            const double r = v.col(j).norm();
            logs[j].push_back(logs[j].back() + std::log(r));
            v.col(j) /= r;
        }
    }
    return logs;
}

double window_log_ratio(const LogSolution& sol, long n, long m) {
    if (m < 0 || n <= m) throw ComputeError("window_log_ratio: need n > m >= 0");
    if (n > sol.n_max()) throw ComputeError("window_log_ratio: n beyond solution horizon");
    return (sol.logn[n] - sol.logn[m]) / static_cast<double>(n - m);
}

std::string to_string(Representation r) {
    return r == Representation::all_m ? "all_m" : "m_beyond_N";
}

long WindowConfig::n_last() const {
    if (n_grid.empty()) throw ComputeError("WindowConfig: empty threshold grid");
    return n_grid.back();
}

WindowConfig WindowConfig::defaults(long n_max) {
    if (n_max < 4) throw ComputeError("WindowConfig: horizon too small");
    WindowConfig cfg;
    cfg.n_max = n_max;
    for (long t = 16; 4 * t <= n_max; t *= 2) cfg.n_grid.push_back(t);
    if (cfg.n_grid.empty()) cfg.n_grid.push_back(std::max(1L, n_max / 4));
    return cfg;
}

std::vector<long> window_lengths(const WindowConfig& cfg) {
    if (cfg.n_grid.empty()) throw ComputeError("window_lengths: empty threshold grid");
    const long cap = std::max(cfg.n_grid.front() + 1, cfg.n_max / 2);
    std::vector<long> lengths;
    for (long t : cfg.n_grid)
        if (t + 1 <= cap) lengths.push_back(t + 1);
    // quarter-octave fill
    const double ratio = std::pow(2.0, 0.25);
    for (double w = static_cast<double>(cfg.n_grid.front() + 1); w <= static_cast<double>(cap);
         w *= ratio) {
        lengths.push_back(static_cast<long>(std::llround(w)));
    }
    lengths.push_back(cap);
    std::sort(lengths.begin(), lengths.end());
    lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
    while (!lengths.empty() && lengths.back() > cfg.n_max - 1) lengths.pop_back();
    if (lengths.empty() || lengths.back() <= cfg.n_grid.back())
        throw ComputeError("window_lengths: horizon too small for largest threshold");
    return lengths;
}

namespace {

long anchor_stride_for(const WindowConfig& cfg, long w) {
    const long span = cfg.n_max - w;
    long stride = span / std::max(1L, cfg.anchor_budget) + 1;
    return std::max(stride, cfg.stride);
}

}  // namespace

void for_each_window_above(const WindowConfig& cfg, long min_len,
                           const std::function<void(long, long)>& fn) {
    for (long w : window_lengths(cfg)) {
        if (w <= min_len) continue;
        const long stride = anchor_stride_for(cfg, w);
        for (long m = 0; m + w <= cfg.n_max; m += stride) fn(m, w);
    }
}

ThresholdAccumulator::ThresholdAccumulator(std::vector<long> thresholds, Representation rep)
    : thresholds_(std::move(thresholds)),
      rep_(rep),
      bucket_sup_(thresholds_.size(), -kInf),
      bucket_inf_(thresholds_.size(), kInf) {
    if (thresholds_.empty()) throw ComputeError("ThresholdAccumulator: empty grid");
}

void ThresholdAccumulator::add(long m, long w, double lo_value, double hi_value) {
    // number of thresholds this window clears
    auto passed = [&](long v) {
        return std::lower_bound(thresholds_.begin(), thresholds_.end(), v) - thresholds_.begin();
    };
    long c = passed(w);
    if (rep_ == Representation::m_beyond_n) c = std::min(c, passed(m));
    if (c <= 0) return;
    const std::size_t b = static_cast<std::size_t>(c) - 1;
    bucket_sup_[b] = std::max(bucket_sup_[b], hi_value);
    bucket_inf_[b] = std::min(bucket_inf_[b], lo_value);
}

void ThresholdAccumulator::merge(const ThresholdAccumulator& other) {
    for (std::size_t i = 0; i < bucket_sup_.size(); ++i) {
        bucket_sup_[i] = std::max(bucket_sup_[i], other.bucket_sup_[i]);
        bucket_inf_[i] = std::min(bucket_inf_[i], other.bucket_inf_[i]);
    }
}

ThresholdTrace ThresholdAccumulator::finish() const {
    ThresholdTrace trace;
    trace.thresholds = thresholds_;
    const std::size_t n = thresholds_.size();
    trace.sup_values.assign(n, -kInf);
    trace.inf_values.assign(n, kInf);
    double run_sup = -kInf, run_inf = kInf;
    for (std::size_t i = n; i-- > 0;) {
        run_sup = std::max(run_sup, bucket_sup_[i]);
        run_inf = std::min(run_inf, bucket_inf_[i]);
        trace.sup_values[i] = run_sup;
        trace.inf_values[i] = run_inf;
    }
    if (!std::isfinite(trace.sup_values.back()) || !std::isfinite(trace.inf_values.back()))
        throw ComputeError("horizon too small for largest threshold N=" +
                           std::to_string(thresholds_.back()));
    return trace;
}

ThresholdTrace scan_cumulative(std::span<const double> cumlog, const WindowConfig& cfg) {
    const long n_avail = static_cast<long>(cumlog.size()) - 1;
    if (n_avail < cfg.n_max)
        throw ComputeError("scan_cumulative: cumulative array shorter than n_max");
    ThresholdAccumulator acc(cfg.n_grid, cfg.representation);
    for (long w : window_lengths(cfg)) {
        const long stride = anchor_stride_for(cfg, w);
        const double inv_w = 1.0 / static_cast<double>(w);
        for (long m = 0; m + w <= cfg.n_max; m += stride) {
            const double lam = (cumlog[m + w] - cumlog[m]) * inv_w;
            acc.add(m, w, lam, lam);
        }
    }
    return acc.finish();
}

// ---------------------------------------------------------------------------
// Scaled two-sided product tracking

namespace {

// Running factorization Phi(t, m) V = W * R * e^s with W orthonormal, R and
// its inverse kept at unit scale. sigma_max comes from R, sigma_min from
// R^-1, so neither end of the spectrum degrades no matter how long the
// window. Factors are absorbed in segments of at most `cadence` steps
// (shorter when the coefficient bounds are large) so the raw segment product
// never reaches harmful magnitudes.
class ProductTracker {
public:
    ProductTracker(const Matrix& frame0, int cadence)
        : seg_(frame0),
          r_(Matrix::Identity(frame0.cols(), frame0.cols())),
          r_inv_(Matrix::Identity(frame0.cols(), frame0.cols())),
          cadence_(cadence) {}

    void step(const Matrix& a) {
        seg_ = a * seg_;
        if (++pending_ >= cadence_ || max_abs(seg_) > 1e120) flush();
    }

    void flush() {
        if (pending_ == 0) return;
        const auto k = seg_.cols();
        Matrix w, r_seg;
        qr_positive(seg_, w, r_seg);
        r_ = r_seg * r_;
        rescale(r_, s_);
        const Matrix r_seg_inv =
            r_seg.triangularView<Eigen::Upper>().solve(Matrix::Identity(k, k));
        r_inv_ = r_inv_ * r_seg_inv;
        rescale(r_inv_, s_inv_);
        seg_ = w;
        pending_ = 0;
    }

    // valid after flush()
    double log_sigma_max() const { return s_ + std::log(spectral_norm(r_)); }
    double log_sigma_min() const { return -(s_inv_ + std::log(spectral_norm(r_inv_))); }

private:
    static void rescale(Matrix& m, double& s) {
        const double scale = max_abs(m);
        if (scale > 0.0 && std::isfinite(scale)) {
            s += std::log(scale);
            m /= scale;
        }
    }

    Matrix seg_;
    Matrix r_, r_inv_;
    double s_ = 0.0, s_inv_ = 0.0;
    int pending_ = 0;
    int cadence_;
};

int refactor_cadence(const MatrixSequence& seq) {
    // keep the per-segment spread of the running factor below e^50
    const double log_c =
        std::max({std::log(std::max(seq.norm_bound(), 1.0)),
                  std::log(std::max(seq.inv_norm_bound(), 1.0)), 1e-9});
    const double limit = 50.0 / (2.0 * log_c);
    return static_cast<int>(std::clamp(limit, 1.0, 32.0));
}

}  // namespace

std::pair<double, double> extreme_window_growth(const MatrixSequence& seq, long n, long m) {
    if (m < 0 || n <= m) throw ComputeError("extreme_window_growth: need n > m >= 0");
    auto data = seq.ensure(n);
    ProductTracker tracker(Matrix::Identity(seq.dim(), seq.dim()), refactor_cadence(seq));
    for (long t = m; t < n; ++t) tracker.step(data->a[t]);
    tracker.flush();
    return {tracker.log_sigma_max(), tracker.log_sigma_min()};
}

ThresholdTrace scan_subspace_growth(const MatrixSequence& seq, const Matrix& frame0,
                                    const WindowConfig& cfg) {
    if (frame0.rows() != seq.dim())
        throw ComputeError("scan_subspace_growth: frame dimension mismatch");
    auto data = seq.ensure(cfg.n_max);

    if (seq.dim() == 1) {
        // scalar product: both singular values equal the cumulative log sums
        std::vector<double> cum;
        cum.reserve(cfg.n_max + 1);
        cum.push_back(0.0);
        for (long n = 0; n < cfg.n_max; ++n)
            cum.push_back(cum.back() + std::log(std::abs(data->a[n](0, 0))));
        return scan_cumulative(cum, cfg);
    }
    const auto lengths = window_lengths(cfg);
    const long w_min = lengths.front();
    const long w_cap = lengths.back();
    const int cadence = refactor_cadence(seq);

    // anchor stride sized so the total step count stays within budget
    const double total_full = 0.375 * static_cast<double>(cfg.n_max) * cfg.n_max;
    long stride = static_cast<long>(total_full / std::max(1L, cfg.sigma_step_budget)) + 1;
    stride = std::max(stride, cfg.stride);

    std::vector<long> anchors;
    for (long m = 0; m + w_min <= cfg.n_max; m += stride) anchors.push_back(m);

    // orthonormal frame of the propagated subspace at every anchor
    Matrix q0, r0;
    qr_positive(frame0, q0, r0);
    std::vector<Matrix> anchor_frames(anchors.size());
    {
        Matrix w = q0, q, r;
        std::size_t next = 0;
        for (long n = 0; n <= cfg.n_max && next < anchors.size(); ++n) {
            if (anchors[next] == n) anchor_frames[next++] = w;
            if (n < cfg.n_max) {
                qr_positive(data->a[n] * w, q, r);
                w = q;
            }
        }
    }

    const long n_anchors = static_cast<long>(anchors.size());
    std::vector<ThresholdAccumulator> parts(
        chunk_count(n_anchors), ThresholdAccumulator(cfg.n_grid, cfg.representation));
    parallel_chunks(n_anchors, [&](long lo, long hi, int chunk) {
        auto& acc = parts[chunk];
        for (long i = lo; i < hi; ++i) {
            const long m = anchors[i];
            const long w_max = std::min(w_cap, cfg.n_max - m);
            ProductTracker tracker(anchor_frames[i], cadence);
            std::size_t rec = 0;
            while (rec < lengths.size() && lengths[rec] < w_min) ++rec;
            for (long w = 1; w <= w_max; ++w) {
                tracker.step(data->a[m + w - 1]);
                if (rec < lengths.size() && lengths[rec] == w) {
                    tracker.flush();
                    const double inv_w = 1.0 / static_cast<double>(w);
                    acc.add(m, w, tracker.log_sigma_min() * inv_w,
                            tracker.log_sigma_max() * inv_w);
                    ++rec;
                }
            }
        }
    });
    ThresholdAccumulator merged = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) merged.merge(parts[i]);
    return merged.finish();
}

}  // namespace bohl
