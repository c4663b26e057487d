#ifndef BOHL_PROPAGATION_HPP
#define BOHL_PROPAGATION_HPP

#include <functional>
#include <span>
#include <vector>

#include "bohl/systems.hpp"

namespace bohl {

// Solution x(., x0) in log-scaled form: unit direction v(n) plus cumulative
// log norm L(n), so that ||x(n, x0)|| = e^{L(n)} ||x0||. Horizons of 10^6 with
// growth e^{+-n} would overflow any float format stored raw.
struct LogSolution {
    Vector x0;                  // unit initial direction
    std::vector<Vector> dirs;   // v(0) .. v(n_max), unit vectors
    std::vector<double> logn;   // L(0) .. L(n_max), L(0) = 0

    long n_max() const { return static_cast<long>(logn.size()) - 1; }
};

LogSolution propagate_direction(const MatrixSequence& seq, const Vector& x0, long n_max);

// Cumulative log norms for many initial directions at once (columns of
// dirs0); result[k] has n_max+1 entries. Directions are normalized first.
std::vector<std::vector<double>> propagate_log_norms(const MatrixSequence& seq,
                                                     const Matrix& dirs0, long n_max);

// (L(n) - L(m)) / (n - m)
double window_log_ratio(const LogSolution& sol, long n, long m);

// Window families of the two equivalent Bohl representations: every window
// with n - m > N, or additionally m > N.
enum class Representation { all_m, m_beyond_n };

std::string to_string(Representation r);

struct WindowConfig {
    long n_max = 100000;
    std::vector<long> n_grid;  // increasing window thresholds N
    Representation representation = Representation::all_m;
    long stride = 1;                      // minimum anchor stride
    long anchor_budget = 4096;            // max anchors per window length (cumulative scans)
    long sigma_step_budget = 4000000;     // total propagation steps (singular value scans)

    long n_last() const;
    // Geometric threshold grid {16, 32, ..., 2^floor(log2(n_max/4))}.
    static WindowConfig defaults(long n_max);
};

// Log-spaced lattice of window lengths scanned exhaustively per anchor:
// every threshold + 1, quarter-octave fill, capped at n_max / 2.
std::vector<long> window_lengths(const WindowConfig& cfg);

// Enumerates the scanned (m, w) windows with w > min_len, using the same
// anchor policy as scan_cumulative (for realizability searches).
void for_each_window_above(const WindowConfig& cfg, long min_len,
                           const std::function<void(long m, long w)>& fn);

// Per-threshold sup/inf values of windowed averages. sup_values is
// nonincreasing and inf_values nondecreasing by construction (suffix
// reduction over length buckets).
struct ThresholdTrace {
    std::vector<long> thresholds;
    std::vector<double> sup_values;
    std::vector<double> inf_values;

    double sup_last() const { return sup_values.back(); }
    double inf_last() const { return inf_values.back(); }
};

// Accumulates window values into threshold buckets; finish() performs the
// fixed-shape suffix reduction. Merging accumulators is order-independent
// (max/min), so parallel scans are scheduling-independent bit for bit.
class ThresholdAccumulator {
public:
    ThresholdAccumulator(std::vector<long> thresholds, Representation rep);
    void add(long m, long w, double lo_value, double hi_value);
    void merge(const ThresholdAccumulator& other);
    ThresholdTrace finish() const;  // throws if a threshold has no window

private:
    std::vector<long> thresholds_;
    Representation rep_;
    std::vector<double> bucket_sup_;
    std::vector<double> bucket_inf_;
};

// Scans lambda(m+w, m) = (cum[m+w] - cum[m]) / w over the window lattice.
ThresholdTrace scan_cumulative(std::span<const double> cumlog, const WindowConfig& cfg);

// ln sigma_max and ln sigma_min of Phi_A(n, m), computed by multiplying the
// factors with running QR re-factorization so no intermediate over- or
// underflows; exact per window up to roundoff.
std::pair<double, double> extreme_window_growth(const MatrixSequence& seq, long n, long m);

// Same quantity restricted to a subspace: per-threshold traces of
// (1/w) ln sigma_max/min( Phi(m+w, m) Q_m ), where Q_m is the orthonormal
// frame of the subspace spanned by frame0 propagated from time 0. With
// frame0 = identity this is the full-space growth scan; the per-window sup
// and inf over directions in the subspace are attained at singular vectors,
// so no direction sampling gap.
ThresholdTrace scan_subspace_growth(const MatrixSequence& seq, const Matrix& frame0,
                                    const WindowConfig& cfg);

}  // namespace bohl

#endif
