#ifndef BOHL_EXPONENTS_HPP
#define BOHL_EXPONENTS_HPP

#include <span>

#include "bohl/propagation.hpp"
#include "json.hpp"

namespace bohl {

enum class ExponentSubject { direction, subspace, fullspace };

std::string to_string(ExponentSubject s);

// Finite-horizon estimate of the (lower, upper) Bohl exponent pair, with
// the per-threshold sup/inf trajectory so convergence can be judged.
struct BohlEstimate {
    double lower = 0.0;
    double upper = 0.0;
    ThresholdTrace trace;
    Representation representation = Representation::all_m;
    ExponentSubject subject = ExponentSubject::direction;

    nlohmann::json to_json() const;
};

BohlEstimate bohl_exponents_direction(const LogSolution& sol, const WindowConfig& cfg);

// Core form working on any cumulative log array (scalar sequences reuse it).
BohlEstimate bohl_exponents_cumlog(std::span<const double> cumlog, const WindowConfig& cfg);

// Full-space exponents from extreme singular values of the transition matrix
// per window: the sup/inf over x0 != 0 of lambda(n, m) exactly, per window.
BohlEstimate bohl_exponents_fullspace(const MatrixSequence& seq, const WindowConfig& cfg);

// Exponents of a subspace 1 < dim L < d have no per-direction closed form;
// they are bracketed by direction sampling within L (inner) and singular
// values of the transition matrix on the propagated frame of L (outer,
// exact per window).
struct SubspaceBracket {
    BohlEstimate frame;    // singular-value route
    BohlEstimate sampled;  // direction-sampling route
};
SubspaceBracket bohl_exponents_subspace(const MatrixSequence& seq, const Matrix& basis,
                                        const WindowConfig& cfg);

// Checks that the window net accumulates exactly on [lower, upper]: every
// sampled window value beyond the last threshold stays inside the interval,
// and probe values spread across it are realized by some window.
struct AccumulationReport {
    double lower = 0.0;
    double upper = 0.0;
    double tol = 0.0;
    long windows_checked = 0;
    long out_of_range = 0;
    double worst_excess = 0.0;

    struct Probe {
        double target = 0.0;
        double realized = 0.0;
        double distance = 0.0;
    };
    std::vector<Probe> probes;

    bool pass() const;
    nlohmann::json to_json() const;
};

AccumulationReport accumulation_interval_check(const LogSolution& sol, const WindowConfig& cfg,
                                               int probe_count);
AccumulationReport accumulation_interval_check(std::span<const double> cumlog,
                                               const WindowConfig& cfg, int probe_count);

}  // namespace bohl

#endif
