#include "bohl/exponents.hpp"

#include <algorithm>
#include <cmath>

namespace bohl {

using nlohmann::json;

std::string to_string(ExponentSubject s) {
    switch (s) {
        case ExponentSubject::direction: return "direction";
        case ExponentSubject::subspace: return "subspace";
        case ExponentSubject::fullspace: return "fullspace";
    }
    return "?";
}

json BohlEstimate::to_json() const {
    json per_threshold = json::array();
    for (std::size_t i = 0; i < trace.thresholds.size(); ++i)
        per_threshold.push_back(
            json::array({trace.thresholds[i], trace.sup_values[i], trace.inf_values[i]}));
    return json{{"lower", lower},
                {"upper", upper},
                {"representation", bohl::to_string(representation)},
                {"subject", bohl::to_string(subject)},
                {"per_threshold", per_threshold}};
}

BohlEstimate bohl_exponents_cumlog(std::span<const double> cumlog, const WindowConfig& cfg) {
    BohlEstimate est;
    est.trace = scan_cumulative(cumlog, cfg);
    est.lower = est.trace.inf_last();
    est.upper = est.trace.sup_last();
    est.representation = cfg.representation;
    est.subject = ExponentSubject::direction;
    return est;
}

BohlEstimate bohl_exponents_direction(const LogSolution& sol, const WindowConfig& cfg) {
    if (cfg.n_max > sol.n_max())
        throw ComputeError("bohl_exponents_direction: solution horizon below n_max");
    return bohl_exponents_cumlog(sol.logn, cfg);
}

BohlEstimate bohl_exponents_fullspace(const MatrixSequence& seq, const WindowConfig& cfg) {
    BohlEstimate est;
    est.trace =
        scan_subspace_growth(seq, Matrix::Identity(seq.dim(), seq.dim()), cfg);
    est.lower = est.trace.inf_last();
    est.upper = est.trace.sup_last();
    est.representation = cfg.representation;
    est.subject = ExponentSubject::fullspace;
    return est;
}

SubspaceBracket bohl_exponents_subspace(const MatrixSequence& seq, const Matrix& basis,
                                        const WindowConfig& cfg) {
    if (basis.cols() < 1 || basis.rows() != seq.dim())
        throw ComputeError("bohl_exponents_subspace: bad basis shape");
    SubspaceBracket bracket;

    bracket.frame.trace = scan_subspace_growth(seq, basis, cfg);
    bracket.frame.lower = bracket.frame.trace.inf_last();
    bracket.frame.upper = bracket.frame.trace.sup_last();
    bracket.frame.representation = cfg.representation;
    bracket.frame.subject = ExponentSubject::subspace;

    // sampled directions: the basis columns plus deterministic combinations
    const long k = basis.cols();
    std::vector<Vector> dirs;
    for (long j = 0; j < k; ++j) dirs.push_back(basis.col(j));
    CounterRng rng(0x5u, 0x17u);
    for (int extra = 0; extra < 8 * k; ++extra) {
        Vector c(k);
        for (long j = 0; j < k; ++j) c(j) = rng.next_gaussian();
        Vector v = basis * c;
        if (v.norm() > 1e-12) dirs.push_back(v);
    }
    Matrix dir_mat(seq.dim(), static_cast<long>(dirs.size()));
    for (std::size_t j = 0; j < dirs.size(); ++j) dir_mat.col(j) = dirs[j];
    const auto logs = propagate_log_norms(seq, dir_mat, cfg.n_max);

    bool first = true;
    for (const auto& cum : logs) {
        const auto est = bohl_exponents_cumlog(cum, cfg);
        if (first) {
            bracket.sampled = est;
            first = false;
        } else {
            bracket.sampled.lower = std::min(bracket.sampled.lower, est.lower);
            bracket.sampled.upper = std::max(bracket.sampled.upper, est.upper);
        }
    }
    bracket.sampled.subject = ExponentSubject::subspace;
    return bracket;
}

bool AccumulationReport::pass() const {
    if (out_of_range > 0) return false;
    for (const auto& p : probes)
        if (p.distance > tol) return false;
    return true;
}

json AccumulationReport::to_json() const {
    json probes_j = json::array();
    for (const auto& p : probes)
        probes_j.push_back(
            json{{"target", p.target}, {"realized", p.realized}, {"distance", p.distance}});
    return json{{"lower", lower},
                {"upper", upper},
                {"tol", tol},
                {"windows_checked", windows_checked},
                {"out_of_range", out_of_range},
                {"worst_excess", worst_excess},
                {"probes", probes_j},
                {"pass", pass()}};
}

AccumulationReport accumulation_interval_check(std::span<const double> cumlog,
                                               const WindowConfig& cfg, int probe_count) {
    if (probe_count < 1) throw ComputeError("accumulation_interval_check: probe_count >= 1");
    const auto est = bohl_exponents_cumlog(cumlog, cfg);

    AccumulationReport rep;
    rep.lower = est.lower;
    rep.upper = est.upper;
    const double width = est.upper - est.lower;
    rep.tol = std::max(0.01, 3.0 * width / std::sqrt(static_cast<double>(cfg.n_last())));

    rep.probes.resize(probe_count);
    for (int i = 0; i < probe_count; ++i) {
        const double t = probe_count == 1 ? 0.5 : static_cast<double>(i) / (probe_count - 1);
        rep.probes[i].target = est.lower + t * width;
        rep.probes[i].realized = std::numeric_limits<double>::quiet_NaN();
        rep.probes[i].distance = std::numeric_limits<double>::infinity();
    }

    for_each_window_above(cfg, cfg.n_last(), [&](long m, long w) {
        const double lam = (cumlog[m + w] - cumlog[m]) / static_cast<double>(w);
        ++rep.windows_checked;
        const double excess = std::max(est.lower - lam, lam - est.upper);
        if (excess > rep.tol) ++rep.out_of_range;
        rep.worst_excess = std::max(rep.worst_excess, excess);
        for (auto& p : rep.probes) {
            const double dist = std::abs(lam - p.target);
            if (dist < p.distance) {
                p.distance = dist;
                p.realized = lam;
            }
        }
    });
    return rep;
}

AccumulationReport accumulation_interval_check(const LogSolution& sol, const WindowConfig& cfg,
                                               int probe_count) {
    if (cfg.n_max > sol.n_max())
        throw ComputeError("accumulation_interval_check: solution horizon below n_max");
    return accumulation_interval_check(std::span<const double>(sol.logn), cfg, probe_count);
}

}  // namespace bohl
