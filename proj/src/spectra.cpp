#include "bohl/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "bohl/parallel.hpp"

namespace bohl {

using nlohmann::json;

std::vector<Interval> merge_intervals(std::vector<Interval> raw, double gap_tol) {
    if (gap_tol < 0.0) throw ComputeError("merge_intervals: gap_tol must be >= 0");
    for (const auto& iv : raw)
        if (!(iv.lo <= iv.hi)) throw ComputeError("merge_intervals: interval with lo > hi");
    std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    std::vector<Interval> out;
    for (const auto& iv : raw) {
        if (!out.empty() && iv.lo - out.back().hi <= gap_tol)
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    return out;
}

double distance_to(double x, const std::vector<Interval>& u) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& iv : u) {
        if (iv.contains(x)) return 0.0;
        best = std::min(best, std::min(std::abs(x - iv.lo), std::abs(x - iv.hi)));
    }
    return best;
}

double directed_hausdorff(const std::vector<Interval>& a, const std::vector<Interval>& b) {
    if (a.empty()) return 0.0;
    if (b.empty()) return std::numeric_limits<double>::infinity();
    // the distance function to b peaks at interval endpoints of a or at
    // midpoints of b's gaps that fall inside a
    std::vector<double> candidates;
    for (const auto& iv : a) {
        candidates.push_back(iv.lo);
        candidates.push_back(iv.hi);
    }
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        const double g = 0.5 * (b[i].hi + b[i + 1].lo);
        for (const auto& iv : a)
            if (iv.contains(g)) candidates.push_back(g);
    }
    double worst = 0.0;
    for (double x : candidates) worst = std::max(worst, distance_to(x, b));
    return worst;
}

double hausdorff(const std::vector<Interval>& a, const std::vector<Interval>& b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

std::string to_string(SpectrumKind k) {
    switch (k) {
        case SpectrumKind::bohl: return "bohl";
        case SpectrumKind::bohl_dichotomy: return "bohl_dichotomy";
        case SpectrumKind::exponential_dichotomy: return "exponential_dichotomy";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::resolvent: return "resolvent";
        case Verdict::spectrum: return "spectrum";
        case Verdict::undecided: return "undecided";
    }
    return "?";
}

json SpectrumResult::to_json() const {
    json ivs = json::array();
    for (const auto& iv : intervals) ivs.push_back(json::array({iv.lo, iv.hi}));
    return json{{"kind", bohl::to_string(kind)},
                {"intervals", ivs},
                {"filtration_dims", filtration_dims},
                {"search_box", json::array({search_box.lo, search_box.hi})},
                {"method", method}};
}

json GammaVerdict::to_json() const {
    return json{{"gamma", gamma},
                {"verdict", bohl::to_string(verdict)},
                {"margin", margin},
                {"split_dims", json::array({split_dims.first, split_dims.second})},
                {"witnesses", witnesses}};
}

SpectraConfig SpectraConfig::defaults(long horizon) {
    SpectraConfig cfg;
    cfg.window = WindowConfig::defaults(horizon);
    return cfg;
}

Matrix default_direction_sample(int dim, int per_dim) {
    if (dim < 1) throw ComputeError("default_direction_sample: dim >= 1");
    if (dim == 1) return Matrix::Constant(1, 1, 1.0);

    std::vector<Vector> dirs;
    for (int k = 0; k < dim; ++k) dirs.push_back(Vector::Unit(dim, k));
    const int n = per_dim * dim;
    if (dim == 2) {
        for (int j = 0; j < n; ++j) {
            const double theta = M_PI * (j + 0.5) / n;
            Vector v(2);
            v << std::cos(theta), std::sin(theta);
            dirs.push_back(v);
        }
    } else if (dim == 3) {
        const double golden = M_PI * (3.0 - std::sqrt(5.0));
        for (int j = 0; j < n; ++j) {
            const double z = 1.0 - 2.0 * (j + 0.5) / n;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = golden * j;
            Vector v(3);
            v << r * std::cos(phi), r * std::sin(phi), z;
            dirs.push_back(v);
        }
    } else {
        CounterRng rng(0xB07Bu, static_cast<std::uint64_t>(dim));
        for (int j = 0; j < n; ++j) {
            Vector v(dim);
            for (int k = 0; k < dim; ++k) v(k) = rng.next_gaussian();
            v.normalize();
            dirs.push_back(v);
        }
    }
    Matrix out(dim, static_cast<long>(dirs.size()));
    for (std::size_t j = 0; j < dirs.size(); ++j) out.col(j) = dirs[j];
    return out;
}

// ---------------------------------------------------------------------------
// SpectrumEngine

SpectrumEngine::SpectrumEngine(MatrixSequence seq, SpectraConfig cfg)
    : seq_(std::move(seq)), cfg_(std::move(cfg)) {
    if (!seq_.valid()) throw ComputeError("SpectrumEngine: empty system");
}

Interval SpectrumEngine::search_box() const {
    return {-std::log(seq_.inv_norm_bound()), std::log(seq_.norm_bound())};
}

const TriangularForm& SpectrumEngine::triangular() {
    if (!tri_) tri_ = qr_normal_form(seq_, cfg_.window.n_max);
    return *tri_;
}

const std::vector<BohlEstimate>& SpectrumEngine::diagonal_estimates() {
    if (!diag_estimates_) {
        const auto& tri = triangular();
        std::vector<BohlEstimate> ests(tri.dim);
        for (int k = 0; k < tri.dim; ++k) {
            const auto cum = diagonal_cumlog(tri, k);
            ests[k] = bohl_exponents_cumlog(cum, cfg_.window);
        }
        diag_estimates_ = std::move(ests);
    }
    return *diag_estimates_;
}

const Matrix& SpectrumEngine::direction_sample() {
    if (!directions_) directions_ = default_direction_sample(seq_.dim(), cfg_.sphere_per_dim);
    return *directions_;
}

const std::vector<BohlEstimate>& SpectrumEngine::direction_estimates() {
    if (!dir_estimates_) {
        const Matrix& dirs = direction_sample();
        const long n_dirs = dirs.cols();
        std::vector<BohlEstimate> ests(n_dirs);
        seq_.ensure(cfg_.window.n_max);
        parallel_chunks(n_dirs, [&](long lo, long hi, int) {
            if (lo >= hi) return;
            const auto logs =
                propagate_log_norms(seq_, dirs.middleCols(lo, hi - lo), cfg_.window.n_max);
            for (long j = lo; j < hi; ++j) ests[j] = bohl_exponents_cumlog(logs[j - lo], cfg_.window);
        });
        dir_estimates_ = std::move(ests);
    }
    return *dir_estimates_;
}

const BohlEstimate& SpectrumEngine::fullspace_estimate() {
    if (!fullspace_) fullspace_ = bohl_exponents_fullspace(seq_, cfg_.window);
    return *fullspace_;
}

GammaVerdict SpectrumEngine::classify(double gamma, SpectrumKind mode) {
    if (mode == SpectrumKind::bohl)
        throw ComputeError("classify: mode must be bd or ed");
    const double alpha = cfg_.alpha_min;
    GammaVerdict v;
    v.gamma = gamma;

    if (mode == SpectrumKind::bohl_dichotomy) {
        const auto& ests = direction_estimates();
        double margin = std::numeric_limits<double>::infinity();
        long worst_dir = -1;
        bool hit = false;
        long hit_dir = -1;
        for (long i = 0; i < static_cast<long>(ests.size()); ++i) {
            const double m_i = std::max(gamma - ests[i].upper, ests[i].lower - gamma);
            if (m_i < margin) {
                margin = m_i;
                worst_dir = i;
            }
            if (ests[i].upper > gamma - alpha && ests[i].lower < gamma + alpha && !hit) {
                hit = true;
                hit_dir = i;
            }
        }
        v.margin = margin;
        // dim of the span of certified-decaying sampled directions
        std::vector<long> decaying;
        for (long i = 0; i < static_cast<long>(ests.size()); ++i)
            if (ests[i].upper <= gamma - alpha) decaying.push_back(i);
        int dim_l1 = 0;
        if (!decaying.empty()) {
            Matrix cols(seq_.dim(), static_cast<long>(decaying.size()));
            for (std::size_t j = 0; j < decaying.size(); ++j)
                cols.col(j) = direction_sample().col(decaying[j]);
            Eigen::JacobiSVD<Matrix> svd(cols);
            const double thresh = 1e-8 * svd.singularValues()(0);
            dim_l1 = static_cast<int>((svd.singularValues().array() > thresh).count());
        }
        v.split_dims = {dim_l1, seq_.dim() - dim_l1};
        if (hit) {
            v.verdict = Verdict::spectrum;
            v.witnesses = json{{"direction", hit_dir},
                               {"interval", json::array({ests[hit_dir].lower, ests[hit_dir].upper})}};
        } else if (margin >= alpha) {
            v.verdict = Verdict::resolvent;
            v.witnesses = json{{"tightest_direction", worst_dir}};
        } else {
            v.verdict = Verdict::undecided;
            v.witnesses = json{{"tightest_direction", worst_dir}};
        }
        return v;
    }

    // exponential dichotomy mode: every diagonal exponent of the triangular
    // normal form must sit clearly on one side of gamma; the count split
    // gives the dichotomy dimensions
    const auto& diag = diagonal_estimates();
    const int d = seq_.dim();
    double margin_diag = std::numeric_limits<double>::infinity();
    int hit_k = -1, worst_k = 0;
    for (int k = 0; k < d; ++k) {
        const double m_k = std::max(gamma - diag[k].upper, diag[k].lower - gamma);
        if (m_k < margin_diag) {
            margin_diag = m_k;
            worst_k = k;
        }
        if (diag[k].upper > gamma - alpha && diag[k].lower < gamma + alpha && hit_k < 0) hit_k = k;
    }
    int split = 0;
    for (int k = 0; k < d; ++k)
        if (diag[k].upper < gamma) ++split;
    v.margin = margin_diag;
    v.split_dims = {split, d - split};
    if (hit_k >= 0) {
        v.verdict = Verdict::spectrum;
        v.witnesses = json{{"diagonal_entry", hit_k},
                           {"interval", json::array({diag[hit_k].lower, diag[hit_k].upper})}};
    } else if (margin_diag >= alpha) {
        v.verdict = Verdict::resolvent;
        v.witnesses = json{{"tightest_entry", worst_k}};
    } else {
        v.verdict = Verdict::undecided;
        v.witnesses = json{{"tightest_entry", worst_k}};
    }
    return v;
}

double SpectrumEngine::refine_edge(double inside, double outside, SpectrumKind mode) {
    for (int it = 0; it < 20; ++it) {
        const double mid = 0.5 * (inside + outside);
        if (classify(mid, mode).verdict == Verdict::resolvent)
            outside = mid;
        else
            inside = mid;
    }
    return 0.5 * (inside + outside);
}

std::vector<Interval> SpectrumEngine::gamma_grid_intervals(SpectrumKind mode) {
    const Interval box = search_box();
    const double lo = box.lo - cfg_.grid_tol;
    const double hi = box.hi + cfg_.grid_tol;
    const long n_pts = std::max(2L, static_cast<long>(std::ceil((hi - lo) / cfg_.grid_tol)) + 1);
    const double step = (hi - lo) / static_cast<double>(n_pts - 1);

    std::vector<char> in_spectrum(n_pts);
    std::vector<double> gamma(n_pts);
    for (long i = 0; i < n_pts; ++i) {
        gamma[i] = lo + step * static_cast<double>(i);
        // undecided counts as spectrum (one-sided error only)
        in_spectrum[i] = classify(gamma[i], mode).verdict != Verdict::resolvent;
    }
    std::vector<Interval> raw;
    long i = 0;
    while (i < n_pts) {
        if (!in_spectrum[i]) {
            ++i;
            continue;
        }
        long j = i;
        while (j + 1 < n_pts && in_spectrum[j + 1]) ++j;
        Interval iv{gamma[i], gamma[j]};
        if (i > 0) iv.lo = refine_edge(gamma[i], gamma[i - 1], mode);
        if (j + 1 < n_pts) iv.hi = refine_edge(gamma[j], gamma[j + 1], mode);
        raw.push_back(iv);
        i = j + 1;
    }
    return merge_intervals(std::move(raw), cfg_.grid_tol);
}

SubspaceDims SpectrumEngine::subspace_dims(double gamma) {
    const double alpha = cfg_.alpha_min;
    SubspaceDims out;

    const auto& diag = diagonal_estimates();
    json s_witness = json::array();
    for (int k = 0; k < seq_.dim(); ++k)
        if (diag[k].upper < gamma - alpha) {
            ++out.dim_s;
            s_witness.push_back(k);
        }

    const auto& ests = direction_estimates();
    std::vector<long> decaying;
    for (long i = 0; i < static_cast<long>(ests.size()); ++i)
        if (ests[i].upper < gamma - alpha) decaying.push_back(i);
    if (!decaying.empty()) {
        Matrix cols(seq_.dim(), static_cast<long>(decaying.size()));
        for (std::size_t j = 0; j < decaying.size(); ++j)
            cols.col(j) = direction_sample().col(decaying[j]);
        Eigen::JacobiSVD<Matrix> svd(cols);
        const double thresh = 1e-8 * svd.singularValues()(0);
        out.dim_m = static_cast<int>((svd.singularValues().array() > thresh).count());
    }

    const bool bd_res = classify(gamma, SpectrumKind::bohl_dichotomy).verdict == Verdict::resolvent;
    const bool ed_res = classify(gamma, SpectrumKind::exponential_dichotomy).verdict == Verdict::resolvent;
    out.certified = bd_res && ed_res;
    out.witness = json{{"triangular_basis_entries", s_witness},
                       {"decaying_directions", static_cast<long>(decaying.size())},
                       {"bd_resolvent", bd_res},
                       {"ed_resolvent", ed_res}};
    return out;
}

std::vector<int> SpectrumEngine::filtration_dims(std::vector<Interval>& intervals,
                                                 SpectrumKind kind,
                                                 std::vector<std::string>& flags) {
    const int d = seq_.dim();
    auto dim_at = [&](double gamma) {
        const auto dims = subspace_dims(gamma);
        return kind == SpectrumKind::bohl ? dims.dim_m : dims.dim_s;
    };
    for (;;) {
        std::vector<int> dims;
        dims.push_back(0);
        bool merged = false;
        for (std::size_t i = 0; i + 1 < intervals.size(); ++i) {
            const double mid = 0.5 * (intervals[i].hi + intervals[i + 1].lo);
            const int dim = dim_at(mid);
            if (dim <= dims.back() || dim >= d) {
                // the gap shows no dimension step: not a resolved spectral gap
                intervals[i].hi = intervals[i + 1].hi;
                intervals.erase(intervals.begin() + i + 1);
                flags.push_back("filtration: merged under-resolved gap at gamma=" +
                                std::to_string(mid));
                merged = true;
                break;
            }
            dims.push_back(dim);
        }
        if (merged) continue;
        dims.push_back(d);
        return dims;
    }
}

json SpectrumEngine::base_method(const char* route) const {
    return json{{"route", route},
                {"horizon", cfg_.window.n_max},
                {"n_last", cfg_.window.n_last()},
                {"representation", bohl::to_string(cfg_.window.representation)},
                {"grid_tol", cfg_.grid_tol},
                {"alpha_min", cfg_.alpha_min}};
}

SpectrumResult SpectrumEngine::ed_spectrum() {
    const auto& diag = diagonal_estimates();
    std::vector<Interval> raw;
    for (const auto& est : diag) raw.push_back({est.lower, est.upper});
    auto intervals = merge_intervals(std::move(raw), cfg_.grid_tol);

    SpectrumResult res;
    res.kind = SpectrumKind::exponential_dichotomy;
    res.search_box = search_box();
    res.method = base_method("qr_diagonal");
    res.method["qr_residual"] = triangular().residual;
    res.method["direction_sample"] = 0;
    std::vector<std::string> flags;

    // filtration by counting diagonal entries below each gap
    std::vector<int> dims;
    dims.push_back(0);
    for (std::size_t i = 0; i + 1 < intervals.size(); ++i) {
        const double mid = 0.5 * (intervals[i].hi + intervals[i + 1].lo);
        int below = 0;
        for (const auto& est : diag)
            if (est.upper < mid) ++below;
        dims.push_back(below);
    }
    dims.push_back(seq_.dim());

    // endpoint identity: min/max of the spectrum are the full-space exponents
    const auto& full = fullspace_estimate();
    const double dev_min = std::abs(intervals.front().lo - full.lower);
    const double dev_max = std::abs(intervals.back().hi - full.upper);
    res.method["fullspace_lower"] = full.lower;
    res.method["fullspace_upper"] = full.upper;
    if (std::max(dev_min, dev_max) > 2.0 * cfg_.grid_tol)
        flags.push_back("endpoints deviate from fullspace Bohl exponents by " +
                        std::to_string(std::max(dev_min, dev_max)));

    // secondary route: gamma classification via dichotomy splittings
    if (cfg_.cross_check && seq_.dim() <= 3) {
        const auto route2 = gamma_grid_intervals(SpectrumKind::exponential_dichotomy);
        json r2 = json::array();
        for (const auto& iv : route2) r2.push_back(json::array({iv.lo, iv.hi}));
        res.method["gamma_route_intervals"] = r2;
        const double dist = hausdorff(intervals, route2);
        res.method["route_hausdorff"] = dist;
        if (dist > 2.0 * cfg_.grid_tol)
            flags.push_back("gamma-classification route disagrees by " + std::to_string(dist));
    }

    res.intervals = std::move(intervals);
    res.filtration_dims = std::move(dims);
    res.method["flags"] = flags;
    return res;
}

SpectrumResult SpectrumEngine::bd_spectrum() {
    const auto& ests = direction_estimates();
    std::vector<Interval> raw;
    for (const auto& est : ests) raw.push_back({est.lower, est.upper});
    auto intervals = merge_intervals(std::move(raw), cfg_.grid_tol);

    SpectrumResult res;
    res.kind = SpectrumKind::bohl_dichotomy;
    res.search_box = search_box();
    res.method = base_method("closure_of_sampled_bohl");
    res.method["direction_sample"] = static_cast<long>(ests.size());
    res.method["inner_approximation"] = true;
    // the closure route makes this estimate coincide with the sampled Bohl
    // union; inner sampling cannot separate the two spectra
    res.method["gap_to_sampled_bohl"] = 0.0;
    std::vector<std::string> flags;

    if (cfg_.cross_check) {
        const auto route2 = gamma_grid_intervals(SpectrumKind::bohl_dichotomy);
        json r2 = json::array();
        for (const auto& iv : route2) r2.push_back(json::array({iv.lo, iv.hi}));
        res.method["gamma_route_intervals"] = r2;
        const double dist = hausdorff(intervals, route2);
        res.method["route_hausdorff"] = dist;
        if (dist > 2.0 * cfg_.grid_tol)
            flags.push_back("gamma-classification route disagrees by " + std::to_string(dist));
    }

    res.filtration_dims = filtration_dims(intervals, SpectrumKind::bohl_dichotomy, flags);
    res.intervals = std::move(intervals);
    res.method["flags"] = flags;
    return res;
}

SpectrumResult SpectrumEngine::bohl_spectrum() {
    const auto& ests = direction_estimates();
    std::vector<Interval> raw;
    for (const auto& est : ests) raw.push_back({est.lower, est.upper});
    auto intervals = merge_intervals(std::move(raw), cfg_.grid_tol);

    SpectrumResult res;
    res.kind = SpectrumKind::bohl;
    res.search_box = search_box();
    res.method = base_method("direction_union");
    res.method["direction_sample"] = static_cast<long>(ests.size());
    res.method["inner_approximation"] = true;
    std::vector<std::string> flags;
    res.filtration_dims = filtration_dims(intervals, SpectrumKind::bohl, flags);
    res.intervals = std::move(intervals);
    res.method["flags"] = flags;
    return res;
}

std::vector<int> SpectrumEngine::filtration_for(const SpectrumResult& spec) {
    if (spec.intervals.empty()) throw ComputeError("filtration: empty spectrum");
    const int d = seq_.dim();
    std::vector<int> dims;
    dims.push_back(0);
    // one gamma below, the gap midpoints, one gamma above
    const double below = search_box().lo - 1.0;
    const double above = search_box().hi + 1.0;
    auto dim_at = [&](double gamma) {
        const auto sd = subspace_dims(gamma);
        return spec.kind == SpectrumKind::bohl ? sd.dim_m : sd.dim_s;
    };
    if (dim_at(below) != 0)
        throw ComputeError("filtration: nonzero dimension below the search box");
    for (std::size_t i = 0; i + 1 < spec.intervals.size(); ++i) {
        const double mid = 0.5 * (spec.intervals[i].hi + spec.intervals[i + 1].lo);
        const int dim = dim_at(mid);
        if (dim <= dims.back())
            throw ComputeError("filtration: dims not strictly increasing (under-resolved "
                               "spectrum near gamma=" + std::to_string(mid) + ")");
        dims.push_back(dim);
    }
    if (dim_at(above) != d)
        throw ComputeError("filtration: dimension above the search box is not d");
    dims.push_back(d);
    return dims;
}

// ---------------------------------------------------------------------------
// Free functions

Interval scalar_ed_spectrum(const MatrixSequence& a, const SpectraConfig& cfg) {
    if (a.dim() != 1) throw ComputeError("scalar_ed_spectrum: system must be scalar");
    auto data = a.ensure(cfg.window.n_max);
    std::vector<double> cum;
    cum.reserve(cfg.window.n_max + 1);
    cum.push_back(0.0);
    for (long n = 0; n < cfg.window.n_max; ++n)
        cum.push_back(cum.back() + std::log(std::abs(data->a[n](0, 0))));
    const auto est = bohl_exponents_cumlog(cum, cfg.window);
    return {est.lower, est.upper};
}

SpectrumResult diagonal_spectrum(const std::vector<MatrixSequence>& diag_entries,
                                 const SpectraConfig& cfg) {
    if (diag_entries.empty()) throw ComputeError("diagonal_spectrum: empty entry list");
    std::vector<Interval> entry_intervals;
    double nb = 0.0, ib = 0.0;
    for (const auto& entry : diag_entries) {
        if (entry.dim() != 1) throw ComputeError("diagonal_spectrum: entries must be scalar");
        entry_intervals.push_back(scalar_ed_spectrum(entry, cfg));
        nb = std::max(nb, entry.norm_bound());
        ib = std::max(ib, entry.inv_norm_bound());
    }
    auto intervals = merge_intervals(entry_intervals, cfg.grid_tol);

    SpectrumResult res;
    res.kind = SpectrumKind::exponential_dichotomy;
    res.search_box = {-std::log(ib), std::log(nb)};
    res.method = json{{"route", "diagonal_scalar"},
                      {"horizon", cfg.window.n_max},
                      {"n_last", cfg.window.n_last()},
                      {"flags", json::array()}};
    std::vector<int> dims;
    dims.push_back(0);
    for (std::size_t i = 0; i + 1 < intervals.size(); ++i) {
        const double mid = 0.5 * (intervals[i].hi + intervals[i + 1].lo);
        int below = 0;
        for (const auto& iv : entry_intervals)
            if (iv.hi < mid) ++below;
        dims.push_back(below);
    }
    dims.push_back(static_cast<int>(diag_entries.size()));
    res.filtration_dims = std::move(dims);
    res.intervals = std::move(intervals);
    return res;
}

SpectrumResult ed_spectrum(const MatrixSequence& seq, const SpectraConfig& cfg) {
    return SpectrumEngine(seq, cfg).ed_spectrum();
}

SpectrumResult bd_spectrum(const MatrixSequence& seq, const SpectraConfig& cfg) {
    return SpectrumEngine(seq, cfg).bd_spectrum();
}

SpectrumResult bohl_spectrum_sampled(const MatrixSequence& seq, const Matrix& directions,
                                     const SpectraConfig& cfg) {
    if (directions.cols() < 1) throw ComputeError("bohl_spectrum_sampled: no directions");
    for (long j = 0; j < directions.cols(); ++j)
        if (!(directions.col(j).norm() > 0.0))
            throw ComputeError("bohl_spectrum_sampled: zero direction in sample");
    SpectrumEngine engine(seq, cfg);
    engine.set_direction_sample(directions);
    return engine.bohl_spectrum();
}

SpectrumResult bohl_spectrum_sampled(const MatrixSequence& seq, const SpectraConfig& cfg) {
    return SpectrumEngine(seq, cfg).bohl_spectrum();
}

GammaVerdict classify_gamma(const MatrixSequence& seq, double gamma, SpectrumKind mode,
                            const SpectraConfig& cfg) {
    return SpectrumEngine(seq, cfg).classify(gamma, mode);
}

SubspaceDims subspace_dims(const MatrixSequence& seq, double gamma, const SpectraConfig& cfg) {
    return SpectrumEngine(seq, cfg).subspace_dims(gamma);
}

std::vector<int> filtration(const MatrixSequence& seq, const SpectrumResult& spec,
                            const SpectraConfig& cfg) {
    return SpectrumEngine(seq, cfg).filtration_for(spec);
}

}  // namespace bohl
