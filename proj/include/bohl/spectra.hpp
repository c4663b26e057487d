#ifndef BOHL_SPECTRA_HPP
#define BOHL_SPECTRA_HPP

#include <optional>

#include "bohl/exponents.hpp"
#include "bohl/triangularize.hpp"

namespace bohl {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double mid() const { return 0.5 * (lo + hi); }
    double length() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

// Sorts by lo and merges intervals whose gap is <= gap_tol.
std::vector<Interval> merge_intervals(std::vector<Interval> raw, double gap_tol);

double distance_to(double x, const std::vector<Interval>& u);
// sup over points of a of their distance to b (0 when a is a subset of b).
double directed_hausdorff(const std::vector<Interval>& a, const std::vector<Interval>& b);
double hausdorff(const std::vector<Interval>& a, const std::vector<Interval>& b);

enum class SpectrumKind { bohl, bohl_dichotomy, exponential_dichotomy };
std::string to_string(SpectrumKind k);

struct SpectrumResult {
    SpectrumKind kind = SpectrumKind::exponential_dichotomy;
    std::vector<Interval> intervals;      // sorted, disjoint, 1..d of them
    std::vector<int> filtration_dims;     // 0 = dim V_0 < ... < dim V_l = d
    Interval search_box;                  // a-priori bound for the spectrum
    nlohmann::json method;                // diagnostics: horizon, routes, flags

    double min() const { return intervals.front().lo; }
    double max() const { return intervals.back().hi; }
    nlohmann::json to_json() const;
};

enum class Verdict { resolvent, spectrum, undecided };
std::string to_string(Verdict v);

struct GammaVerdict {
    double gamma = 0.0;
    Verdict verdict = Verdict::undecided;
    double margin = 0.0;               // the alpha found, or the shortfall
    std::pair<int, int> split_dims{0, 0};
    nlohmann::json witnesses;

    nlohmann::json to_json() const;
};

struct SubspaceDims {
    int dim_s = 0;  // gamma-attractive subspace estimate
    int dim_m = 0;  // gamma-exponentially-stable set estimate
    bool certified = false;
    nlohmann::json witness;
};

struct SpectraConfig {
    WindowConfig window;
    double grid_tol = 1e-2;
    double alpha_min = 1e-2;
    int sphere_per_dim = 64;   // lattice direction sample size per dimension
    bool cross_check = true;   // run the secondary classification routes

    static SpectraConfig defaults(long horizon);
};

// Deterministic direction sample: standard basis plus a sphere lattice of
// per_dim * dim points (half circle for d=2, Fibonacci lattice for d=3).
Matrix default_direction_sample(int dim, int per_dim);

// Caches the triangularization, the per-direction and per-block exponent
// estimates for one system, and derives all three spectra, verdicts and
// filtration dimensions from them. The shift identity (the gamma-shifted
// system subtracts gamma from every window ratio) means one set of
// estimates serves every gamma.
class SpectrumEngine {
public:
    SpectrumEngine(MatrixSequence seq, SpectraConfig cfg);

    const MatrixSequence& system() const { return seq_; }
    const SpectraConfig& config() const { return cfg_; }
    Interval search_box() const;

    // Overrides the default sample; call before any estimate is requested.
    void set_direction_sample(const Matrix& dirs) { directions_ = dirs; }

    const TriangularForm& triangular();
    const std::vector<BohlEstimate>& diagonal_estimates();
    const Matrix& direction_sample();
    const std::vector<BohlEstimate>& direction_estimates();
    const BohlEstimate& fullspace_estimate();

    SpectrumResult ed_spectrum();
    SpectrumResult bd_spectrum();
    SpectrumResult bohl_spectrum();

    GammaVerdict classify(double gamma, SpectrumKind mode);
    SubspaceDims subspace_dims(double gamma);
    std::vector<int> filtration_for(const SpectrumResult& spec);

private:
    std::vector<Interval> gamma_grid_intervals(SpectrumKind mode);
    double refine_edge(double inside, double outside, SpectrumKind mode);
    nlohmann::json base_method(const char* route) const;
    std::vector<int> filtration_dims(std::vector<Interval>& intervals, SpectrumKind kind,
                                     std::vector<std::string>& flags);

    MatrixSequence seq_;
    SpectraConfig cfg_;
    std::optional<TriangularForm> tri_;
    std::optional<std::vector<BohlEstimate>> diag_estimates_;
    std::optional<Matrix> directions_;
    std::optional<std::vector<BohlEstimate>> dir_estimates_;
    std::optional<BohlEstimate> fullspace_;
};

// Free-function forms.

// Scalar systems: the spectrum is exactly the Bohl interval of the sequence.
Interval scalar_ed_spectrum(const MatrixSequence& a, const SpectraConfig& cfg);

// Union of the per-entry scalar spectra with filtration by counting.
SpectrumResult diagonal_spectrum(const std::vector<MatrixSequence>& diag_entries,
                                 const SpectraConfig& cfg);

SpectrumResult ed_spectrum(const MatrixSequence& seq, const SpectraConfig& cfg);
SpectrumResult bd_spectrum(const MatrixSequence& seq, const SpectraConfig& cfg);
SpectrumResult bohl_spectrum_sampled(const MatrixSequence& seq, const Matrix& directions,
                                     const SpectraConfig& cfg);
SpectrumResult bohl_spectrum_sampled(const MatrixSequence& seq, const SpectraConfig& cfg);

GammaVerdict classify_gamma(const MatrixSequence& seq, double gamma, SpectrumKind mode,
                            const SpectraConfig& cfg);
SubspaceDims subspace_dims(const MatrixSequence& seq, double gamma, const SpectraConfig& cfg);
std::vector<int> filtration(const MatrixSequence& seq, const SpectrumResult& spec,
                            const SpectraConfig& cfg);

}  // namespace bohl

#endif
