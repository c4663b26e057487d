#ifndef BOHL_THEOREMCHECK_HPP
#define BOHL_THEOREMCHECK_HPP

#include "bohl/spectra.hpp"

namespace bohl {

enum class CheckStatus { pass, fail, skipped };
std::string to_string(CheckStatus s);

struct CheckEntry {
    std::string name;
    std::string system;
    CheckStatus status = CheckStatus::skipped;
    nlohmann::json measured;  // the quantities behind the verdict, never just a flag
    double tolerance = 0.0;
    nlohmann::json witness;
};

struct CheckReport {
    std::vector<CheckEntry> checks;

    int count(CheckStatus s) const;
    bool all_ok() const { return count(CheckStatus::fail) == 0; }
    void append(CheckReport other);
    void sort_canonical();  // by (name, system) so report bytes are stable
    nlohmann::json to_json() const;
};

struct BuiltinSystem {
    std::string id;
    SystemSpec spec;
};

// The fixed seven-generator roster used for reproducible runs.
std::vector<BuiltinSystem> builtin_roster(long horizon, std::uint64_t qdq_seed = 42);
std::vector<BuiltinSystem> builtin_triangular_roster(long horizon);

struct InvarianceCase {
    std::string id;
    SystemSpec system;
    int transform_id = 0;
    double kappa_bound = 4.0;  // bound on ||T||_inf ||T^-1||_inf
};

std::vector<InvarianceCase> builtin_invariance_cases(long horizon, std::uint64_t qdq_seed = 42);
TransformSequence builtin_transform(int id, int dim, long horizon);

CheckReport run_exponent_properties(const std::vector<BuiltinSystem>& roster,
                                    const SpectraConfig& cfg);
CheckReport run_spectrum_relations(const std::vector<BuiltinSystem>& roster,
                                   const SpectraConfig& cfg);
CheckReport run_invariance_checks(const std::vector<InvarianceCase>& cases,
                                  const SpectraConfig& cfg);
CheckReport run_triangular_relations(const std::vector<BuiltinSystem>& roster,
                                     const SpectraConfig& cfg);

// Full suite over the builtin roster at the given horizons (invariance runs
// at a capped horizon; its tolerance formula accounts for N_last).
CheckReport run_all_checks(const std::vector<long>& horizons, std::uint64_t qdq_seed = 42);

}  // namespace bohl

#endif
