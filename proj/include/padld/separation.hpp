#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padld/germ.hpp"

namespace padld {

// Coordinates {1..r} are separated (solved for), {r+1..n} retained.
// No Jordan block may straddle the boundary.
struct SplitSpec {
    int r = 0;
};

// Validates the split against the germ's Jordan structure.
void check_split(const Germ& g, const SplitSpec& split);

enum class SemigroupStatus {
    CertifiedByValuation,
    CertifiedBySearch,
    Unknown,
};

const char* semigroup_status_name(SemigroupStatus s);

struct SemigroupEvidence {
    SemigroupStatus status = SemigroupStatus::Unknown;
    std::string evidence;
};

// Certifies that no separated multiplier lies in the multiplicative semigroup
// generated by the retained ones (products of >= 1 generators).
SemigroupEvidence semigroup_excluded(const std::vector<Rat>& lambdas_sep,
                                     const std::vector<Rat>& lambdas_ret, long p, int budget);

struct SeparationResult {
    // f_i (i = 1..r) as dim-n series supported on the retained variables only;
    // no terms of total degree < 2.
    std::vector<Series> f;
    Germ conjugated;
    std::optional<Val> radius_bound;  // nullopt = unknown
    std::string semigroup_evidence;
};

// Degree-by-degree solution of the invariance identity
// phi_i(f_1..f_r, x_{r+1..n}) = f_i(phi_{r+1}.., all on x_i := f_i),
// then conjugation x_i -> x_i - f_i.
SeparationResult solve_separation(const Germ& g, const SplitSpec& split, int budget = 16);

// Valuation threshold certifying the polydisk of convergence of f
// (points with vp(x_j) > threshold are inside); nullopt = unknown.
std::optional<Val> radius_bound(const Germ& g, const SplitSpec& split);

// Same decision from the multiplier lists alone (covers repelling separated
// multipliers, which cannot appear in a p-integral germ).
std::optional<Val> radius_bound_for_multipliers(const std::vector<Rat>& lambdas_sep,
                                                const std::vector<Rat>& lambdas_ret, long p);

struct InvarianceCheck {
    bool ok = false;
    int degree = 0;  // highest fully verified degree; on failure, the failing degree
};

// Independent term-by-term check of the defining identity up to trunc.
InvarianceCheck verify_invariance(const Germ& g, const std::vector<Series>& f,
                                  const SplitSpec& split);

}  // namespace padld
