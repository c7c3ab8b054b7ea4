#pragma once

#include <string>
#include <vector>

#include "padld/germ.hpp"

namespace padld {

// Exact vp(lambda^k - 1); requires vp(lambda) = 0.
Val v_lambda_k(const Rat& lambda, long k, long p);

struct NormalizedGerm {
    Germ germ;
    long power;  // the iterate taken
};

// Minimal N such that every root-of-unity multiplier becomes 1 and every
// other (indifferent) multiplier satisfies vp(lambda^N - 1) > 1/(p-1).
NormalizedGerm normalize_iterate(const Germ& g);

// Coefficient of x^alpha in phi_{i,k} - x_i for k = 1..K via the closed form
// (k c or c (lambda^k-1)/(lambda-1)), cross-checked against direct iteration.
// alpha must be a minimal polydegree of phi_j - x_j with c_{i,alpha} != 0 and
// c_{j,alpha} = 0 for every j > i in the same Jordan block.
std::vector<Rat> minimal_coefficient_trajectory(const Germ& g, const ExpVec& alpha, int i, int K);

struct GrowthProfile {
    int e = 0;   // max total degree among minimal polydegrees
    Rat t = 0;   // max minimal valuation among them (at k = 1)
    int n = 0;
    long p = 0;
    long normalization_iterate = 1;
    std::vector<std::pair<ExpVec, Val>> minimal_polydegrees;
};

// Profile of the normalized germ: vp of the tracked coefficients is bounded by
// log_p k + t (verified for k up to verify_k).
GrowthProfile growth_profile(const Germ& g, int verify_k = 20);

struct PerKEvidence {
    long k = 0;
    std::string evidence;  // "oracle-empty" / "oracle-discounted"
    long candidates = 0;   // nonzero oracle hits
    long discounted = 0;   // of those, explained as zero shadows
};

struct IsolationCertificate {
    long m_star = 0;
    long K = 0;
    std::vector<PerKEvidence> per_k;
    std::string tail_argument;
    bool oracle_checked = false;
    long normalization_iterate = 1;
    long oracle_modulus_exp = 0;  // M used in the per-k oracle runs
    GrowthProfile profile;
};

// Finds m_star and cutoff K with n^{n+1} (e + (log_p k + t)/m_star)^n / n! < k
// for all k > K (monotone tail test), then verifies emptiness of the region
// {vp(x_j) > m_star} for every k <= K by the brute-force oracle.
IsolationCertificate certify_isolation(const Germ& g, long max_direct_period = 0,
                                       long k_cap = 64, int oracle_modulus = 0);

// Exhaustive enumeration of z in (p^a Z / p^M)^n with phi^k(z) = z mod p^M.
// Tail terms above trunc cannot flip residues when (D+1) a >= M.
std::vector<std::vector<unsigned long long>> oracle_periodic_points(const Germ& g, long k, int M,
                                                                    int a);

}  // namespace padld
