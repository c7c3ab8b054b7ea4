#pragma once

#include <string>
#include <vector>

#include "padld/linalg.hpp"
#include "padld/series.hpp"

namespace padld {

struct JordanBlock {
    Rat lambda;
    int size = 1;
    bool operator==(const JordanBlock& o) const = default;
};

// Ordered block description of the linear part: lambda on the diagonal,
// 1 on the superdiagonal inside each block.
struct JordanSpec {
    std::vector<JordanBlock> blocks;

    int dim() const {
        int n = 0;
        for (const auto& b : blocks) n += b.size;
        return n;
    }
    // Multiplier of coordinate i (1-based).
    Rat multiplier(int i) const;
    // 1-based block index containing coordinate i.
    int block_of(int i) const;
    Mat matrix() const;
    bool operator==(const JordanSpec& o) const = default;
};

// Entry (i, i+j) of the k-th power of a block is C(k,j) lambda^{k-j}.
Mat jordan_power(const JordanSpec& spec, long k);

// An analytic germ fixing the origin: n truncated series over Q with p-adic
// normalization (every nonlinear coefficient has vp >= 0) and a linear part
// in Jordan form.
class Germ {
  public:
    Germ(long p, std::vector<Series> phi, JordanSpec jordan);

    long p() const { return p_; }
    int dim() const { return static_cast<int>(phi_.size()); }
    int trunc() const { return phi_[0].trunc(); }
    const std::vector<Series>& phi() const { return phi_; }
    const Series& phi(int i) const { return phi_[i - 1]; }  // 1-based
    const JordanSpec& jordan() const { return jordan_; }

    Germ truncated(int d) const;

    bool operator==(const Germ& o) const {
        return p_ == o.p_ && phi_ == o.phi_ && jordan_ == o.jordan_;
    }

  private:
    long p_;
    std::vector<Series> phi_;
    JordanSpec jordan_;
};

// Validates (does not compute) the Jordan structure of the linear part and
// the p-integrality of all coefficients.
Germ germ_from_map(const std::vector<Series>& phi, long p);

// k-th compositional iterate, truncated at g's trunc.
Germ iterate(const Germ& g, long k);

// Restriction to the invariant coordinate subspace spanned by `keep`
// (1-based indices; the complement must be an invariant prefix {1..r}).
Germ restrict(const Germ& g, const std::vector<int>& keep);

struct OrbitStep {
    std::vector<Val> vals;
    std::vector<bool> certified;  // tail bound certifies the reported valuation
};

// Exact coordinatewise valuations of phi^k(z), k = 1..K, with per-step
// tail-bound certification flags. With strict=true an uncertifiable step
// raises TailDominates.
std::vector<OrbitStep> orbit_valuations(const Germ& g, const std::vector<Rat>& z, int K,
                                        bool strict = false);

// Text format: "p <prime>" / "dim <n>" / "trunc <D>" / "jordan (l,s) ..."
// then one "phi<i> = <series>" line per coordinate.
std::string print_germ(const Germ& g);
Germ parse_germ(const std::string& text);
Germ load_germ_file(const std::string& path);

}  // namespace padld
