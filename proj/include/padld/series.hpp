#pragma once

#include <map>
#include <string>
#include <vector>

#include "padld/rat.hpp"

namespace padld {

// Exponent vector of a monomial; componentwise partial order.
using ExpVec = std::vector<int>;

inline int total_degree(const ExpVec& a) {
    int d = 0;
    for (int e : a) d += e;
    return d;
}

// beta <= alpha componentwise
inline bool exp_leq(const ExpVec& b, const ExpVec& a) {
    for (size_t i = 0; i < a.size(); ++i)
        if (b[i] > a[i]) return false;
    return true;
}
inline bool exp_lt(const ExpVec& b, const ExpVec& a) { return exp_leq(b, a) && b != a; }

// Canonical term order: graded lexicographic.
struct GradedLex {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

// Sparse truncated multivariate power series over Q. Terms of total degree
// above trunc are identically discarded; stored coefficients are nonzero.
class Series {
  public:
    Series(int dim, int trunc);

    static Series zero(int dim, int trunc) { return Series(dim, trunc); }
    static Series constant(int dim, int trunc, const Rat& c);
    // x_{i} for 1-based i
    static Series variable(int dim, int trunc, int i);

    int dim() const { return dim_; }
    int trunc() const { return trunc_; }
    const std::map<ExpVec, Rat, GradedLex>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    Rat coeff(const ExpVec& a) const;
    Rat constant_term() const;
    void set_coeff(const ExpVec& a, const Rat& c);

    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const;
    Series operator*(const Series& o) const;
    Series operator-() const;
    Series scaled(const Rat& c) const;
    bool operator==(const Series& o) const {
        return dim_ == o.dim_ && trunc_ == o.trunc_ && terms_ == o.terms_;
    }

    // Same series re-truncated at d <= trunc.
    Series truncated(int d) const;
    // Same coefficients viewed at a higher truncation bound. Only meaningful
    // when the caller knows the series is exact (e.g. a polynomial).
    Series with_trunc(int d) const;

    // Multiplicative inverse of a unit (nonzero constant term).
    Series inverse() const;

    // outer(inner_1, ..., inner_dim); all inner constant terms must vanish.
    Series compose(const std::vector<Series>& inner) const;

    // Exact evaluation at a rational point.
    Rat eval(const std::vector<Rat>& z) const;

    // Substitute 0 for the variables listed (1-based), keeping dimension.
    Series substitute_zero(const std::vector<int>& vars) const;

    std::string str() const;

  private:
    int dim_;
    int trunc_;
    std::map<ExpVec, Rat, GradedLex> terms_;

    void check_dim(const Series& o) const;
};

Series parse_series(const std::string& text, int dim, int trunc);

// All componentwise-minimal exponents carrying a nonzero coefficient in some
// member of the family, each with its minimum coefficient valuation across
// members.
std::vector<std::pair<ExpVec, Val>> min_polydegrees(const std::vector<Series>& family, long p);

}  // namespace padld
