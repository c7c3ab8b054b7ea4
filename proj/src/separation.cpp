#include "padld/separation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace padld {

const char* semigroup_status_name(SemigroupStatus s) {
    switch (s) {
        case SemigroupStatus::CertifiedByValuation: return "certified-by-valuation";
        case SemigroupStatus::CertifiedBySearch: return "certified-by-search";
        case SemigroupStatus::Unknown: return "unknown";
    }
    return "?";
}

void check_split(const Germ& g, const SplitSpec& split) {
    int n = g.dim();
    if (split.r < 1 || split.r >= n)
        throw Error(Errc::BadSplit, "split must separate a nonempty proper prefix");
    int pos = 0;
    for (const auto& b : g.jordan().blocks) {
        if (pos < split.r && pos + b.size > split.r)
            throw Error(Errc::BadSplit, "a Jordan block straddles the split");
        pos += b.size;
    }
}

namespace {

// Multiset of prime factors of a positive integer (trial division).
std::map<Int, int> factor(Int x) {
    std::map<Int, int> out;
    for (Int q = 2; q * q <= x; ++q)
        while (x % q == 0) {
            ++out[q];
            x /= q;
        }
    if (x > 1) ++out[x];
    return out;
}

// Signed prime-exponent vector of a nonzero rational over a fixed prime list.
std::vector<long> exp_vector(const Rat& x, const std::vector<Int>& primes) {
    std::vector<long> v(primes.size(), 0);
    auto num = factor(abs(numerator(x)));
    auto den = factor(denominator(x));
    for (size_t i = 0; i < primes.size(); ++i) {
        auto it = num.find(primes[i]);
        if (it != num.end()) v[i] += it->second;
        it = den.find(primes[i]);
        if (it != den.end()) v[i] -= it->second;
    }
    return v;
}

// All alpha in Z_{>=0}^g with total between 1 and bound; invokes fn(alpha).
template <class F>
void enumerate_exponents(int g, long bound, std::vector<long>& alpha, int pos, long used, F&& fn) {
    if (pos == g) {
        if (used >= 1) fn(alpha);
        return;
    }
    for (long a = 0; used + a <= bound; ++a) {
        alpha[pos] = a;
        enumerate_exponents(g, bound, alpha, pos + 1, used + a, fn);
    }
    alpha[pos] = 0;
}

struct SepVerdict {
    bool excluded = false;
    bool by_valuation = false;
    std::string note;
};

SepVerdict check_one(const Rat& lam, const std::vector<Rat>& ret, long p, int budget) {
    SepVerdict v;
    // zero handling: a product is zero iff it uses a zero generator
    bool ret_has_zero = std::find(ret.begin(), ret.end(), Rat(0)) != ret.end();
    if (lam == 0) {
        if (ret_has_zero) {
            v.note = "representation found: 0 is a retained multiplier";
            return v;
        }
        v.excluded = true;
        v.by_valuation = true;
        v.note = "0 is not a product of nonzero multipliers";
        return v;
    }
    std::vector<Rat> gens;
    for (const auto& r : ret)
        if (r != 0) gens.push_back(r);
    if (gens.empty()) {
        v.excluded = true;
        v.by_valuation = true;
        v.note = "semigroup contains only 0";
        return v;
    }
    // valuation argument: vp of any product is a sum of >= 1 generator vps
    {
        bool all_zero = true, all_pos = true, all_neg = true;
        for (const auto& r : gens) {
            Val w = vp(r, p);
            if (!(w == Val::of(0L))) all_zero = false;
            if (!(w > Val::of(0L))) all_pos = false;
            if (!(w < Val::of(0L))) all_neg = false;
        }
        Val wl = vp(lam, p);
        if ((all_zero && !(wl == Val::of(0L))) || (all_pos && wl <= Val::of(0L)) ||
            (all_neg && wl >= Val::of(0L))) {
            v.excluded = true;
            v.by_valuation = true;
            std::ostringstream os;
            os << "vp(" << rat_str(lam) << ") = " << wl.str()
               << " is unreachable by sums of retained vp's";
            v.note = os.str();
            return v;
        }
    }
    // unique-factorization search: units +-1 apart, compare prime supports
    bool has_one = false, has_minus_one = false;
    std::vector<Rat> others;
    for (const auto& r : gens) {
        if (r == 1)
            has_one = true;
        else if (r == -1)
            has_minus_one = true;
        else
            others.push_back(r);
    }
    if (lam == 1 || lam == -1) {
        // could only come from unit generators or cancelling products; the
        // empty-alpha case is decided by the units directly
        if ((lam == 1 && (has_one || has_minus_one)) || (lam == -1 && has_minus_one)) {
            v.note = "representation found among unit generators";
            return v;
        }
    }
    std::set<Int> prime_set;
    auto add_primes = [&](const Rat& x) {
        for (const auto& [q, e] : factor(abs(numerator(x)))) {
            (void)e;
            prime_set.insert(q);
        }
        for (const auto& [q, e] : factor(denominator(x))) {
            (void)e;
            prime_set.insert(q);
        }
    };
    add_primes(lam);
    for (const auto& r : others) add_primes(r);
    std::vector<Int> primes(prime_set.begin(), prime_set.end());
    const size_t s = primes.size();
    if (s > 16) {
        v.note = "prime support too large for search";
        return v;
    }
    std::vector<std::vector<long>> vg;
    std::vector<int> sg;
    for (const auto& r : others) {
        vg.push_back(exp_vector(r, primes));
        sg.push_back(r < 0 ? -1 : 1);
    }
    std::vector<long> vl = exp_vector(lam, primes);
    int sl = lam < 0 ? -1 : 1;
    const int G = static_cast<int>(others.size());
    if (G == 0) {
        // only unit generators; lam is not a unit here (or was handled above)
        v.excluded = true;
        v.note = rat_str(lam) + " is not a product of unit generators";
        return v;
    }
    // separating functional w in {-1,0,1}^s with w.v_j >= 1 for every generator:
    // then any representation uses at most w.v_lam factors in total
    std::vector<int> w(s, 0);
    bool found_w = false;
    long total = 1;
    for (size_t i = 0; i < s; ++i) total *= 3;
    for (long code = 0; code < total && !found_w; ++code) {
        long c = code;
        for (size_t i = 0; i < s; ++i) {
            w[i] = static_cast<int>(c % 3) - 1;
            c /= 3;
        }
        bool ok = true;
        for (const auto& vj : vg) {
            long dot = 0;
            for (size_t i = 0; i < s; ++i) dot += w[i] * vj[i];
            if (dot < 1) {
                ok = false;
                break;
            }
        }
        if (ok) found_w = true;
    }
    if (!found_w) {
        v.note = "no separating functional on prime exponents";
        return v;
    }
    long bound = 0;
    for (size_t i = 0; i < s; ++i) bound += w[i] * vl[i];
    if (bound < 1) {
        v.excluded = true;
        std::ostringstream os;
        os << "exponent bound " << bound << " < 1: no product of >= 1 generators matches";
        v.note = os.str();
        return v;
    }
    bool complete = bound <= budget;
    long search_to = std::min<long>(bound, budget);
    bool found_rep = false;
    std::vector<long> rep;
    std::vector<long> alpha(G, 0);
    enumerate_exponents(G, search_to, alpha, 0, 0, [&](const std::vector<long>& a) {
        if (found_rep) return;
        std::vector<long> sum(s, 0);
        int sign = 1;
        for (int j = 0; j < G; ++j) {
            for (size_t i = 0; i < s; ++i) sum[i] += a[j] * vg[j][i];
            if (sg[j] == -1 && a[j] % 2 == 1) sign = -sign;
        }
        if (sum != vl) return;
        if (sign != sl && !has_minus_one) return;
        found_rep = true;
        rep = a;
    });
    if (found_rep) {
        std::ostringstream os;
        os << "representation found: exponents";
        for (long a : rep) os << " " << a;
        v.note = os.str();
        return v;
    }
    if (!complete) {
        std::ostringstream os;
        os << "search budget " << budget << " below exponent bound " << bound;
        v.note = os.str();
        return v;
    }
    v.excluded = true;
    std::ostringstream os;
    os << "exhaustive search to total exponent " << bound << " found no representation";
    v.note = os.str();
    return v;
}

}  // namespace

SemigroupEvidence semigroup_excluded(const std::vector<Rat>& lambdas_sep,
                                     const std::vector<Rat>& lambdas_ret, long p, int budget) {
    if (budget < 1) throw Error(Errc::DimensionMismatch, "semigroup_excluded: budget must be >= 1");
    if (lambdas_sep.empty() || lambdas_ret.empty())
        throw Error(Errc::DimensionMismatch, "semigroup_excluded: empty multiplier list");
    if (!is_prime(p)) throw Error(Errc::NonPrime, "semigroup_excluded: p must be prime");
    SemigroupEvidence out;
    bool all_valuation = true;
    std::ostringstream ev;
    for (size_t i = 0; i < lambdas_sep.size(); ++i) {
        SepVerdict v = check_one(lambdas_sep[i], lambdas_ret, p, budget);
        if (i) ev << "; ";
        ev << "lambda_" << (i + 1) << ": " << v.note;
        if (!v.excluded) {
            out.status = SemigroupStatus::Unknown;
            out.evidence = ev.str();
            return out;
        }
        if (!v.by_valuation) all_valuation = false;
    }
    out.status = all_valuation ? SemigroupStatus::CertifiedByValuation
                               : SemigroupStatus::CertifiedBySearch;
    out.evidence = ev.str();
    return out;
}

namespace {

// Monomials of total degree e supported on variables r+1..n (0-based r..n-1).
void retained_monomials(int n, int r, int e, ExpVec& cur, int pos, int left,
                        std::vector<ExpVec>& out) {
    if (pos == n) {
        if (left == 0) out.push_back(cur);
        return;
    }
    if (pos < r) {
        cur[pos] = 0;
        retained_monomials(n, r, e, cur, pos + 1, left, out);
        return;
    }
    for (int a = 0; a <= left; ++a) {
        cur[pos] = a;
        retained_monomials(n, r, e, cur, pos + 1, left - a, out);
    }
    cur[pos] = 0;
}

// Residual of the invariance identity: phi_i on the graph {x_i = f_i} minus
// f_i of the retained coordinates of phi on the graph. Vanishes iff the graph
// is invariant (up to trunc).
std::vector<Series> residual(const Germ& g, const std::vector<Series>& f, int r) {
    int n = g.dim();
    int D = g.trunc();
    std::vector<Series> iota;
    for (int i = 0; i < n; ++i)
        iota.push_back(i < r ? f[i] : Series::variable(n, D, i + 1));
    std::vector<Series> inner(n, Series::zero(n, D));
    for (int j = r; j < n; ++j) inner[j] = g.phi(j + 1).compose(iota);
    std::vector<Series> out;
    for (int i = 0; i < r; ++i) out.push_back(g.phi(i + 1).compose(iota) - f[i].compose(inner));
    return out;
}

}  // namespace

std::optional<Val> radius_bound_for_multipliers(const std::vector<Rat>& lambdas_sep,
                                                const std::vector<Rat>& lambdas_ret, long p) {
    bool sep_all_nonunit = true;   // vp != 0 for every separated multiplier
    bool sep_all_rep = true;       // vp < 0
    bool ret_all_indiff = true;    // vp == 0
    bool ret_all_nonrep = true;    // vp >= 0
    for (const auto& lam : lambdas_sep) {
        Val w = lam == 0 ? Val::inf() : vp(lam, p);
        if (w == Val::of(0L)) sep_all_nonunit = false;
        if (!(w < Val::of(0L))) sep_all_rep = false;
    }
    for (const auto& lam : lambdas_ret) {
        Val w = lam == 0 ? Val::inf() : vp(lam, p);
        if (!(w == Val::of(0L))) ret_all_indiff = false;
        if (w < Val::of(0L)) ret_all_nonrep = false;
    }
    // |lambda_i - product| = max(|lambda_i|, 1) when the retained multipliers
    // are units: c = 1 certifies the whole open unit polydisk.
    if (sep_all_nonunit && ret_all_indiff) return Val::of(0L);
    // repelling | nonrepelling: c = min |lambda_i| > 1 is weaker than the unit
    // polydisk, so the threshold clamps to 0.
    if (sep_all_rep && ret_all_nonrep) return Val::of(0L);
    return std::nullopt;
}

std::optional<Val> radius_bound(const Germ& g, const SplitSpec& split) {
    check_split(g, split);
    std::vector<Rat> lsep, lret;
    for (int i = 1; i <= g.dim(); ++i)
        (i <= split.r ? lsep : lret).push_back(g.jordan().multiplier(i));
    return radius_bound_for_multipliers(lsep, lret, g.p());
}

SeparationResult solve_separation(const Germ& g, const SplitSpec& split, int budget) {
    check_split(g, split);
    const int n = g.dim();
    const int r = split.r;
    const int D = g.trunc();
    std::vector<Rat> lsep, lret;
    {
        int pos = 0;
        for (const auto& b : g.jordan().blocks) {
            (pos < r ? lsep : lret).push_back(b.lambda);
            pos += b.size;
        }
    }
    SemigroupEvidence ev = semigroup_excluded(lsep, lret, g.p(), budget);
    if (ev.status == SemigroupStatus::Unknown)
        throw Error(Errc::PreconditionUnknown, "semigroup condition not certified: " + ev.evidence);

    std::vector<Series> f(r, Series::zero(n, D));
    for (int e = 2; e <= D; ++e) {
        std::vector<ExpVec> mons;
        ExpVec cur(n, 0);
        retained_monomials(n, r, e, cur, 0, e, mons);
        // unknown u = (i, alpha); the degree-e residual part is affine in them
        std::vector<std::pair<int, ExpVec>> unknowns;
        for (int i = 0; i < r; ++i)
            for (const auto& a : mons) unknowns.emplace_back(i, a);
        auto degree_part = [&]() {
            std::vector<Series> res = residual(g, f, r);
            Vec vals;
            for (int i = 0; i < r; ++i)
                for (const auto& a : mons) vals.push_back(res[i].coeff(a));
            return vals;
        };
        Vec b = degree_part();
        Mat A(unknowns.size(), Vec(unknowns.size()));
        for (size_t u = 0; u < unknowns.size(); ++u) {
            auto [i, a] = unknowns[u];
            f[i].set_coeff(a, 1);
            Vec col = degree_part();
            f[i].set_coeff(a, 0);
            for (size_t row = 0; row < col.size(); ++row) A[row][u] = col[row] - b[row];
        }
        Vec rhs(b.size());
        for (size_t row = 0; row < b.size(); ++row) rhs[row] = -b[row];
        auto sol = solve_linear(A, rhs);
        if (!sol)
            throw Error(Errc::SingularSystem,
                        "degree-" + std::to_string(e) + " system is singular");
        for (size_t u = 0; u < unknowns.size(); ++u) {
            auto [i, a] = unknowns[u];
            f[i].set_coeff(a, (*sol)[u]);
        }
    }

    // conjugate: sigma x_i = x_i + f_i; sigma^{-1} y_i = y_i - f_i(y_ret)
    std::vector<Series> sigma;
    for (int i = 0; i < n; ++i) {
        Series s = Series::variable(n, D, i + 1);
        if (i < r) s = s + f[i];
        sigma.push_back(s);
    }
    std::vector<Series> psi;
    for (int i = 0; i < n; ++i) psi.push_back(g.phi(i + 1).compose(sigma));
    std::vector<Series> conj = psi;
    for (int i = 0; i < r; ++i) conj[i] = psi[i] - f[i].compose(psi);

    SeparationResult out{f, germ_from_map(conj, g.p()), radius_bound(g, split), ev.evidence};
    return out;
}

InvarianceCheck verify_invariance(const Germ& g, const std::vector<Series>& f,
                                  const SplitSpec& split) {
    check_split(g, split);
    const int n = g.dim();
    const int r = split.r;
    if (static_cast<int>(f.size()) != r)
        throw Error(Errc::DimensionMismatch, "verify_invariance: need r series");
    for (const auto& s : f) {
        if (s.dim() != n || s.trunc() != g.trunc())
            throw Error(Errc::DimensionMismatch, "verify_invariance: f shape mismatch");
        for (const auto& [e, c] : s.terms()) {
            (void)c;
            for (int j = 0; j < r; ++j)
                if (e[j] > 0)
                    throw Error(Errc::DimensionMismatch,
                                "verify_invariance: f must use retained variables only");
        }
    }
    std::vector<Series> res = residual(g, f, r);
    int fail = -1;
    for (const auto& s : res)
        for (const auto& [e, c] : s.terms()) {
            (void)c;
            int d = total_degree(e);
            if (fail == -1 || d < fail) fail = d;
        }
    if (fail == -1) return {true, g.trunc()};
    return {false, fail};
}

}  // namespace padld
