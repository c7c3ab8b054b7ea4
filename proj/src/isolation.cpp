#include "padld/isolation.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <thread>

#include "padld/polytope.hpp"

namespace padld {

namespace {

Rat rat_pow(const Rat& x, long e) {
    Rat r = 1;
    for (long i = 0; i < e; ++i) r *= x;
    return r;
}

// Largest L >= 0 with p^L <= k (i.e. floor(log_p k)).
long log_floor(long p, long k) {
    long L = 0;
    Int pw = p;
    while (pw <= k) {
        ++L;
        pw *= p;
    }
    return L;
}

Int rat_floor(const Rat& x) {
    Int n = numerator(x), d = denominator(x);
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

}  // namespace

Val v_lambda_k(const Rat& lambda, long k, long p) {
    if (k < 1) throw Error(Errc::DimensionMismatch, "v_lambda_k: k must be >= 1");
    if (lambda == 0 || !(vp(lambda, p) == Val::of(0L)))
        throw Error(Errc::NonIndifferentMultiplier, "v_lambda_k: vp(lambda) must be 0");
    return vp(rat_pow(lambda, k) - 1, p);
}

NormalizedGerm normalize_iterate(const Germ& g) {
    const long p = g.p();
    const Rat threshold = Rat(1) / Rat(p - 1);
    long N = 1;
    for (const auto& b : g.jordan().blocks) {
        const Rat& lam = b.lambda;
        if (lam == 0 || !(vp(lam, p) == Val::of(0L)))
            throw Error(Errc::NonIndifferentMultiplier,
                        "normalize_iterate: multiplier " + rat_str(lam) + " is not indifferent");
        long d = 0;
        // the admissible N form the multiples of the first d that works
        const long cap = std::max<long>(4, 2 * (p - 1));
        for (long trial = 1; trial <= cap; ++trial) {
            if (lam == 1 || lam == -1) {
                if (rat_pow(lam, trial) == 1) {
                    d = trial;
                    break;
                }
                continue;
            }
            Val v = vp(rat_pow(lam, trial) - 1, p);
            if (!v.infinite && v.value > threshold) {
                d = trial;
                break;
            }
        }
        if (d == 0)
            throw Error(Errc::InvariantViolation,
                        "normalize_iterate: no admissible iterate found for " + rat_str(lam));
        N = std::lcm(N, d);
    }
    return {N == 1 ? g : iterate(g, N), N};
}

std::vector<Rat> minimal_coefficient_trajectory(const Germ& g, const ExpVec& alpha, int i, int K) {
    const int n = g.dim();
    if (i < 1 || i > n) throw Error(Errc::BadIndexChoice, "coordinate index out of range");
    if (static_cast<int>(alpha.size()) != n)
        throw Error(Errc::DimensionMismatch, "alpha has wrong length");
    if (K < 1) throw Error(Errc::DimensionMismatch, "K must be >= 1");
    std::vector<Series> psi;
    for (int j = 1; j <= n; ++j)
        psi.push_back(g.phi(j) - Series::variable(n, g.trunc(), j));
    auto mp = min_polydegrees(psi, g.p());
    bool minimal = false;
    for (const auto& [e, v] : mp) {
        (void)v;
        if (e == alpha) minimal = true;
    }
    if (!minimal)
        throw Error(Errc::BadIndexChoice, "alpha is not a minimal polydegree of phi - id");
    Rat c = psi[i - 1].coeff(alpha);
    if (c == 0) throw Error(Errc::BadIndexChoice, "c_{i,alpha} = 0 for the chosen index");
    int blk = g.jordan().block_of(i);
    for (int j = i + 1; j <= n && g.jordan().block_of(j) == blk; ++j)
        if (psi[j - 1].coeff(alpha) != 0)
            throw Error(Errc::BadIndexChoice,
                        "a later coordinate of the same block also carries alpha");
    const Rat lam = g.jordan().multiplier(i);
    ExpVec ei(n, 0);
    ei[i - 1] = 1;
    std::vector<Rat> out;
    std::vector<Series> cur = g.phi();
    for (int k = 1; k <= K; ++k) {
        Rat closed = lam == 1 ? Rat(k) * c : c * (rat_pow(lam, k) - 1) / (lam - 1);
        Rat direct = cur[i - 1].coeff(alpha) - (alpha == ei ? Rat(1) : Rat(0));
        if (closed != direct)
            throw Error(Errc::ClosedFormMismatch,
                        "closed form and direct iteration disagree at k = " + std::to_string(k));
        out.push_back(closed);
        if (k < K) {
            std::vector<Series> next;
            for (const auto& s : cur) next.push_back(s.compose(g.phi()));
            cur = std::move(next);
        }
    }
    return out;
}

GrowthProfile growth_profile(const Germ& g, int verify_k) {
    NormalizedGerm ng = normalize_iterate(g);
    const Germ& gn = ng.germ;
    const int n = gn.dim();
    const long p = gn.p();
    std::vector<Series> psi;
    bool all_zero = true;
    for (int j = 1; j <= n; ++j) {
        psi.push_back(gn.phi(j) - Series::variable(n, gn.trunc(), j));
        if (!psi.back().is_zero()) all_zero = false;
    }
    if (all_zero)
        throw Error(Errc::DegeneratePointwiseFixed,
                    "the normalized iterate is the identity up to trunc");
    GrowthProfile out;
    out.minimal_polydegrees = min_polydegrees(psi, p);
    out.n = n;
    out.p = p;
    out.normalization_iterate = ng.power;
    for (const auto& [e, v] : out.minimal_polydegrees) {
        out.e = std::max(out.e, total_degree(e));
        if (v.infinite) throw Error(Errc::InvariantViolation, "infinite minimal valuation");
        out.t = std::max(out.t, v.value);
    }
    if (out.e < 1) throw Error(Errc::InvariantViolation, "growth_profile: e < 1");
    // verify (and if needed raise t so that) min_i vp(c_{i,alpha,k}) <= log_p k + t
    std::vector<Series> cur = gn.phi();
    for (int k = 1; k <= verify_k; ++k) {
        long L = log_floor(p, k);
        for (const auto& [alpha, v1] : out.minimal_polydegrees) {
            (void)v1;
            Val minv = Val::inf();
            for (int j = 1; j <= n; ++j) {
                ExpVec ej(n, 0);
                ej[j - 1] = 1;
                Rat cf = cur[j - 1].coeff(alpha) - (alpha == ej ? Rat(1) : Rat(0));
                minv = val_min(minv, vp(cf, p));
            }
            if (minv.infinite)
                throw Error(Errc::InvariantViolation,
                            "minimal polydegree vanished from every coordinate at k = " +
                                std::to_string(k));
            if (minv.value > Rat(L) + out.t) out.t = minv.value - Rat(L);
        }
        if (k < verify_k) {
            std::vector<Series> next;
            for (const auto& s : cur) next.push_back(s.compose(gn.phi()));
            cur = std::move(next);
        }
    }
    return out;
}

namespace {

// Largest k failing n^{n+1} (e + (L(k)+t)/m)^n / n! < k, where L(k) = u on
// (p^{u-1}, p^u]; -1 when the tail cannot be closed within the scan cap.
long tail_cutoff(const GrowthProfile& pr, long m) {
    const int n = pr.n;
    Rat C = 1;
    for (int i = 0; i < n + 1; ++i) C *= n;
    for (int i = 2; i <= n; ++i) C /= i;
    long K = 0;
    Int plo = 1;  // p^{u-1}
    for (long u = 1; u <= 64; ++u) {
        Rat lhs = C * rat_pow(Rat(pr.e) + (Rat(u) + pr.t) / Rat(m), n);
        Int phi_hi = plo * pr.p;  // p^u
        Int fail_to = rat_floor(lhs);
        if (fail_to > phi_hi) fail_to = phi_hi;
        if (fail_to > plo) K = std::max(K, static_cast<long>(fail_to));
        // stop when this range is clean and the ratio argument closes the tail:
        // lhs grows by (1 + 1/(me+u+t))^n <= 3/2 <= (p^u+1)/(p^{u-1}+1)
        if (fail_to <= plo) {
            Rat ratio = rat_pow(1 + Rat(1) / (Rat(m) * pr.e + Rat(u) + pr.t), n);
            if (ratio <= Rat(3) / 2) return K;
        }
        plo = phi_hi;
    }
    return -1;
}

unsigned long long mod_mul(unsigned long long a, unsigned long long b, unsigned long long m) {
    return static_cast<unsigned long long>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

unsigned long long mod_pow(unsigned long long b, long e, unsigned long long m) {
    unsigned long long r = 1 % m;
    while (e > 0) {
        if (e & 1) r = mod_mul(r, b, m);
        b = mod_mul(b, b, m);
        e >>= 1;
    }
    return r;
}

// Inverse of a mod m for gcd(a, m) = 1 (extended Euclid).
unsigned long long mod_inv(unsigned long long a, unsigned long long m) {
    long long t = 0, newt = 1;
    long long r = static_cast<long long>(m), newr = static_cast<long long>(a % m);
    while (newr != 0) {
        long long q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (r != 1) throw Error(Errc::DivisionByZero, "coefficient denominator not invertible");
    if (t < 0) t += static_cast<long long>(m);
    return static_cast<unsigned long long>(t);
}

unsigned long long rat_mod(const Rat& c, unsigned long long m) {
    Int num = numerator(c) % Int(m);
    if (num < 0) num += m;
    Int den = denominator(c) % Int(m);
    return mod_mul(static_cast<unsigned long long>(num),
                   mod_inv(static_cast<unsigned long long>(den), m), m);
}

int thread_count() {
    const char* env = std::getenv("PADLOCALDYN_THREADS");
    if (!env) return 1;
    int v = std::atoi(env);
    if (v == 0) {
        unsigned hw = std::thread::hardware_concurrency();
        return hw ? static_cast<int>(hw) : 1;
    }
    return std::max(1, v);
}

}  // namespace

std::vector<std::vector<unsigned long long>> oracle_periodic_points(const Germ& g, long k, int M,
                                                                    int a) {
    if (k < 1) throw Error(Errc::DimensionMismatch, "oracle: k must be >= 1");
    if (a < 1 || a > M) throw Error(Errc::DimensionMismatch, "oracle: need 1 <= a <= M");
    if (static_cast<long>(g.trunc() + 1) * a < M)
        throw Error(Errc::TailUnbounded, "oracle: need (D+1) a >= M to bound tail terms");
    const int n = g.dim();
    const long p = g.p();
    Int pm_big = 1;
    for (int i = 0; i < M; ++i) pm_big *= p;
    if (pm_big >= (Int(1) << 62))
        throw Error(Errc::UnsupportedDimension, "oracle: modulus p^M too large");
    const unsigned long long pm = static_cast<unsigned long long>(pm_big);
    unsigned long long pa = 1;
    for (int i = 0; i < a; ++i) pa *= p;
    unsigned long long q = 1;
    for (int i = 0; i < M - a; ++i) q *= p;
    // q^n enumeration size
    double size = 1;
    for (int i = 0; i < n; ++i) size *= static_cast<double>(q);
    if (size > 5e8) throw Error(Errc::UnsupportedDimension, "oracle: enumeration too large");
    const unsigned long long total = [&] {
        unsigned long long t = 1;
        for (int i = 0; i < n; ++i) t *= q;
        return t;
    }();
    // residue form of the truncated germ
    struct Term {
        ExpVec e;
        unsigned long long c;
    };
    std::vector<std::vector<Term>> tg(n);
    for (int i = 0; i < n; ++i)
        for (const auto& [e, c] : g.phi(i + 1).terms()) tg[i].push_back({e, rat_mod(c, pm)});
    auto run = [&](unsigned long long lo, unsigned long long hi,
                   std::vector<std::vector<unsigned long long>>& out) {
        std::vector<unsigned long long> z(n), w(n), next(n);
        for (unsigned long long idx = lo; idx < hi; ++idx) {
            unsigned long long rest = idx;
            for (int j = 0; j < n; ++j) {
                z[j] = mod_mul(rest % q, pa, pm);
                rest /= q;
            }
            w = z;
            for (long step = 0; step < k; ++step) {
                for (int i = 0; i < n; ++i) {
                    unsigned long long acc = 0;
                    for (const auto& t : tg[i]) {
                        unsigned long long v = t.c;
                        for (int j = 0; j < n; ++j)
                            if (t.e[j] > 0) v = mod_mul(v, mod_pow(w[j], t.e[j], pm), pm);
                        acc = (acc + v) % pm;
                    }
                    next[i] = acc;
                }
                w = next;
            }
            if (w == z) out.push_back(z);
        }
    };
    int threads = std::min<unsigned long long>(thread_count(), total ? total : 1);
    if (threads <= 1) {
        std::vector<std::vector<unsigned long long>> out;
        run(0, total, out);
        return out;
    }
    std::vector<std::vector<std::vector<unsigned long long>>> parts(threads);
    std::vector<std::thread> pool;
    unsigned long long chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        unsigned long long lo = chunk * t, hi = std::min(total, chunk * (t + 1));
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi, t] { run(lo, hi, parts[t]); });
    }
    for (auto& th : pool) th.join();
    std::vector<std::vector<unsigned long long>> out;
    for (auto& part : parts)
        for (auto& z : part) out.push_back(std::move(z));
    return out;
}

IsolationCertificate certify_isolation(const Germ& g, long max_direct_period, long k_cap,
                                       int oracle_modulus) {
    GrowthProfile pr = growth_profile(g);
    NormalizedGerm ng = normalize_iterate(g);
    const Germ& gn = ng.germ;
    const int n = gn.dim();
    const long p = gn.p();
    const int D = gn.trunc();

    long m_star = -1, K = -1;
    for (long m = 1; m <= 512; ++m) {
        long c = tail_cutoff(pr, m);
        if (c >= 0 && c <= k_cap) {
            m_star = m;
            K = c;
            break;
        }
    }
    if (m_star < 0)
        throw Error(Errc::TailUnbounded, "no threshold m closes the tail within the cutoff cap");

    IsolationCertificate cert;
    cert.m_star = m_star;
    cert.K = K;
    cert.normalization_iterate = ng.power;
    cert.profile = pr;
    {
        std::ostringstream os;
        os << n << "^" << (n + 1) << " * (" << pr.e << " + (log_" << p << " k + " << rat_str(pr.t)
           << ")/" << m_star << ")^" << n << " / " << n << "! < k for all k > " << K;
        cert.tail_argument = os.str();
    }

    const int a = static_cast<int>(m_star) + 1;
    const int M = oracle_modulus > 0
                      ? oracle_modulus
                      : static_cast<int>(std::min<long>(static_cast<long>(D + 1) * a, a + 4));
    if (M <= a) throw Error(Errc::DimensionMismatch, "oracle modulus exponent must exceed m*+1");
    cert.oracle_modulus_exp = M;

    long K_check = std::max(K, max_direct_period);
    std::vector<Series> cur = gn.phi();
    for (long k = 1; k <= K_check; ++k) {
        auto cands = oracle_periodic_points(gn, k, M, a);
        PerKEvidence ev;
        ev.k = k;
        std::vector<Series> psi;
        for (int j = 1; j <= n; ++j)
            psi.push_back(cur[j - 1] - Series::variable(n, D, j));
        for (const auto& z : cands) {
            bool zero = true;
            for (auto c : z)
                if (c != 0) zero = false;
            if (zero) continue;
            ++ev.candidates;
            // zero-shadow rule: the candidate is explained by the modulus iff
            // every residual's dominant value at its polyvaluation is >= M
            std::vector<Val> mvec;
            for (auto c : z) {
                if (c == 0) {
                    mvec.push_back(Val::inf());
                    continue;
                }
                long v = 0;
                unsigned long long x = c;
                while (x % p == 0) {
                    ++v;
                    x /= p;
                }
                mvec.push_back(Val::of(v));
            }
            bool shadow = true;
            for (int i = 0; i < n; ++i)
                if (dominant_value(psi[i], mvec, p) < Val::of(static_cast<long>(M))) shadow = false;
            if (!shadow) {
                std::ostringstream os;
                os << "period-" << k << " oracle candidate not explained by the modulus:";
                for (auto c : z) os << " " << c;
                throw Error(Errc::InvariantViolation, os.str());
            }
            ++ev.discounted;
        }
        ev.evidence = ev.candidates == 0 ? "oracle-empty" : "oracle-discounted";
        cert.per_k.push_back(ev);
        if (k < K_check) {
            std::vector<Series> next;
            for (const auto& s : cur) next.push_back(s.compose(gn.phi()));
            cur = std::move(next);
        }
    }
    cert.oracle_checked = true;
    return cert;
}

}  // namespace padld
