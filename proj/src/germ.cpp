#include "padld/germ.hpp"

#include <fstream>
#include <sstream>

namespace padld {

Rat JordanSpec::multiplier(int i) const {
    int pos = 0;
    for (const auto& b : blocks) {
        if (i <= pos + b.size) return b.lambda;
        pos += b.size;
    }
    throw Error(Errc::DimensionMismatch, "multiplier index out of range");
}

int JordanSpec::block_of(int i) const {
    int pos = 0, idx = 1;
    for (const auto& b : blocks) {
        if (i <= pos + b.size) return idx;
        pos += b.size;
        ++idx;
    }
    throw Error(Errc::DimensionMismatch, "block index out of range");
}

Mat JordanSpec::matrix() const {
    int n = dim();
    Mat m(n, Vec(n, 0));
    int pos = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.size; ++i) {
            m[pos + i][pos + i] = b.lambda;
            if (i + 1 < b.size) m[pos + i][pos + i + 1] = 1;
        }
        pos += b.size;
    }
    return m;
}

namespace {

Rat rat_pow(const Rat& x, long e) {
    Rat r = 1;
    for (long i = 0; i < e; ++i) r *= x;
    return r;
}

Int binomial(long k, long j) {
    if (j < 0 || j > k) return 0;
    Int num = 1, den = 1;
    for (long i = 0; i < j; ++i) {
        num *= (k - i);
        den *= (i + 1);
    }
    return num / den;
}

}  // namespace

Mat jordan_power(const JordanSpec& spec, long k) {
    if (k < 1) throw Error(Errc::DimensionMismatch, "jordan_power: k must be >= 1");
    int n = spec.dim();
    Mat m(n, Vec(n, 0));
    int pos = 0;
    for (const auto& b : spec.blocks) {
        for (int i = 0; i < b.size; ++i)
            for (int j = 0; i + j < b.size; ++j) {
                if (j > k) continue;  // C(k,j) = 0
                m[pos + i][pos + i + j] = Rat(binomial(k, j)) * rat_pow(b.lambda, k - j);
            }
        pos += b.size;
    }
    return m;
}

Germ::Germ(long p, std::vector<Series> phi, JordanSpec jordan)
    : p_(p), phi_(std::move(phi)), jordan_(std::move(jordan)) {
    if (phi_.empty()) throw Error(Errc::DimensionMismatch, "germ needs at least one coordinate");
    if (!is_prime(p)) throw Error(Errc::NonPrime, "germ: p must be prime");
    int n = static_cast<int>(phi_.size());
    if (jordan_.dim() != n) throw Error(Errc::NotJordan, "jordan spec size != dim");
    for (const auto& s : phi_) {
        if (s.dim() != n) throw Error(Errc::DimensionMismatch, "germ coordinate dim mismatch");
        if (s.trunc() != phi_[0].trunc())
            throw Error(Errc::DimensionMismatch, "germ coordinate trunc mismatch");
    }
}

Germ Germ::truncated(int d) const {
    std::vector<Series> out;
    for (const auto& s : phi_) out.push_back(s.truncated(d));
    return Germ(p_, out, jordan_);
}

Germ germ_from_map(const std::vector<Series>& phi, long p) {
    if (phi.empty()) throw Error(Errc::DimensionMismatch, "empty map");
    int n = static_cast<int>(phi.size());
    for (const auto& s : phi)
        if (s.dim() != n) throw Error(Errc::DimensionMismatch, "map is not n series in n variables");
    for (int i = 0; i < n; ++i)
        if (phi[i].constant_term() != 0)
            throw Error(Errc::NotFixed, "phi" + std::to_string(i + 1) + " has nonzero constant term");
    for (int i = 0; i < n; ++i)
        for (const auto& [e, c] : phi[i].terms())
            if (vp(c, p) < Val::of(0L))
                throw Error(Errc::NotIntegral, "coefficient " + rat_str(c) + " in phi" +
                                                   std::to_string(i + 1) + " has negative valuation");
    // Read the linear part and validate the Jordan block pattern.
    Mat lin(n, Vec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ExpVec e(n, 0);
            e[j] = 1;
            lin[i][j] = phi[i].coeff(e);
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i || j == i + 1) continue;
            if (lin[i][j] != 0)
                throw Error(Errc::NotJordan, "linear part has an entry outside the Jordan pattern");
        }
    JordanSpec spec;
    int i = 0;
    while (i < n) {
        JordanBlock b{lin[i][i], 1};
        while (i + b.size < n && lin[i + b.size - 1][i + b.size] == 1) {
            if (lin[i + b.size][i + b.size] != b.lambda)
                throw Error(Errc::NotJordan, "superdiagonal 1 between unequal diagonal entries");
            ++b.size;
        }
        if (i + b.size <= n - 1 && lin[i + b.size - 1][i + b.size] != 0)
            throw Error(Errc::NotJordan, "superdiagonal entry must be 0 or 1");
        spec.blocks.push_back(b);
        i += b.size;
    }
    return Germ(p, phi, spec);
}

Germ iterate(const Germ& g, long k) {
    if (k < 1) throw Error(Errc::DimensionMismatch, "iterate: k must be >= 1");
    std::vector<Series> cur = g.phi();
    for (long step = 1; step < k; ++step) {
        std::vector<Series> next;
        next.reserve(cur.size());
        for (const auto& s : cur) next.push_back(s.compose(g.phi()));
        cur = std::move(next);
    }
    // Multipliers of the iterate are the k-th powers; block structure of the
    // power of a Jordan matrix is upper triangular but not strictly Jordan,
    // so the iterate germ keeps a block-spec with powered multipliers and is
    // constructed directly (its linear part is jordan_power, verified in tests).
    JordanSpec spec;
    for (const auto& b : g.jordan().blocks) spec.blocks.push_back({rat_pow(b.lambda, k), b.size});
    return Germ(g.p(), cur, spec);
}

Germ restrict(const Germ& g, const std::vector<int>& keep) {
    int n = g.dim();
    std::vector<bool> kept(n + 1, false);
    for (int i : keep) {
        if (i < 1 || i > n) throw Error(Errc::DimensionMismatch, "restrict: index out of range");
        kept[i] = true;
    }
    std::vector<int> removed;
    for (int i = 1; i <= n; ++i)
        if (!kept[i]) removed.push_back(i);
    int r = static_cast<int>(removed.size());
    for (int i = 0; i < r; ++i)
        if (removed[i] != i + 1)
            throw Error(Errc::BadSplit, "restrict: kept indices must form a suffix {r+1..n}");
    if (r == 0) return g;
    if (r == n) throw Error(Errc::DimensionMismatch, "restrict: cannot remove all coordinates");
    // Invariance of {x_1 = ... = x_r = 0}: every term of phi_i, i <= r, must
    // contain a separated variable.
    for (int i = 1; i <= r; ++i)
        for (const auto& [e, c] : g.phi(i).terms()) {
            bool hits = false;
            for (int j = 0; j < r; ++j)
                if (e[j] > 0) hits = true;
            if (!hits) {
                Series witness(n, g.trunc());
                witness.set_coeff(e, c);
                throw Error(Errc::NotInvariant, "subspace not invariant: phi" + std::to_string(i) +
                                                    " contains " + witness.str());
            }
        }
    int m = n - r;
    std::vector<Series> out;
    for (int i = r + 1; i <= n; ++i) {
        Series s(m, g.trunc());
        for (const auto& [e, c] : g.phi(i).terms()) {
            bool hits = false;
            for (int j = 0; j < r; ++j)
                if (e[j] > 0) hits = true;
            if (hits) continue;  // x_1..x_r := 0
            ExpVec e2(e.begin() + r, e.end());
            s.set_coeff(e2, c);
        }
        out.push_back(s);
    }
    return germ_from_map(out, g.p());
}

std::vector<OrbitStep> orbit_valuations(const Germ& g, const std::vector<Rat>& z, int K,
                                        bool strict) {
    int n = g.dim();
    if (static_cast<int>(z.size()) != n)
        throw Error(Errc::DimensionMismatch, "orbit point has wrong dimension");
    for (const auto& c : z)
        if (c != 0 && !(vp(c, g.p()) > Val::of(0L)))
            throw Error(Errc::TailDominates,
                        "orbit point must lie in the open unit polydisk (vp > 0)");
    std::vector<OrbitStep> out;
    std::vector<Rat> cur = z;
    for (int k = 1; k <= K; ++k) {
        // Discarded tail terms of degree > D evaluated at cur have valuation
        // >= (D+1) * min vp over coordinates that actually appear (finite vp).
        Val minv = Val::inf();
        for (const auto& c : cur)
            if (c != 0) minv = val_min(minv, vp(c, g.p()));
        Val bound = minv.scaled(Rat(g.trunc() + 1));
        std::vector<Rat> next(n);
        OrbitStep step;
        for (int i = 0; i < n; ++i) {
            next[i] = g.phi(i + 1).eval(cur);
            Val v = vp(next[i], g.p());
            bool cert = bound.infinite ? true : v < bound;
            if (strict && !cert)
                throw Error(Errc::TailDominates, "truncation bound cannot certify valuation at step " +
                                                     std::to_string(k));
            step.vals.push_back(v);
            step.certified.push_back(cert);
        }
        out.push_back(step);
        cur = std::move(next);
    }
    return out;
}

std::string print_germ(const Germ& g) {
    std::ostringstream os;
    os << "p " << g.p() << "\n";
    os << "dim " << g.dim() << "\n";
    os << "trunc " << g.trunc() << "\n";
    os << "jordan";
    for (const auto& b : g.jordan().blocks) os << " (" << rat_str(b.lambda) << "," << b.size << ")";
    os << "\n";
    for (int i = 1; i <= g.dim(); ++i) os << "phi" << i << " = " << g.phi(i).str() << "\n";
    return os.str();
}

Germ parse_germ(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    long p = -1;
    int dim = -1, trunc = -1;
    std::vector<JordanBlock> blocks;
    bool saw_jordan = false;
    std::vector<std::string> phi_lines;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string t = line;
        // trim
        while (!t.empty() && isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
        while (!t.empty() && isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
        if (t.empty() || t[0] == '#') continue;
        std::istringstream ls(t);
        std::string key;
        ls >> key;
        auto fail = [&](const std::string& msg) {
            throw Error(Errc::ParseError, "germ line " + std::to_string(lineno) + ": " + msg);
        };
        if (key == "p") {
            if (!(ls >> p)) fail("expected prime after 'p'");
        } else if (key == "dim") {
            if (!(ls >> dim)) fail("expected integer after 'dim'");
        } else if (key == "trunc") {
            if (!(ls >> trunc)) fail("expected integer after 'trunc'");
        } else if (key == "jordan") {
            saw_jordan = true;
            std::string rest;
            std::getline(ls, rest);
            size_t pos = 0;
            while (pos < rest.size()) {
                while (pos < rest.size() && (isspace(static_cast<unsigned char>(rest[pos]))))
                    ++pos;
                if (pos >= rest.size()) break;
                if (rest[pos] != '(') fail("expected '(' in jordan spec");
                size_t close = rest.find(')', pos);
                if (close == std::string::npos) fail("unterminated block in jordan spec");
                std::string body = rest.substr(pos + 1, close - pos - 1);
                size_t comma = body.rfind(',');
                if (comma == std::string::npos) fail("expected (lambda,size)");
                JordanBlock b;
                b.lambda = parse_rat(body.substr(0, comma));
                try {
                    b.size = std::stoi(body.substr(comma + 1));
                } catch (...) {
                    fail("bad block size");
                }
                if (b.size < 1) fail("block size must be >= 1");
                blocks.push_back(b);
                pos = close + 1;
            }
        } else if (key.rfind("phi", 0) == 0) {
            if (dim < 1 || trunc < 1) fail("phi lines must come after dim and trunc");
            int idx;
            try {
                idx = std::stoi(key.substr(3));
            } catch (...) {
                fail("bad phi index");
                idx = 0;
            }
            if (idx != static_cast<int>(phi_lines.size()) + 1) fail("phi lines out of order");
            auto eq = t.find('=');
            if (eq == std::string::npos) fail("expected '=' in phi line");
            phi_lines.push_back(t.substr(eq + 1));
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    if (p < 2) throw Error(Errc::ParseError, "germ file missing 'p'");
    if (dim < 1) throw Error(Errc::ParseError, "germ file missing 'dim'");
    if (trunc < 1) throw Error(Errc::ParseError, "germ file missing 'trunc'");
    if (static_cast<int>(phi_lines.size()) != dim)
        throw Error(Errc::ParseError, "expected " + std::to_string(dim) + " phi lines, got " +
                                          std::to_string(phi_lines.size()));
    std::vector<Series> phi;
    for (const auto& src : phi_lines) phi.push_back(parse_series(src, dim, trunc));
    Germ g = germ_from_map(phi, p);
    if (saw_jordan && g.jordan().blocks != blocks)
        throw Error(Errc::NotJordan, "declared jordan spec does not match the linear part");
    return g;
}

Germ load_germ_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(Errc::ParseError, "cannot open germ file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_germ(ss.str());
}

}  // namespace padld
