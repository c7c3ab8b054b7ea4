#include "padld/polytope.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace padld {

namespace {

struct PointGradedLex {
    bool operator()(const Vec& a, const Vec& b) const {
        Rat sa = 0, sb = 0;
        for (const auto& x : a) sa += x;
        for (const auto& x : b) sb += x;
        if (sa != sb) return sa < sb;
        return a < b;
    }
};

// Phase-1 simplex over Q: is {lambda >= 0, sum lambda = 1, P lambda = v}
// feasible? Bland's rule, exact arithmetic.
bool lp_feasible(const std::vector<Vec>& cols, const Vec& rhs) {
    const size_t m = rhs.size();
    const size_t nv = cols.size();
    // tableau rows: m constraints; columns: nv structural + m artificial + rhs
    std::vector<Vec> t(m, Vec(nv + m + 1, 0));
    for (size_t r = 0; r < m; ++r) {
        Rat sign = rhs[r] < 0 ? Rat(-1) : Rat(1);
        for (size_t c = 0; c < nv; ++c) t[r][c] = sign * cols[c][r];
        t[r][nv + r] = 1;
        t[r][nv + m] = sign * rhs[r];
    }
    std::vector<size_t> basis(m);
    for (size_t r = 0; r < m; ++r) basis[r] = nv + r;
    // objective: minimize sum of artificials; reduced-cost row z_j - c_j with
    // c_j = 1 on artificial columns (which start basic, so their entry is 0)
    Vec z(nv + m + 1, 0);
    for (size_t r = 0; r < m; ++r)
        for (size_t c = 0; c <= nv + m; ++c) z[c] += t[r][c];
    for (size_t r = 0; r < m; ++r) z[nv + r] -= 1;
    while (true) {
        size_t enter = nv + m;
        for (size_t c = 0; c < nv + m; ++c)
            if (z[c] > 0) {
                enter = c;
                break;  // Bland: smallest index
            }
        if (enter == nv + m) break;
        size_t leave = m;
        Rat best = 0;
        for (size_t r = 0; r < m; ++r) {
            if (t[r][enter] <= 0) continue;
            Rat ratio = t[r][nv + m] / t[r][enter];
            if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
                leave = r;
                best = ratio;
            }
        }
        if (leave == m) break;  // unbounded in phase 1 cannot happen; be safe
        Rat piv = t[leave][enter];
        for (size_t c = 0; c <= nv + m; ++c) t[leave][c] /= piv;
        for (size_t r = 0; r < m; ++r) {
            if (r == leave || t[r][enter] == 0) continue;
            Rat f = t[r][enter];
            for (size_t c = 0; c <= nv + m; ++c) t[r][c] -= f * t[leave][c];
        }
        Rat f = z[enter];
        for (size_t c = 0; c <= nv + m; ++c) z[c] -= f * t[leave][c];
        basis[leave] = enter;
    }
    return z[nv + m] == 0;
}

Rat dot(const Vec& a, const Vec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Normal of the hyperplane through d affinely independent points in R^d
// (generalized cross product of the difference vectors); empty if dependent.
Vec hyperplane_normal(const std::vector<Vec>& pts) {
    const size_t d = pts[0].size();
    // (d-1) x d difference matrix
    Mat diff(d - 1, Vec(d));
    for (size_t i = 0; i + 1 < d; ++i)
        for (size_t j = 0; j < d; ++j) diff[i][j] = pts[i + 1][j] - pts[0][j];
    Vec n(d, 0);
    bool nonzero = false;
    for (size_t j = 0; j < d; ++j) {
        Mat minor(d - 1, Vec(d - 1));
        for (size_t r = 0; r + 1 < d; ++r) {
            size_t cc = 0;
            for (size_t c = 0; c < d; ++c) {
                if (c == j) continue;
                minor[r][cc++] = diff[r][c];
            }
        }
        Rat m = det(minor);
        if (j % 2 == 1) m = -m;
        n[j] = m;
        if (m != 0) nonzero = true;
    }
    if (!nonzero) return {};
    return n;
}

size_t affine_rank(const std::vector<Vec>& pts) {
    if (pts.size() <= 1) return 0;
    Mat diffs;
    for (size_t i = 1; i < pts.size(); ++i) {
        Vec d(pts[0].size());
        for (size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
        diffs.push_back(d);
    }
    return rank(diffs);
}

// Triangulation of the hull of a full-dimensional point set in R^d.
// Returns index lists (d+1 points each).
std::vector<std::vector<size_t>> triangulate(const std::vector<Vec>& pts, size_t d);

// Facets of a full-dimensional point set: each is the index list of all
// points on a bounding hyperplane.
std::vector<std::pair<Vec, std::vector<size_t>>> facets_of(const std::vector<Vec>& pts, size_t d) {
    const size_t V = pts.size();
    std::set<std::vector<size_t>> seen;
    std::vector<std::pair<Vec, std::vector<size_t>>> out;
    std::vector<size_t> idx(d);
    // iterate over all d-subsets
    std::vector<size_t> c(d);
    for (size_t i = 0; i < d; ++i) c[i] = i;
    while (true) {
        std::vector<Vec> sel;
        for (size_t i : c) sel.push_back(pts[i]);
        Vec n = hyperplane_normal(sel);
        if (!n.empty()) {
            Rat off = dot(n, sel[0]);
            bool lo = true, hi = true;
            for (const auto& q : pts) {
                Rat s = dot(n, q);
                if (s < off) hi = false;
                if (s > off) lo = false;
                if (!lo && !hi) break;
            }
            if (lo || hi) {
                if (hi) {
                    for (auto& x : n) x = -x;
                    off = -off;
                }
                std::vector<size_t> members;
                for (size_t q = 0; q < V; ++q)
                    if (dot(n, pts[q]) == off) members.push_back(q);
                if (seen.insert(members).second) out.emplace_back(n, members);
            }
        }
        // next combination
        size_t i = d;
        while (i > 0) {
            --i;
            if (c[i] + (d - i) < V) {
                ++c[i];
                for (size_t j = i + 1; j < d; ++j) c[j] = c[j - 1] + 1;
                break;
            }
            if (i == 0) return out;
        }
        if (d == 0) break;
    }
    return out;
}

std::vector<std::vector<size_t>> triangulate(const std::vector<Vec>& pts, size_t d) {
    if (d == 1) {
        size_t lo = 0, hi = 0;
        for (size_t i = 1; i < pts.size(); ++i) {
            if (pts[i][0] < pts[lo][0]) lo = i;
            if (pts[i][0] > pts[hi][0]) hi = i;
        }
        return {{lo, hi}};
    }
    auto facets = facets_of(pts, d);
    const size_t base = 0;
    std::vector<std::vector<size_t>> out;
    for (const auto& [n, members] : facets) {
        bool has_base = false;
        for (size_t m : members)
            if (m == base) has_base = true;
        if (has_base) continue;
        // project the facet along an axis its normal does not annihilate
        size_t drop = 0;
        while (n[drop] == 0) ++drop;
        std::vector<Vec> proj;
        for (size_t m : members) {
            Vec q;
            for (size_t j = 0; j < d; ++j)
                if (j != drop) q.push_back(pts[m][j]);
            proj.push_back(q);
        }
        for (const auto& sub : triangulate(proj, d - 1)) {
            std::vector<size_t> simplex{base};
            for (size_t local : sub) simplex.push_back(members[local]);
            out.push_back(simplex);
        }
    }
    return out;
}

}  // namespace

bool in_conv_hull(const Vec& v, const std::vector<Vec>& points) {
    if (points.empty()) return false;
    const size_t d = v.size();
    std::vector<Vec> cols;
    for (const auto& p : points) {
        Vec c(p);
        c.push_back(1);
        cols.push_back(c);
    }
    Vec rhs(v);
    rhs.push_back(1);
    (void)d;
    return lp_feasible(cols, rhs);
}

Polytope make_polytope(int dim, std::vector<Vec> points) {
    if (dim < 1) throw Error(Errc::UnsupportedDimension, "polytope dim must be >= 1");
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != dim)
            throw Error(Errc::DimensionMismatch, "polytope point has wrong dimension");
    if (points.empty()) throw Error(Errc::DimensionMismatch, "polytope needs at least one point");
    std::sort(points.begin(), points.end(), PointGradedLex{});
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<Vec> extreme;
    for (size_t i = 0; i < points.size(); ++i) {
        std::vector<Vec> others;
        for (size_t j = 0; j < points.size(); ++j)
            if (j != i) others.push_back(points[j]);
        if (others.empty() || !in_conv_hull(points[i], others)) extreme.push_back(points[i]);
    }
    return Polytope{dim, extreme};
}

Polytope minkowski_sum(const Polytope& a, const Polytope& b) {
    if (a.dim != b.dim) throw Error(Errc::DimensionMismatch, "minkowski_sum: dimension mismatch");
    std::vector<Vec> sums;
    for (const auto& u : a.verts)
        for (const auto& v : b.verts) {
            Vec s(a.dim);
            for (int i = 0; i < a.dim; ++i) s[i] = u[i] + v[i];
            sums.push_back(s);
        }
    return make_polytope(a.dim, sums);
}

Rat volume(const Polytope& p) {
    if (p.dim > 4) throw Error(Errc::UnsupportedDimension, "volume supports dim <= 4");
    const size_t d = p.dim;
    if (affine_rank(p.verts) < d) return 0;
    auto simplices = triangulate(p.verts, d);
    Rat vol = 0;
    Int fact = 1;
    for (size_t i = 2; i <= d; ++i) fact *= i;
    for (const auto& s : simplices) {
        Mat m(d, Vec(d));
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) m[i][j] = p.verts[s[i + 1]][j] - p.verts[s[0]][j];
        Rat dv = det(m);
        if (dv < 0) dv = -dv;
        vol += dv;
    }
    return vol / Rat(fact);
}

Rat mixed_volume(const std::vector<Polytope>& ps) {
    if (ps.empty()) throw Error(Errc::DimensionMismatch, "mixed_volume: empty list");
    const int n = static_cast<int>(ps.size());
    for (const auto& p : ps)
        if (p.dim != n)
            throw Error(Errc::DimensionMismatch,
                        "mixed_volume: need n polytopes in R^n");
    if (n > 4) throw Error(Errc::UnsupportedDimension, "mixed_volume supports dim <= 4");
    Rat mv = 0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        Polytope sum{n, {Vec(n, 0)}};
        int count = 0;
        bool first = true;
        for (int i = 0; i < n; ++i) {
            if (!(mask & (1u << i))) continue;
            ++count;
            sum = first ? ps[i] : minkowski_sum(sum, ps[i]);
            first = false;
        }
        Rat v = volume(sum);
        if ((n - count) % 2 == 1) v = -v;
        mv += v;
    }
    return mv;
}

bool volbound_check(const std::vector<Polytope>& ps, const Polytope& p) {
    const int n = static_cast<int>(ps.size());
    for (const auto& q : ps)
        for (const auto& v : q.verts)
            if (!in_conv_hull(v, p.verts))
                throw Error(Errc::ContainmentViolation, "a polytope is not contained in P");
    Rat mv = mixed_volume(ps);
    Rat bound = volume(p);
    for (int i = 0; i < n + 1; ++i) bound *= n;
    return mv <= bound;
}

NewtonPolygon newton_polygon(const Series& g, long p) {
    if (g.dim() != 1) throw Error(Errc::DimensionMismatch, "newton_polygon: series must be 1-variable");
    if (g.is_zero()) throw Error(Errc::ZeroSeries, "newton_polygon: zero series");
    std::vector<std::pair<long, Rat>> pts;  // (degree, valuation)
    for (const auto& [e, c] : g.terms()) pts.emplace_back(e[0], vp(c, p).value);
    std::sort(pts.begin(), pts.end());
    // lower convex hull, left to right
    std::vector<std::pair<long, Rat>> hull;
    for (const auto& q : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // keep b only if it lies strictly below segment a-q
            if ((b.second - a.second) * (q.first - a.first) <
                (q.second - a.second) * (b.first - a.first))
                break;
            hull.pop_back();
        }
        hull.push_back(q);
    }
    NewtonPolygon np;
    long e = pts.front().first;
    if (e > 0) np.segments.push_back({true, 0, Rat(e)});
    for (size_t i = 1; i < hull.size(); ++i) {
        Rat slope = (hull[i].second - hull[i - 1].second) / Rat(hull[i].first - hull[i - 1].first);
        np.segments.push_back({false, slope, Rat(hull[i].first - hull[i - 1].first)});
    }
    return np;
}

long count_roots_by_valuation(const Series& g, const Val& m, long p, bool exact_tail) {
    if (g.is_zero()) throw Error(Errc::ZeroSeries, "count_roots: zero series");
    NewtonPolygon np = newton_polygon(g, p);
    if (!exact_tail) {
        // Hidden terms above trunc with vp >= 0 coefficients have value
        // >= (D+1) m at the polyvaluation m; the polygon is stable there
        // only when the minimum is strictly smaller.
        for (const auto& [e, c] : g.terms())
            if (vp(c, p) < Val::of(0L))
                throw Error(Errc::UncertifiedRegion,
                            "count_roots: certification needs p-integral coefficients");
        if (m.infinite) {
            // lowest support index <= trunc is unaffected by tail terms
        } else {
            if (m.value <= 0)
                throw Error(Errc::UncertifiedRegion,
                            "count_roots: only valuations > 0 are certifiable at finite trunc");
            Val minval = Val::inf();
            for (const auto& [e, c] : g.terms())
                minval = val_min(minval, Val::of(vp(c, p).value + Rat(e[0]) * m.value));
            Val tail = Val::of(Rat(g.trunc() + 1) * m.value);
            if (!(minval < tail))
                throw Error(Errc::UncertifiedRegion,
                            "count_roots: truncation could alter the segment");
        }
    }
    if (m.infinite) {
        for (const auto& s : np.segments)
            if (s.slope_neg_inf) return static_cast<long>(numerator(s.length));
        return 0;
    }
    for (const auto& s : np.segments)
        if (!s.slope_neg_inf && s.slope == -m.value) return static_cast<long>(numerator(s.length));
    return 0;
}

Val dominant_value(const Series& g, const std::vector<Val>& m, long p) {
    if (static_cast<int>(m.size()) != g.dim())
        throw Error(Errc::DimensionMismatch, "dominant_value: polyvaluation has wrong length");
    Val best = Val::inf();
    for (const auto& [e, c] : g.terms()) {
        Val v = vp(c, p);
        for (int j = 0; j < g.dim(); ++j) {
            if (e[j] == 0) continue;
            v = v + m[j].scaled(Rat(e[j]));
        }
        best = val_min(best, v);
    }
    return best;
}

DominantFace dominant_face(const Series& g, const std::vector<Val>& m, long p) {
    if (g.is_zero()) throw Error(Errc::ZeroSeries, "dominant_face: zero series");
    if (static_cast<int>(m.size()) != g.dim())
        throw Error(Errc::DimensionMismatch, "dominant_face: polyvaluation has wrong length");
    Val minm = Val::inf();
    for (const auto& v : m) {
        if (v.infinite || v.value <= 0)
            throw Error(Errc::UncertifiedRegion, "dominant_face: polyvaluations must be finite and > 0");
        minm = val_min(minm, v);
    }
    Val best = dominant_value(g, m, p);
    std::vector<Vec> minimizers;
    for (const auto& [e, c] : g.terms()) {
        Val v = vp(c, p);
        for (int j = 0; j < g.dim(); ++j) v = v + m[j].scaled(Rat(e[j]));
        if (v == best) {
            Vec q;
            for (int x : e) q.push_back(Rat(x));
            minimizers.push_back(q);
        }
    }
    DominantFace df{make_polytope(g.dim(), minimizers), best,
                    best < Val::of(Rat(g.trunc() + 1) * minm.value)};
    return df;
}

RootCount rabinoff_count(const std::vector<Series>& gs, const std::vector<Val>& m, long p,
                         bool exact_tail) {
    if (gs.empty()) throw Error(Errc::DimensionMismatch, "rabinoff_count: empty system");
    const int n = static_cast<int>(gs.size());
    for (const auto& g : gs)
        if (g.dim() != n)
            throw Error(Errc::DimensionMismatch, "rabinoff_count: need n series in n variables");
    if (n > 4) throw Error(Errc::UnsupportedDimension, "rabinoff_count supports dim <= 4");
    std::vector<Polytope> faces;
    for (const auto& g : gs) {
        DominantFace df = dominant_face(g, m, p);
        if (!df.truncation_safe && !exact_tail)
            throw Error(Errc::UncertifiedRegion, "rabinoff_count: a dominant face is not certified");
        faces.push_back(df.face);
    }
    RootCount rc;
    rc.count = mixed_volume(faces);
    rc.assumptions.push_back("proper-intersection");
    return rc;
}

Polytope parse_polytope(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<Vec> pts;
    int dim = -1;
    while (std::getline(is, line)) {
        std::string t;
        for (char c : line)
            if (!isspace(static_cast<unsigned char>(c))) t += c;
        if (t.empty() || t[0] == '#') continue;
        Vec pt;
        size_t pos = 0;
        while (pos <= t.size()) {
            size_t comma = t.find(',', pos);
            std::string f = t.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            pt.push_back(parse_rat(f));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (dim == -1) dim = static_cast<int>(pt.size());
        if (static_cast<int>(pt.size()) != dim)
            throw Error(Errc::ParseError, "polytope rows have inconsistent dimension");
        pts.push_back(pt);
    }
    if (pts.empty()) throw Error(Errc::ParseError, "empty polytope file");
    return make_polytope(dim, pts);
}

std::string print_polytope(const Polytope& p) {
    std::ostringstream os;
    for (const auto& v : p.verts) {
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) os << ",";
            os << rat_str(v[i]);
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace padld
