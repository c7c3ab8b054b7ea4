#pragma once

#include <string>
#include <vector>

#include "padld/linalg.hpp"
#include "padld/series.hpp"

namespace padld {

// Convex polytope in Q^n stored by its extreme points in canonical
// (graded lexicographic) order.
struct Polytope {
    int dim = 0;
    std::vector<Vec> verts;

    bool operator==(const Polytope& o) const = default;
    bool is_point() const { return verts.size() == 1; }
};

// Hull of an arbitrary point list: deduplicates and keeps extreme points only.
Polytope make_polytope(int dim, std::vector<Vec> points);

// Exact membership test: v in conv(points)?
bool in_conv_hull(const Vec& v, const std::vector<Vec>& points);

Polytope minkowski_sum(const Polytope& a, const Polytope& b);

// Exact n-dimensional Lebesgue volume; 0 for lower-dimensional polytopes.
// Supported for ambient dimension <= 4.
Rat volume(const Polytope& p);

// Inclusion-exclusion over Minkowski sums of subsets.
Rat mixed_volume(const std::vector<Polytope>& ps);

// Verifies containment P_i <= P, then checks MV(P_1..P_n) <= n^{n+1} Vol(P).
bool volbound_check(const std::vector<Polytope>& ps, const Polytope& p);

struct PolygonSegment {
    bool slope_neg_inf = false;
    Rat slope = 0;   // meaningless when slope_neg_inf
    Rat length = 0;  // horizontal extent
    bool operator==(const PolygonSegment& o) const = default;
};

// Lower hull of {(i, vp(a_i))}, slopes strictly increasing; a vanishing
// constant term contributes the conventional vertical segment.
struct NewtonPolygon {
    std::vector<PolygonSegment> segments;
};

NewtonPolygon newton_polygon(const Series& g, long p);

// Number of roots of valuation m (length of the slope -m segment).
// With exact_tail=false, the segment must be certified stable against terms
// hidden above the truncation degree.
long count_roots_by_valuation(const Series& g, const Val& m, long p, bool exact_tail = false);

struct DominantFace {
    Polytope face;          // hull of the minimizing exponents
    Val min_value;          // minimized v(c_alpha) + alpha . m
    bool truncation_safe;   // min_value < (D+1) * min_j m_j
};

// Minimizing face of v(c_alpha) + alpha . m over the support of g;
// all m_j must be finite and > 0.
DominantFace dominant_face(const Series& g, const std::vector<Val>& m, long p);

// min over terms of v(c_alpha) + alpha . m, with +inf entries absorbing.
Val dominant_value(const Series& g, const std::vector<Val>& m, long p);

struct RootCount {
    Rat count;
    std::vector<std::string> assumptions;
};

// Mixed volume of the n dominant faces: the Bernstein-style count of common
// zeros at the given polyvaluation, under the (unverified) proper-intersection
// hypothesis.
RootCount rabinoff_count(const std::vector<Series>& gs, const std::vector<Val>& m, long p,
                         bool exact_tail = false);

// One vertex per line, comma-separated rationals.
Polytope parse_polytope(const std::string& text);
std::string print_polytope(const Polytope& p);

}  // namespace padld
