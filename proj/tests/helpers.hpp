#pragma once

#include <random>

#include "padld/germ.hpp"

namespace padld::testutil {

inline Rat rand_rat(std::mt19937& rng, int lo = -9, int hi = 9, int denmax = 9) {
    std::uniform_int_distribution<int> num(lo, hi), den(1, denmax);
    return Rat(num(rng), den(rng));
}

inline Series rand_series(std::mt19937& rng, int dim, int trunc, int terms, bool integer_coeffs = false) {
    Series s(dim, trunc);
    std::uniform_int_distribution<int> deg(0, trunc), coef(-5, 5);
    for (int t = 0; t < terms; ++t) {
        ExpVec e(dim, 0);
        int d = deg(rng);
        for (int j = 0; j < d; ++j) {
            std::uniform_int_distribution<int> var(0, dim - 1);
            ++e[var(rng)];
        }
        Rat c = integer_coeffs ? Rat(coef(rng)) : rand_rat(rng);
        s.set_coeff(e, s.coeff(e) + c);
    }
    return s;
}

// Zero-constant-term variant (admissible as a composition inner).
inline Series rand_inner(std::mt19937& rng, int dim, int trunc, int terms) {
    Series s = rand_series(rng, dim, trunc, terms);
    s.set_coeff(ExpVec(dim, 0), 0);
    return s;
}

// Random germ with diagonal linear part and p-integral nonlinear terms.
inline Germ rand_germ(std::mt19937& rng, long p, int dim, int trunc,
                      const std::vector<Rat>& multipliers, int terms_per_coord) {
    std::vector<Series> phi;
    std::uniform_int_distribution<int> deg(2, trunc), coef(-5, 5), var(0, dim - 1);
    for (int i = 0; i < dim; ++i) {
        Series s = Series::variable(dim, trunc, i + 1).scaled(multipliers[i]);
        for (int t = 0; t < terms_per_coord; ++t) {
            ExpVec e(dim, 0);
            int d = deg(rng);
            for (int j = 0; j < d; ++j) ++e[var(rng)];
            s.set_coeff(e, s.coeff(e) + coef(rng));
        }
        phi.push_back(s);
    }
    return germ_from_map(phi, p);
}

}  // namespace padld::testutil
