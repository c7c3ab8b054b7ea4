#include "padld/series.hpp"

#include <algorithm>
#include <sstream>

namespace padld {

Series::Series(int dim, int trunc) : dim_(dim), trunc_(trunc) {
    if (dim < 1) throw Error(Errc::DimensionMismatch, "series dim must be >= 1");
    if (trunc < 1) throw Error(Errc::DimensionMismatch, "series trunc must be >= 1");
}

Series Series::constant(int dim, int trunc, const Rat& c) {
    Series s(dim, trunc);
    if (c != 0) s.terms_[ExpVec(dim, 0)] = c;
    return s;
}

Series Series::variable(int dim, int trunc, int i) {
    if (i < 1 || i > dim) throw Error(Errc::DimensionMismatch, "variable index out of range");
    Series s(dim, trunc);
    ExpVec e(dim, 0);
    e[i - 1] = 1;
    s.terms_[e] = 1;
    return s;
}

Rat Series::coeff(const ExpVec& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? Rat(0) : it->second;
}

Rat Series::constant_term() const { return coeff(ExpVec(dim_, 0)); }

void Series::set_coeff(const ExpVec& a, const Rat& c) {
    if (static_cast<int>(a.size()) != dim_)
        throw Error(Errc::DimensionMismatch, "exponent vector has wrong length");
    for (int e : a)
        if (e < 0) throw Error(Errc::DimensionMismatch, "negative exponent");
    if (total_degree(a) > trunc_) {
        return;  // above truncation, identically discarded
    }
    if (c == 0)
        terms_.erase(a);
    else
        terms_[a] = c;
}

void Series::check_dim(const Series& o) const {
    if (dim_ != o.dim_) throw Error(Errc::DimensionMismatch, "series dimension mismatch");
}

Series Series::operator+(const Series& o) const {
    check_dim(o);
    Series out(dim_, std::min(trunc_, o.trunc_));
    for (const auto& [e, c] : terms_) out.set_coeff(e, c);
    for (const auto& [e, c] : o.terms_) out.set_coeff(e, out.coeff(e) + c);
    return out;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator-() const {
    Series out(dim_, trunc_);
    for (const auto& [e, c] : terms_) out.terms_[e] = -c;
    return out;
}

Series Series::scaled(const Rat& c) const {
    Series out(dim_, trunc_);
    if (c == 0) return out;
    for (const auto& [e, k] : terms_) out.terms_[e] = k * c;
    return out;
}

Series Series::operator*(const Series& o) const {
    check_dim(o);
    Series out(dim_, std::min(trunc_, o.trunc_));
    for (const auto& [ea, ca] : terms_) {
        int da = total_degree(ea);
        if (da > out.trunc_) continue;
        for (const auto& [eb, cb] : o.terms_) {
            if (da + total_degree(eb) > out.trunc_) continue;
            ExpVec e(dim_);
            for (int i = 0; i < dim_; ++i) e[i] = ea[i] + eb[i];
            out.set_coeff(e, out.coeff(e) + ca * cb);
        }
    }
    return out;
}

Series Series::truncated(int d) const {
    if (d > trunc_) throw Error(Errc::TruncationTooLow, "cannot raise truncation");
    Series out(dim_, d);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) <= d) out.terms_[e] = c;
    return out;
}

Series Series::with_trunc(int d) const {
    if (d < trunc_) return truncated(d);
    Series out(dim_, d);
    out.terms_ = terms_;
    return out;
}

Series Series::inverse() const {
    Rat a0 = constant_term();
    if (a0 == 0) throw Error(Errc::NotUnit, "invert_unit: zero constant term");
    // a = a0 (1 + m); 1/a = (1/a0) sum (-m)^j
    Series m = scaled(1 / a0);
    m.set_coeff(ExpVec(dim_, 0), 0);
    Series acc = Series::constant(dim_, trunc_, 1);
    Series pw = Series::constant(dim_, trunc_, 1);
    for (int j = 1; j <= trunc_; ++j) {
        pw = pw * (-m);
        if (pw.is_zero()) break;
        acc = acc + pw;
    }
    return acc.scaled(1 / a0);
}

Series Series::compose(const std::vector<Series>& inner) const {
    if (static_cast<int>(inner.size()) != dim_)
        throw Error(Errc::DimensionMismatch, "compose: need one inner series per variable");
    int rdim = inner[0].dim();
    int rtrunc = trunc_;
    for (const auto& g : inner) {
        if (g.dim() != rdim) throw Error(Errc::DimensionMismatch, "compose: inner dims differ");
        rtrunc = std::min(rtrunc, g.trunc());
        if (g.constant_term() != 0)
            throw Error(Errc::NonzeroInnerConstant, "compose: inner constant term must vanish");
    }
    // Power tables per variable, up to the largest exponent that appears.
    std::vector<int> maxexp(dim_, 0);
    for (const auto& [e, c] : terms_)
        for (int i = 0; i < dim_; ++i) maxexp[i] = std::max(maxexp[i], e[i]);
    std::vector<std::vector<Series>> pw(dim_);
    for (int i = 0; i < dim_; ++i) {
        pw[i].push_back(Series::constant(rdim, rtrunc, 1));
        for (int e = 1; e <= maxexp[i]; ++e)
            pw[i].push_back(pw[i].back() * inner[i].truncated(rtrunc));
    }
    Series out(rdim, rtrunc);
    for (const auto& [e, c] : terms_) {
        if (total_degree(e) > rtrunc) continue;  // inner const terms vanish: cannot contribute
        Series term = Series::constant(rdim, rtrunc, c);
        for (int i = 0; i < dim_; ++i)
            if (e[i] > 0) term = term * pw[i][e[i]];
        out = out + term;
    }
    return out;
}

Rat Series::eval(const std::vector<Rat>& z) const {
    if (static_cast<int>(z.size()) != dim_)
        throw Error(Errc::DimensionMismatch, "eval: point has wrong dimension");
    Rat acc = 0;
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < e[i]; ++j) t *= z[i];
        acc += t;
    }
    return acc;
}

Series Series::substitute_zero(const std::vector<int>& vars) const {
    Series out(dim_, trunc_);
    for (const auto& [e, c] : terms_) {
        bool kill = false;
        for (int v : vars)
            if (e[v - 1] > 0) {
                kill = true;
                break;
            }
        if (!kill) out.terms_[e] = c;
    }
    return out;
}

std::string Series::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            if (a < 0) {
                os << " - ";
                a = -a;
            } else {
                os << " + ";
            }
        }
        first = false;
        bool is_const = total_degree(e) == 0;
        bool wrote = false;
        if (a != 1 || is_const) {
            os << rat_str(a);
            wrote = true;
        }
        for (int i = 0; i < dim_; ++i) {
            if (e[i] == 0) continue;
            if (wrote) os << "*";
            os << "x" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
            wrote = true;
        }
    }
    return os.str();
}

namespace {

// One additive term: optional coefficient and monomial factors joined by '*'.
void parse_term(const std::string& t, int dim, Series& out, bool negate) {
    if (t.empty()) throw Error(Errc::ParseError, "empty term in series");
    Rat coeff = 1;
    ExpVec e(dim, 0);
    size_t pos = 0;
    bool any = false;
    while (pos < t.size()) {
        size_t stop = t.find('*', pos);
        std::string f = t.substr(pos, stop == std::string::npos ? std::string::npos : stop - pos);
        pos = stop == std::string::npos ? t.size() : stop + 1;
        if (f.empty()) throw Error(Errc::ParseError, "empty factor in term '" + t + "'");
        if (f[0] == 'x') {
            size_t caret = f.find('^');
            std::string idx = f.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
            if (idx.empty()) throw Error(Errc::ParseError, "bad variable in '" + t + "'");
            int i;
            try {
                i = std::stoi(idx);
            } catch (...) {
                throw Error(Errc::ParseError, "bad variable index in '" + t + "'");
            }
            if (i < 1 || i > dim)
                throw Error(Errc::ParseError, "variable x" + idx + " out of range (dim " +
                                                  std::to_string(dim) + ")");
            int exp = 1;
            if (caret != std::string::npos) {
                try {
                    exp = std::stoi(f.substr(caret + 1));
                } catch (...) {
                    throw Error(Errc::ParseError, "bad exponent in '" + t + "'");
                }
                if (exp < 0) throw Error(Errc::ParseError, "negative exponent in '" + t + "'");
            }
            e[i - 1] += exp;
        } else {
            coeff *= parse_rat(f);
        }
        any = true;
    }
    if (!any) throw Error(Errc::ParseError, "empty term");
    if (negate) coeff = -coeff;
    out.set_coeff(e, out.coeff(e) + coeff);
}

}  // namespace

Series parse_series(const std::string& text, int dim, int trunc) {
    std::string t;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    Series out(dim, trunc);
    if (t.empty() || t == "0") return out;
    size_t pos = 0;
    bool neg = false;
    if (t[0] == '+' || t[0] == '-') {
        neg = t[0] == '-';
        pos = 1;
    }
    size_t start = pos;
    for (; pos <= t.size(); ++pos) {
        if (pos == t.size() || t[pos] == '+' || t[pos] == '-') {
            // sign characters inside a factor (e.g. after '^') do not occur in
            // this grammar, so every +/- starts a new term
            parse_term(t.substr(start, pos - start), dim, out, neg);
            if (pos < t.size()) {
                neg = t[pos] == '-';
                start = pos + 1;
            }
        }
    }
    return out;
}

std::vector<std::pair<ExpVec, Val>> min_polydegrees(const std::vector<Series>& family, long p) {
    if (family.empty()) throw Error(Errc::DimensionMismatch, "min_polydegrees: empty family");
    int dim = family[0].dim();
    for (const auto& g : family)
        if (g.dim() != dim) throw Error(Errc::DimensionMismatch, "min_polydegrees: dims differ");
    std::map<ExpVec, Val, GradedLex> support;  // exponent -> min valuation
    for (const auto& g : family)
        for (const auto& [e, c] : g.terms()) {
            Val v = vp(c, p);
            auto it = support.find(e);
            if (it == support.end())
                support[e] = v;
            else
                it->second = val_min(it->second, v);
        }
    std::vector<std::pair<ExpVec, Val>> out;
    for (const auto& [e, v] : support) {
        bool minimal = true;
        for (const auto& [e2, v2] : support) {
            (void)v2;
            if (exp_lt(e2, e)) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.emplace_back(e, v);
    }
    return out;
}

}  // namespace padld
