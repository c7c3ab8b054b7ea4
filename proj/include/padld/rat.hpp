#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <stdexcept>
#include <string>

namespace padld {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Error codes shared across modules. Each maps to one of the named error
// conditions in the module contracts.
enum class Errc {
    NonPrime,
    DivisionByZero,
    DimensionMismatch,
    NotUnit,
    NonzeroInnerConstant,
    NotFixed,
    NotJordan,
    NotIntegral,
    NotInvariant,
    TailDominates,
    SingularSystem,
    PreconditionUnknown,
    ZeroSeries,
    UncertifiedRegion,
    UnsupportedDimension,
    ContainmentViolation,
    NonIndifferentMultiplier,
    ClosedFormMismatch,
    BadIndexChoice,
    DegeneratePointwiseFixed,
    TruncationTooLow,
    TailUnbounded,
    ParseError,
    BadSplit,
    InvariantViolation,
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

const char* errc_name(Errc c);

// A p-adic valuation value: an element of Q together with the distinguished
// point +infinity (the valuation of zero).
struct Val {
    bool infinite = false;
    Rat value = 0;  // meaningless when infinite

    static Val inf() { return Val{true, 0}; }
    static Val of(const Rat& r) { return Val{false, r}; }
    static Val of(long n) { return Val{false, Rat(n)}; }

    bool operator==(const Val& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
    bool operator<(const Val& o) const {
        if (infinite) return false;
        if (o.infinite) return true;
        return value < o.value;
    }
    bool operator<=(const Val& o) const { return *this == o || *this < o; }
    bool operator>(const Val& o) const { return o < *this; }
    bool operator>=(const Val& o) const { return o <= *this; }

    Val operator+(const Val& o) const {
        if (infinite || o.infinite) return inf();
        return of(value + o.value);
    }
    // Scaling by a non-negative rational; inf stays inf.
    Val scaled(const Rat& c) const {
        if (infinite) return inf();
        return of(value * c);
    }

    std::string str() const;
};

inline Val val_min(const Val& a, const Val& b) { return a < b ? a : b; }

bool is_prime(long p);

// The exponent of p in x, extended by vp(0) = +inf. Negative exponents are
// allowed (valuation of the denominator counts with minus sign).
Val vp(const Rat& x, long p);
Val vp(const Int& x, long p);

enum class MultiplierClass {
    Zero,
    Attracting,
    IndifferentRootOfUnity,
    IndifferentIrrational,
    Repelling,
};

const char* multiplier_class_name(MultiplierClass c);

// Over Q the only roots of unity are 1 and -1, so the indifferent case
// splits on lambda in {1, -1}.
MultiplierClass classify_multiplier(const Rat& lambda, long p);

// "a/b" or "a", decimal with optional sign.
Rat parse_rat(const std::string& s);
std::string rat_str(const Rat& r);

}  // namespace padld
