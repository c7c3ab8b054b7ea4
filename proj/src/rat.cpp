#include "padld/rat.hpp"

#include <sstream>

namespace padld {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NonPrime: return "NonPrime";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::NotUnit: return "NotUnit";
        case Errc::NonzeroInnerConstant: return "NonzeroInnerConstant";
        case Errc::NotFixed: return "NotFixed";
        case Errc::NotJordan: return "NotJordan";
        case Errc::NotIntegral: return "NotIntegral";
        case Errc::NotInvariant: return "NotInvariant";
        case Errc::TailDominates: return "TailDominates";
        case Errc::SingularSystem: return "SingularSystem";
        case Errc::PreconditionUnknown: return "PreconditionUnknown";
        case Errc::ZeroSeries: return "ZeroSeries";
        case Errc::UncertifiedRegion: return "UncertifiedRegion";
        case Errc::UnsupportedDimension: return "UnsupportedDimension";
        case Errc::ContainmentViolation: return "ContainmentViolation";
        case Errc::NonIndifferentMultiplier: return "NonIndifferentMultiplier";
        case Errc::ClosedFormMismatch: return "ClosedFormMismatch";
        case Errc::BadIndexChoice: return "BadIndexChoice";
        case Errc::DegeneratePointwiseFixed: return "DegeneratePointwiseFixed";
        case Errc::TruncationTooLow: return "TruncationTooLow";
        case Errc::TailUnbounded: return "TailUnbounded";
        case Errc::ParseError: return "ParseError";
        case Errc::BadSplit: return "BadSplit";
        case Errc::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

std::string Val::str() const {
    if (infinite) return "inf";
    return rat_str(value);
}

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Val vp(const Int& x, long p) {
    if (!is_prime(p)) throw Error(Errc::NonPrime, "vp: p must be prime, got " + std::to_string(p));
    if (x == 0) return Val::inf();
    Int a = x;
    long e = 0;
    while (a % p == 0) {
        a /= p;
        ++e;
    }
    return Val::of(e);
}

Val vp(const Rat& x, long p) {
    if (!is_prime(p)) throw Error(Errc::NonPrime, "vp: p must be prime, got " + std::to_string(p));
    if (x == 0) return Val::inf();
    Val vn = vp(numerator(x), p);
    Val vd = vp(denominator(x), p);
    return Val::of(vn.value - vd.value);
}

const char* multiplier_class_name(MultiplierClass c) {
    switch (c) {
        case MultiplierClass::Zero: return "zero";
        case MultiplierClass::Attracting: return "attracting";
        case MultiplierClass::IndifferentRootOfUnity: return "indifferent-root-of-unity";
        case MultiplierClass::IndifferentIrrational: return "indifferent-irrational";
        case MultiplierClass::Repelling: return "repelling";
    }
    return "unknown";
}

MultiplierClass classify_multiplier(const Rat& lambda, long p) {
    if (lambda == 0) return MultiplierClass::Zero;
    Val v = vp(lambda, p);
    if (v.value > 0) return MultiplierClass::Attracting;
    if (v.value < 0) return MultiplierClass::Repelling;
    if (lambda == 1 || lambda == -1) return MultiplierClass::IndifferentRootOfUnity;
    return MultiplierClass::IndifferentIrrational;
}

Rat parse_rat(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw Error(Errc::ParseError, "empty rational literal");
    auto check = [&](const std::string& part) {
        if (part.empty()) throw Error(Errc::ParseError, "bad rational literal: " + s);
        size_t i = (part[0] == '+' || part[0] == '-') ? 1 : 0;
        if (i == part.size()) throw Error(Errc::ParseError, "bad rational literal: " + s);
        for (; i < part.size(); ++i)
            if (!isdigit(static_cast<unsigned char>(part[i])))
                throw Error(Errc::ParseError, "bad rational literal: " + s);
    };
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) {
            check(t);
            return Rat(Int(t));
        }
        std::string num = t.substr(0, slash), den = t.substr(slash + 1);
        check(num);
        check(den);
        Int d(den);
        if (d == 0) throw Error(Errc::DivisionByZero, "zero denominator in " + s);
        return Rat(Int(num), d);
    } catch (const std::runtime_error& e) {
        throw;
    } catch (const std::exception&) {
        throw Error(Errc::ParseError, "bad rational literal: " + s);
    }
}

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

}  // namespace padld
