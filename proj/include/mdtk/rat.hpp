#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mdtk {

using Int = mpz_class;
using Rat = mpq_class;

inline bool is_zero(const Rat& a) { return sgn(a) == 0; }
inline bool is_one(const Rat& a) { return a == 1; }
inline Rat inv(const Rat& a) {
    if (is_zero(a)) throw std::domain_error("division by zero");
    return 1 / a;
}

inline Int num(const Rat& a) { return a.get_num(); }
inline Int den(const Rat& a) { return a.get_den(); }

inline Int ipow(Int b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rat rpow(const Rat& b, long e) {
    if (e == 0) return Rat(1);
    Rat r(ipow(b.get_num(), static_cast<unsigned long>(e < 0 ? -e : e)),
          ipow(b.get_den(), static_cast<unsigned long>(e < 0 ? -e : e)));
    r.canonicalize();
    return e < 0 ? inv(r) : r;
}

// "a/b" or "a"; whitespace not allowed
inline Rat parse_rat(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& a) { return a.get_str(); }
inline std::string to_string(const Int& a) { return a.get_str(); }

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// exemplar-based construction, so field types that carry a context can
// participate in generic polynomial code
inline Rat one_like(const Rat&) { return Rat(1); }
inline Rat zero_like(const Rat&) { return Rat(0); }
inline Rat from_int_like(const Rat&, long v) { return Rat(v); }

}  // namespace mdtk
