#pragma once

#include <gmpxx.h>

#include <string>

#include "qpt/error.hpp"

namespace qpt {

// Exact arithmetic mode uses GMP rationals throughout; floating mode is
// plain double. Generic code is templated on the scalar type and uses the
// helpers below instead of implicit conversions.
using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den) {
    if (den == 0) throw domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }
inline double to_double(const BigInt& z) { return z.get_d(); }

template <class T>
T scalar_from_int(long long v);

template <>
inline double scalar_from_int<double>(long long v) { return static_cast<double>(v); }

template <>
inline Rational scalar_from_int<Rational>(long long v) {
    return Rational(static_cast<long>(v));
}

template <class T>
T scalar_from_bigint(const BigInt& z);

template <>
inline double scalar_from_bigint<double>(const BigInt& z) { return z.get_d(); }

template <>
inline Rational scalar_from_bigint<Rational>(const BigInt& z) { return Rational(z); }

template <class T>
T pow_int(const T& base, int e) {
    T acc = scalar_from_int<T>(1);
    T b = base;
    int k = e;
    while (k > 0) {
        if (k & 1) acc = T(acc * b);
        b = T(b * b);
        k >>= 1;
    }
    return acc;
}

inline BigInt factorial(int n) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return BigInt(0);
    BigInt b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace qpt
