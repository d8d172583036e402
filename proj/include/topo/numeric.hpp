#pragma once

// Int / Rat / Real number types used across the library.
//
// Int and Rat are GMP integers and canonical fractions (through
// Boost.Multiprecision). Real is a thin value type over an MPFR float whose
// precision is carried by each value; a thread-local default precision is
// used when a Real is created from an exact quantity.

#include <boost/multiprecision/gmp.hpp>
#include <mpfr.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "topo/errors.hpp"

namespace topo {

using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultPrecision = 128;

namespace detail {
inline unsigned & thread_precision()
{
    thread_local unsigned bits = kDefaultPrecision;
    return bits;
}
} // namespace detail

/// Working precision (bits) for Reals created on this thread.
inline unsigned default_precision() { return detail::thread_precision(); }

inline void set_default_precision(unsigned bits)
{
    if (bits < MPFR_PREC_MIN || bits > 1u << 20)
        throw InvalidInput("precision out of range: " + std::to_string(bits));
    detail::thread_precision() = bits;
}

/// Sets the thread's default precision for the lifetime of the guard.
class PrecisionGuard
{
public:
    explicit PrecisionGuard(unsigned bits) : saved_(default_precision())
    {
        set_default_precision(bits);
    }
    ~PrecisionGuard() { detail::thread_precision() = saved_; }
    PrecisionGuard(PrecisionGuard const &) = delete;
    PrecisionGuard & operator=(PrecisionGuard const &) = delete;

private:
    unsigned saved_;
};

inline Rat make_rat(Int const & num, Int const & den)
{
    if (den == 0)
        throw DivisionByZero("zero denominator");
    return Rat(num, den);
}

inline Rat to_rat(Int const & v) { return Rat(v); }
inline Rat to_rat(Rat const & v) { return v; }

inline double to_double(Int const & v) { return mpz_get_d(v.backend().data()); }
inline double to_double(Rat const & v) { return mpq_get_d(v.backend().data()); }

inline Int isqrt(Int const & v)
{
    if (v < 0)
        throw DomainError("isqrt of negative integer");
    return boost::multiprecision::sqrt(v);
}

inline bool is_square(Int const & v)
{
    if (v < 0)
        return false;
    Int r = isqrt(v);
    return r * r == v;
}

inline int sign(Int const & v) { return v.sign(); }
inline int sign(Rat const & v) { return v.sign(); }

class Real
{
public:
    Real() : Real(0L) {}

    Real(int v) : Real(static_cast<long>(v)) {}

    Real(long v, unsigned prec = default_precision())
    {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, v, MPFR_RNDN);
    }

    Real(double v, unsigned prec = default_precision())
    {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, v, MPFR_RNDN);
    }

    Real(long double v, unsigned prec = default_precision())
    {
        mpfr_init2(v_, prec);
        mpfr_set_ld(v_, v, MPFR_RNDN);
    }

    Real(Int const & v, unsigned prec = default_precision())
    {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, v.backend().data(), MPFR_RNDN);
    }

    Real(Rat const & v, unsigned prec = default_precision())
    {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, v.backend().data(), MPFR_RNDN);
    }

    Real(Real const & o)
    {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }

    Real(Real && o) noexcept
    {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }

    Real & operator=(Real const & o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    Real & operator=(Real && o) noexcept
    {
        mpfr_swap(v_, o.v_);
        return *this;
    }

    ~Real() { mpfr_clear(v_); }

    static Real from_string(std::string_view text, unsigned prec = default_precision())
    {
        Real r(0L, prec);
        std::string s(text);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw InvalidInput("not a decimal number: " + s);
        return r;
    }

    static Real pi(unsigned prec = default_precision())
    {
        Real r(0L, prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    static Real euler_gamma(unsigned prec = default_precision())
    {
        Real r(0L, prec);
        mpfr_const_euler(r.v_, MPFR_RNDN);
        return r;
    }

    static Real ln2(unsigned prec = default_precision())
    {
        Real r(0L, prec);
        mpfr_const_log2(r.v_, MPFR_RNDN);
        return r;
    }

    /// 2^e at the given precision.
    static Real exp2i(long e, unsigned prec = default_precision())
    {
        Real r(1L, prec);
        mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }

    unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }

    /// Copy rounded to a different precision.
    Real with_precision(unsigned prec) const
    {
        Real r(0L, prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    /// Decimal rendering with `digits` significant digits (0: all the
    /// digits the precision supports).
    std::string to_string(int digits = 0) const
    {
        if (digits <= 0)
            digits = static_cast<int>(std::floor(precision() * 0.30102999566398120)) ;
        if (digits < 1)
            digits = 1;
        char * buf = nullptr;
        mpfr_asprintf(&buf, "%.*Rg", digits, v_);
        std::string out(buf);
        mpfr_free_str(buf);
        return out;
    }

    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    Real operator-() const
    {
        Real r(*this);
        mpfr_neg(r.v_, r.v_, MPFR_RNDN);
        return r;
    }

    Real & operator+=(Real const & o) { return binary_inplace(o, mpfr_add); }
    Real & operator-=(Real const & o) { return binary_inplace(o, mpfr_sub); }
    Real & operator*=(Real const & o) { return binary_inplace(o, mpfr_mul); }
    Real & operator/=(Real const & o) { return binary_inplace(o, mpfr_div); }

    friend Real operator+(Real a, Real const & b) { return a += b; }
    friend Real operator-(Real a, Real const & b) { return a -= b; }
    friend Real operator*(Real a, Real const & b) { return a *= b; }
    friend Real operator/(Real a, Real const & b) { return a /= b; }

    friend bool operator==(Real const & a, Real const & b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator<(Real const & a, Real const & b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(Real const & a, Real const & b) { return b < a; }
    friend bool operator<=(Real const & a, Real const & b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(Real const & a, Real const & b) { return b <= a; }

    template <class F>
    friend Real apply1(Real const & x, F f);

private:
    using Binary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

    Real & binary_inplace(Real const & o, Binary op)
    {
        if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_))
            mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
        op(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

    mpfr_t v_;
};

inline std::ostream & operator<<(std::ostream & os, Real const & x) { return os << x.to_string(20); }

template <class F>
Real apply1(Real const & x, F f)
{
    Real r(0L, x.precision());
    f(r.v_, x.v_, MPFR_RNDN);
    return r;
}

inline Real sqrt(Real const & x)
{
    if (x.sign() < 0)
        throw DomainError("sqrt of negative value");
    return apply1(x, mpfr_sqrt);
}
inline Real abs(Real const & x) { return apply1(x, mpfr_abs); }
inline Real exp(Real const & x) { return apply1(x, mpfr_exp); }
inline Real sin(Real const & x) { return apply1(x, mpfr_sin); }
inline Real cos(Real const & x) { return apply1(x, mpfr_cos); }
inline Real tan(Real const & x) { return apply1(x, mpfr_tan); }
inline Real atan(Real const & x) { return apply1(x, mpfr_atan); }
inline Real asinh(Real const & x) { return apply1(x, mpfr_asinh); }
inline Real sinh(Real const & x) { return apply1(x, mpfr_sinh); }
inline Real cosh(Real const & x) { return apply1(x, mpfr_cosh); }
inline Real floor(Real const & x)
{
    Real r(0L, x.precision());
    mpfr_floor(r.get(), x.get());
    return r;
}

inline Real log(Real const & x)
{
    if (x.sign() <= 0)
        throw DomainError("log of non-positive value");
    return apply1(x, mpfr_log);
}

inline Real asin(Real const & x)
{
    if (abs(x) > Real(1L, x.precision()))
        throw DomainError("asin argument outside [-1, 1]");
    return apply1(x, mpfr_asin);
}

inline Real atanh(Real const & x)
{
    if (abs(x) >= Real(1L, x.precision()))
        throw DomainError("atanh argument outside (-1, 1)");
    return apply1(x, mpfr_atanh);
}

inline Real atan2(Real const & y, Real const & x)
{
    Real r(0L, std::max(y.precision(), x.precision()));
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}

inline Real pow(Real const & x, long n)
{
    Real r(0L, x.precision());
    mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
    return r;
}

inline Real max(Real const & a, Real const & b) { return a < b ? b : a; }
inline Real min(Real const & a, Real const & b) { return b < a ? b : a; }

/// Unit roundoff 2^(1-prec) of the given precision.
inline Real unit_roundoff(unsigned prec = default_precision())
{
    return Real::exp2i(1 - static_cast<long>(prec), 64);
}

} // namespace topo
