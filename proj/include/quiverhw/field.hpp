#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace quiverhw {

/// Exact rational scalars. Every decision in the library is made over these.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& q)
{
    return q.str();
}

/// Element of the prime field F_p. The modulus travels with the value so that
/// representations over different primes never mix silently.
class ModP {
public:
    ModP() = default;
    ModP(std::int64_t value, std::uint32_t prime)
        : p_(prime)
    {
        auto r = value % static_cast<std::int64_t>(prime);
        if (r < 0) r += prime;
        v_ = static_cast<std::uint32_t>(r);
    }

    std::uint32_t value() const { return v_; }
    std::uint32_t prime() const { return p_; }

    friend ModP operator+(ModP a, ModP b) { return ModP(std::int64_t(a.v_) + b.v_, join(a, b)); }
    friend ModP operator-(ModP a, ModP b) { return ModP(std::int64_t(a.v_) - b.v_, join(a, b)); }
    friend ModP operator*(ModP a, ModP b)
    {
        return ModP(static_cast<std::int64_t>(std::uint64_t(a.v_) * b.v_ % join(a, b)), join(a, b));
    }
    friend ModP operator/(ModP a, ModP b) { return a * b.inverse(); }
    ModP operator-() const { return ModP(-std::int64_t(v_), p_); }
    ModP& operator+=(ModP b) { return *this = *this + b; }
    ModP& operator-=(ModP b) { return *this = *this - b; }
    ModP& operator*=(ModP b) { return *this = *this * b; }

    friend bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }

    ModP inverse() const
    {
        if (v_ == 0) throw std::domain_error("division by zero in F_p");
        // Fermat: v^(p-2)
        std::uint64_t result = 1, base = v_, e = p_ - 2;
        while (e) {
            if (e & 1) result = result * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return ModP(static_cast<std::int64_t>(result), p_);
    }

    friend std::ostream& operator<<(std::ostream& os, ModP a) { return os << a.v_; }

private:
    // A default-constructed zero has prime 0 and adopts the other operand's.
    static std::uint32_t join(ModP a, ModP b)
    {
        if (a.p_ == 0) return b.p_ == 0 ? 2 : b.p_;
        if (b.p_ != 0 && b.p_ != a.p_) throw std::logic_error("mixing different prime fields");
        return a.p_;
    }

    std::uint32_t v_ = 0;
    std::uint32_t p_ = 0;
};

inline bool is_prime(std::uint32_t p)
{
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Scalar construction hooks used by templated code. A field context carries
/// whatever is needed to build 0 and 1 (the prime, for F_p).
template <class K>
struct FieldContext;

template <>
struct FieldContext<Rational> {
    Rational zero() const { return Rational(0); }
    Rational one() const { return Rational(1); }
    Rational from_int(std::int64_t v) const { return Rational(v); }
};

template <>
struct FieldContext<ModP> {
    std::uint32_t prime = 2;
    ModP zero() const { return ModP(0, prime); }
    ModP one() const { return ModP(1, prime); }
    ModP from_int(std::int64_t v) const { return ModP(v, prime); }
};

inline bool is_zero(const Rational& q) { return q == 0; }
inline bool is_zero(ModP a) { return a.value() == 0; }

inline Rational reciprocal(const Rational& q) { return Rational(1) / q; }
inline ModP reciprocal(ModP a) { return a.inverse(); }

/// Reduces a rational modulo p. Returns false when p divides the denominator.
inline bool reduce_mod(const Rational& q, std::uint32_t p, ModP& out)
{
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    const BigInt bp = p;
    BigInt dr = den % bp;
    if (dr == 0) return false;
    BigInt nr = num % bp;
    if (nr < 0) nr += bp;
    out = ModP(static_cast<std::int64_t>(nr), p) / ModP(static_cast<std::int64_t>(dr), p);
    return true;
}

} // namespace quiverhw
