#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace bgd {

// Exact scalars. Two fields are supported: the rationals (arbitrary
// precision, via GMP) and prime fields F_p with runtime modulus. All
// linear algebra in the library is templated on the field type, and every
// element is created through the field object so that F_p elements always
// carry their modulus.

struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Rationals

class RationalField {
public:
    using Elem = mpq_class;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_long(long v) const { return Elem(v); }

    static bool is_zero(const Elem& x) { return sgn(x) == 0; }

    Elem parse(const std::string& s) const {
        if (s.empty())
            throw FieldError("empty rational literal");
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw FieldError("bad rational literal: " + s);
        if (sgn(q.get_den()) == 0)
            throw FieldError("zero denominator: " + s);
        q.canonicalize();
        return q;
    }

    std::string to_string(const Elem& x) const { return x.get_str(); }

    bool operator==(const RationalField&) const { return true; }

    std::string name() const { return "Q"; }
};

// ---------------------------------------------------------------------------
// Prime fields

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace detail

// Residue with attached modulus. A default-constructed value (p == 0) is the
// neutral zero and combines with any modulus.
struct ModElem {
    std::uint64_t v = 0;
    std::uint64_t p = 0;

    friend bool operator==(const ModElem& a, const ModElem& b) {
        if (a.p != 0 && b.p != 0 && a.p != b.p)
            throw FieldError("mixed moduli in comparison");
        return a.v == b.v;
    }

    friend ModElem operator+(const ModElem& a, const ModElem& b) {
        std::uint64_t p = ModElem::join(a, b);
        if (p == 0) return {};
        std::uint64_t s = a.v + b.v;
        if (s >= p) s -= p;
        return {s, p};
    }
    friend ModElem operator-(const ModElem& a, const ModElem& b) {
        std::uint64_t p = ModElem::join(a, b);
        if (p == 0) return {};
        std::uint64_t s = a.v + p - b.v;
        if (s >= p) s -= p;
        return {s, p};
    }
    friend ModElem operator*(const ModElem& a, const ModElem& b) {
        if (a.p == 0 || b.p == 0) return {};
        std::uint64_t p = ModElem::join(a, b);
        return {detail::mulmod_u64(a.v, b.v, p), p};
    }
    friend ModElem operator/(const ModElem& a, const ModElem& b) {
        if (b.p == 0 || b.v == 0) throw FieldError("division by zero in F_p");
        std::uint64_t inv = detail::powmod_u64(b.v, b.p - 2, b.p);
        if (a.p == 0) return {};
        return {detail::mulmod_u64(a.v, inv, b.p), b.p};
    }
    ModElem operator-() const {
        if (p == 0 || v == 0) return {0, p};
        return {p - v, p};
    }
    ModElem& operator+=(const ModElem& b) { return *this = *this + b; }
    ModElem& operator-=(const ModElem& b) { return *this = *this - b; }
    ModElem& operator*=(const ModElem& b) { return *this = *this * b; }
    ModElem& operator/=(const ModElem& b) { return *this = *this / b; }

private:
    static std::uint64_t join(const ModElem& a, const ModElem& b) {
        if (a.p == 0) return b.p;
        if (b.p == 0) return a.p;
        if (a.p != b.p) throw FieldError("mixed moduli in arithmetic");
        return a.p;
    }
};

class PrimeField {
public:
    using Elem = ModElem;

    PrimeField() : p_(2) {}
    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (!detail::is_prime_u64(p))
            throw FieldError("modulus is not prime: " + std::to_string(p));
    }

    std::uint64_t modulus() const { return p_; }

    Elem zero() const { return {0, p_}; }
    Elem one() const { return {1 % p_, p_}; }
    Elem from_long(long v) const {
        long long r = static_cast<long long>(v % static_cast<long long>(p_));
        if (r < 0) r += static_cast<long long>(p_);
        return {static_cast<std::uint64_t>(r), p_};
    }

    static bool is_zero(const Elem& x) { return x.v == 0; }

    Elem parse(const std::string& s) const {
        try {
            return from_long(std::stol(s));
        } catch (const std::exception&) {
            throw FieldError("bad residue literal: " + s);
        }
    }

    std::string to_string(const Elem& x) const { return std::to_string(x.v); }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

    std::string name() const { return "F" + std::to_string(p_); }

private:
    std::uint64_t p_;
};

} // namespace bgd
