#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "jacring/errors.hpp"
#include "jacring/prime.hpp"
#include "jacring/rng.hpp"

namespace jacring {

// Prime field F_p for an odd prime p < 2^62. Elements are canonical
// residues in [0, p); the field object carries the modulus, so matrices and
// polynomials over F_p store bare 64-bit words.
class Zp {
public:
    using Elem = std::uint64_t;

    explicit Zp(std::uint64_t p) : p_(p) {
        if (p < 3 || p % 2 == 0 || p >= (1ull << 62) || !is_prime_u64(p))
            throw BadFieldError("prime field modulus must be an odd prime < 2^62, got " + std::to_string(p));
    }

    std::uint64_t modulus() const { return p_; }
    std::uint64_t characteristic() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }

    Elem add(Elem a, Elem b) const { return add_mod(a, b, p_); }
    Elem sub(Elem a, Elem b) const { return sub_mod(a, b, p_); }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const { return mul_mod(a, b, p_); }

    Elem inv(Elem a) const {
        if (a == 0) throw PreconditionError("division by zero in F_p");
        return pow_mod(a, p_ - 2, p_);
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem from_int(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += static_cast<std::int64_t>(p_);
        return static_cast<Elem>(r);
    }

    // Reduction of a rational a/b in lowest terms; throws
    // PrimeReductionError when p divides b.
    Elem from_rat(const mpq_class& q) const {
        mpq_class canonical = q;
        canonical.canonicalize();
        mpz_class num = canonical.get_num() % static_cast<unsigned long>(p_);
        mpz_class den = canonical.get_den() % static_cast<unsigned long>(p_);
        Elem d = from_int(den.get_si());
        if (d == 0) throw PrimeReductionError("denominator divisible by p=" + std::to_string(p_));
        return div(from_int(num.get_si()), d);
    }

    Elem uniform(Rng& rng) const { return rng.below(p_); }
    Elem uniform_nonzero(Rng& rng) const { return 1 + rng.below(p_ - 1); }

    std::string to_string(Elem a) const { return std::to_string(a); }
    std::string name() const { return "F_" + std::to_string(p_); }

    friend bool operator==(const Zp& a, const Zp& b) { return a.p_ == b.p_; }

private:
    std::uint64_t p_;
};

// The rational numbers, backed by GMP. mpq_class keeps values in lowest
// terms with positive denominator.
class Rationals {
public:
    using Elem = mpq_class;

    std::uint64_t characteristic() const { return 0; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(const Elem& a) const { return sgn(a) == 0; }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }

    Elem inv(const Elem& a) const {
        if (is_zero(a)) throw PreconditionError("division by zero in Q");
        return 1 / a;
    }

    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    Elem from_int(std::int64_t v) const { return mpq_class(static_cast<long>(v)); }

    Elem from_rat(const mpq_class& q) const {
        Elem r = q;
        r.canonicalize();
        return r;
    }

    // Uniform integer in [0, 2^62); used where a "random rational" is drawn
    // so the same sample reduces coherently modulo every prime.
    Elem uniform(Rng& rng) const { return mpq_class(mpz_class(static_cast<unsigned long>(rng.next() >> 2))); }
    Elem uniform_nonzero(Rng& rng) const {
        Elem e;
        do {
            e = uniform(rng);
        } while (is_zero(e));
        return e;
    }

    std::string to_string(const Elem& a) const { return a.get_str(); }
    std::string name() const { return "Q"; }

    friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

// Runtime field descriptor, as configured on the command line.
struct FieldSpec {
    enum class Kind { PrimeField, Rationals };

    Kind kind = Kind::Rationals;
    std::uint64_t p = 0;

    static FieldSpec prime_field(std::uint64_t p) {
        Zp check(p);  // validates
        return FieldSpec{Kind::PrimeField, check.modulus()};
    }

    static FieldSpec rationals() { return FieldSpec{Kind::Rationals, 0}; }

    std::string name() const { return kind == Kind::Rationals ? "Q" : "F_" + std::to_string(p); }
};

template <class Fn>
auto visit_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.kind == FieldSpec::Kind::Rationals) return fn(Rationals{});
    return fn(Zp(spec.p));
}

}  // namespace jacring

namespace Eigen {

// Custom-scalar traits so Eigen dense expressions work over exact rationals.
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    typedef mpq_class Real;
    typedef mpq_class NonInteger;
    typedef mpq_class Nested;

    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }

    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
};

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
    typedef mpz_class Real;
    typedef mpz_class NonInteger;
    typedef mpz_class Nested;

    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }

    enum {
        IsInteger = 1,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
};

}  // namespace Eigen
