#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jacring/fields.hpp"
#include "jacring/linalg.hpp"
#include "jacring/monomial.hpp"
#include "jacring/rng.hpp"

namespace jacring {

// Homogeneous polynomial in nvars variables over the field F, stored as a
// sparse coefficient map. Zero coefficients are never stored; the zero
// polynomial keeps an explicit degree tag so graded maps stay well typed.
template <class F>
class GradedPolynomial {
public:
    using Elem = typename F::Elem;
    using TermMap = std::map<Monomial, Elem, MonomialBefore>;

    GradedPolynomial(int nvars, int degree, const F& field)
        : field_(field), nvars_(nvars), degree_(degree) {}

    static GradedPolynomial zero(int nvars, int degree, const F& field) {
        return GradedPolynomial(nvars, degree, field);
    }

    static GradedPolynomial monomial(const Monomial& m, Elem coeff, const F& field) {
        GradedPolynomial p(m.nvars(), m.degree(), field);
        p.add_term(m, coeff);
        return p;
    }

    const F& field() const { return field_; }
    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Elem coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? field_.zero() : it->second;
    }

    void add_term(const Monomial& m, const Elem& c) {
        if (m.nvars() != nvars_) throw PreconditionError("monomial has wrong variable count");
        if (m.degree() != degree_) throw NotHomogeneousError("term of degree " + std::to_string(m.degree()) +
                                                             " in a degree-" + std::to_string(degree_) + " polynomial");
        if (field_.is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second = field_.add(it->second, c);
            if (field_.is_zero(it->second)) terms_.erase(it);
        }
    }

    GradedPolynomial plus(const GradedPolynomial& other) const {
        require_same_shape(other);
        GradedPolynomial out = *this;
        for (const auto& [m, c] : other.terms_) out.add_term(m, c);
        return out;
    }

    GradedPolynomial minus(const GradedPolynomial& other) const {
        require_same_shape(other);
        GradedPolynomial out = *this;
        for (const auto& [m, c] : other.terms_) out.add_term(m, field_.neg(c));
        return out;
    }

    GradedPolynomial scaled(const Elem& c) const {
        GradedPolynomial out(nvars_, degree_, field_);
        if (field_.is_zero(c)) return out;
        for (const auto& [m, v] : terms_) out.terms_.emplace(m, field_.mul(v, c));
        return out;
    }

    GradedPolynomial times(const GradedPolynomial& other) const {
        if (nvars_ != other.nvars_) throw PreconditionError("variable count mismatch in product");
        GradedPolynomial out(nvars_, degree_ + other.degree_, field_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : other.terms_) out.add_term(ma.times(mb), field_.mul(ca, cb));
        return out;
    }

    GradedPolynomial pow(int e) const {
        if (e < 0) throw PreconditionError("negative power");
        GradedPolynomial acc = GradedPolynomial::monomial(Monomial::unit(nvars_), field_.one(), field_);
        GradedPolynomial base = *this;
        int rem = e;
        while (rem > 0) {
            if (rem & 1) acc = acc.times(base);
            rem >>= 1;
            if (rem > 0) base = base.times(base);
        }
        return acc;
    }

    // Formal partial derivative; the result carries degree() - 1 even when
    // it is zero.
    GradedPolynomial partial_derivative(int var) const {
        if (var < 0 || var >= nvars_) throw PreconditionError("derivative variable index out of range");
        GradedPolynomial out(nvars_, degree_ - 1, field_);
        for (const auto& [m, c] : terms_) {
            const int e = m.exponent(var);
            if (e == 0) continue;
            std::vector<int> exps = m.exponents();
            exps[static_cast<std::size_t>(var)] = e - 1;
            out.add_term(Monomial(std::move(exps)), field_.mul(c, field_.from_int(e)));
        }
        return out;
    }

    // Coordinates with respect to an explicit monomial basis of S^degree.
    Vec<F> coordinates(const std::vector<Monomial>& basis, const BasisIndex& index) const {
        Vec<F> v(static_cast<Index>(basis.size()));
        for (Index i = 0; i < v.size(); ++i) v(i) = field_.zero();
        for (const auto& [m, c] : terms_) v(index.at(m)) = c;
        return v;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            std::string cs = field_.to_string(c);
            bool negative = !cs.empty() && cs[0] == '-';
            if (negative) cs = cs.substr(1);
            if (out.empty())
                out += negative ? "-" : "";
            else
                out += negative ? " - " : " + ";
            const bool constant = m.degree() == 0;
            if (constant)
                out += cs;
            else if (cs == "1")
                out += m.to_string();
            else
                out += cs + "*" + m.to_string();
        }
        return out;
    }

private:
    void require_same_shape(const GradedPolynomial& other) const {
        if (nvars_ != other.nvars_ || degree_ != other.degree_)
            throw PreconditionError("polynomial shape mismatch (nvars/degree)");
    }

    F field_;
    int nvars_;
    int degree_;
    TermMap terms_;
};

// Directional derivative sum_i v_i * dF/dx_i.
template <class F>
GradedPolynomial<F> directional_derivative(const GradedPolynomial<F>& f, const std::vector<typename F::Elem>& v) {
    if (static_cast<int>(v.size()) != f.nvars()) throw PreconditionError("direction has wrong length");
    bool all_zero = true;
    for (const auto& c : v)
        if (!f.field().is_zero(c)) all_zero = false;
    if (all_zero) throw ZeroVectorError("directional derivative along the zero vector");
    GradedPolynomial<F> out(f.nvars(), f.degree() - 1, f.field());
    for (int i = 0; i < f.nvars(); ++i) {
        if (f.field().is_zero(v[static_cast<std::size_t>(i)])) continue;
        out = out.plus(f.partial_derivative(i).scaled(v[static_cast<std::size_t>(i)]));
    }
    return out;
}

// Checks the Euler identity sum_i x_i * dF/dx_i = deg(F) * F. Holds for
// every homogeneous polynomial; used as a self-test of the arithmetic.
template <class F>
bool euler_check(const GradedPolynomial<F>& f) {
    const std::uint64_t ch = f.field().characteristic();
    if (ch != 0 && ch <= static_cast<std::uint64_t>(f.degree()))
        throw CharacteristicTooSmallError("euler_check needs char 0 or p > deg(f)");
    GradedPolynomial<F> lhs(f.nvars(), f.degree(), f.field());
    for (int i = 0; i < f.nvars(); ++i) {
        auto xi = GradedPolynomial<F>::monomial(Monomial::power(f.nvars(), i, 1), f.field().one(), f.field());
        lhs = lhs.plus(xi.times(f.partial_derivative(i)));
    }
    return lhs.minus(f.scaled(f.field().from_int(f.degree()))).is_zero();
}

// x0^d + ... + xn^d.
template <class F>
GradedPolynomial<F> fermat(int n, int d, const F& field) {
    if (d < 2) throw PreconditionError("fermat requires d >= 2");
    GradedPolynomial<F> out(n + 1, d, field);
    for (int i = 0; i <= n; ++i) out.add_term(Monomial::power(n + 1, i, d), field.one());
    return out;
}

// x0 + ... + xn.
template <class F>
GradedPolynomial<F> sum_of_variables(int n, const F& field) {
    GradedPolynomial<F> out(n + 1, 1, field);
    for (int i = 0; i <= n; ++i) out.add_term(Monomial::power(n + 1, i, 1), field.one());
    return out;
}

// (x0*...*xn)^(d-2), the socle monomial of the Fermat ring.
inline Monomial product_monomial_power(int n, int e) {
    return Monomial(std::vector<int>(static_cast<std::size_t>(n + 1), e));
}

// Dense random polynomial: one uniform coefficient per basis monomial, in
// basis order (deterministic for a given stream).
template <class F>
GradedPolynomial<F> random_polynomial(int n, int k, const F& field, Rng& rng) {
    GradedPolynomial<F> out(n + 1, k, field);
    for (const auto& m : monomial_basis(n, k)) out.add_term(m, field.uniform(rng));
    return out;
}

// Reduce a rational-coefficient polynomial modulo p. Throws
// PrimeReductionError if any denominator is divisible by p.
inline GradedPolynomial<Zp> reduce_mod(const GradedPolynomial<Rationals>& f, const Zp& field) {
    GradedPolynomial<Zp> out(f.nvars(), f.degree(), field);
    for (const auto& [m, c] : f.terms()) out.add_term(m, field.from_rat(c));
    return out;
}

inline GradedPolynomial<Rationals> identity_cast(const GradedPolynomial<Rationals>& f, const Rationals&) { return f; }

// Uniform way to materialize a rational "master" polynomial over any field.
template <class F>
GradedPolynomial<F> over_field(const GradedPolynomial<Rationals>& f, const F& field) {
    if constexpr (std::is_same_v<F, Rationals>)
        return f;
    else
        return reduce_mod(f, field);
}

}  // namespace jacring
