#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "jacring/errors.hpp"

namespace jacring {

// Exponent tuple in nvars variables. Monomials of equal degree are ordered
// by graded lex with x0 > x1 > ... (so bases are listed with x0^k first).
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<int> exponents) : e_(std::move(exponents)) {}

    static Monomial unit(int nvars) { return Monomial(std::vector<int>(static_cast<std::size_t>(nvars), 0)); }

    static Monomial power(int nvars, int var, int exp) {
        auto m = unit(nvars);
        m.e_[static_cast<std::size_t>(var)] = exp;
        return m;
    }

    int nvars() const { return static_cast<int>(e_.size()); }
    int exponent(int i) const { return e_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& exponents() const { return e_; }

    int degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

    Monomial times(const Monomial& other) const {
        std::vector<int> e(e_.size());
        for (std::size_t i = 0; i < e_.size(); ++i) e[i] = e_[i] + other.e_[i];
        return Monomial(std::move(e));
    }

    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > other.e_[i]) return false;
        return true;
    }

    int max_exponent() const {
        int m = 0;
        for (int v : e_) m = std::max(m, v);
        return m;
    }

    // Packed key for hashing; supports up to 8 variables with exponents < 256.
    std::uint64_t key() const {
        std::uint64_t k = 0;
        for (std::size_t i = 0; i < e_.size(); ++i) k |= static_cast<std::uint64_t>(e_[i] & 0xff) << (8 * i);
        return k;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (e_[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += "x" + std::to_string(i);
            if (e_[i] > 1) s += "^" + std::to_string(e_[i]);
        }
        return s.empty() ? "1" : s;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    // Graded lex: higher degree first; within a degree, lexicographically
    // larger exponent tuples (more weight on x0) come first.
    static bool before(const Monomial& a, const Monomial& b) {
        if (a.degree() != b.degree()) return a.degree() > b.degree();
        return a.e_ > b.e_;
    }

private:
    std::vector<int> e_;
};

struct MonomialBefore {
    bool operator()(const Monomial& a, const Monomial& b) const { return Monomial::before(a, b); }
};

inline std::uint64_t binomial_u64(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t acc = 1;
    for (int i = 1; i <= k; ++i) acc = acc * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return acc;
}

namespace detail {
inline void enumerate_monomials(int nvars, int pos, int remaining, std::vector<int>& cur,
                                std::vector<Monomial>& out) {
    if (pos == nvars - 1) {
        cur[static_cast<std::size_t>(pos)] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur[static_cast<std::size_t>(pos)] = e;
        enumerate_monomials(nvars, pos + 1, remaining - e, cur, out);
    }
}
}  // namespace detail

// All degree-k monomials in n+1 variables, in graded-lex order (x0^k first).
// Length is binomial(n+k, n).
inline std::vector<Monomial> monomial_basis(int n, int k) {
    if (n < 0 || k < 0) throw PreconditionError("monomial_basis requires n >= 0 and k >= 0");
    const int nvars = n + 1;
    std::vector<Monomial> out;
    out.reserve(binomial_u64(n + k, n));
    std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
    detail::enumerate_monomials(nvars, 0, k, cur, out);
    return out;
}

// Position lookup inside a fixed monomial basis.
class BasisIndex {
public:
    BasisIndex() = default;
    explicit BasisIndex(const std::vector<Monomial>& basis) {
        index_.reserve(basis.size() * 2);
        for (std::size_t i = 0; i < basis.size(); ++i) index_.emplace(basis[i].key(), static_cast<int>(i));
    }

    int at(const Monomial& m) const {
        auto it = index_.find(m.key());
        if (it == index_.end()) throw InternalError("monomial not in basis: " + m.to_string());
        return it->second;
    }

    bool contains(const Monomial& m) const { return index_.count(m.key()) > 0; }

private:
    std::unordered_map<std::uint64_t, int> index_;
};

}  // namespace jacring
