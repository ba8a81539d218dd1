#pragma once

#include <cstdint>
#include <vector>

#include "jacring/jacring.hpp"

namespace testutil {

using namespace jacring;

// Independent count of degree-k monomials in `nvars` variables with every
// exponent at most `cap` (the classical basis of Fermat-type quotients).
// Deliberately avoids the library's monomial enumeration.
inline long long bounded_monomial_count(int nvars, int k, int cap) {
    if (nvars == 0) return k == 0 ? 1 : 0;
    long long total = 0;
    for (int e = 0; e <= cap && e <= k; ++e) total += bounded_monomial_count(nvars - 1, k - e, cap);
    return total;
}

template <class F>
Mat<F> random_matrix(int rows, int cols, const F& field, Rng& rng) {
    Mat<F> m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = field.uniform(rng);
    return m;
}

// Random integer matrix materialized over Q and over F_p coherently.
inline Mat<Rationals> random_int_matrix_q(int rows, int cols, Rng& rng, std::uint64_t bound = 1000) {
    Mat<Rationals> m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            m(i, j) = mpq_class(static_cast<long>(rng.below(bound)) - static_cast<long>(bound / 2));
    return m;
}

inline Mat<Zp> reduce_matrix(const Mat<Rationals>& m, const Zp& field) {
    Mat<Zp> out(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) out(i, j) = field.from_rat(m(i, j));
    return out;
}

template <class F>
bool is_zero_vec(const Vec<F>& v, const F& field) {
    for (Index i = 0; i < v.size(); ++i)
        if (!field.is_zero(v(i))) return false;
    return true;
}

template <class F>
bool nf_is_zero(const JacobianRing<F>& ring, const GradedPolynomial<F>& f) {
    return is_zero_vec(ring.normal_form(f), ring.field());
}

}  // namespace testutil
