#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "jacring/ring.hpp"

namespace jacring {

struct LefschetzRow {
    int k = 0;
    int power = 1;
    Index source_dim = 0;
    Index target_dim = 0;
    Index rank = 0;
    bool maximal = false;  // rank == min(source_dim, target_dim)
};

// Per-(k, power) rank table for multiplication by powers of a linear form.
template <class F>
struct LefschetzReport {
    GradedPolynomial<F> witness;
    std::vector<LefschetzRow> rows;
    bool wlp = false;  // conjunction over power-1 rows
    bool slp = false;  // conjunction over all rows (only meaningful for slp_check)
};

namespace detail {

template <class F>
LefschetzRow lefschetz_row(const JacobianRing<F>& ring, const GradedPolynomial<F>& multiplier, int k, int power) {
    auto mult = multiplication_operator(ring, multiplier, k);
    LefschetzRow row;
    row.k = k;
    row.power = power;
    row.source_dim = ring.dim(k);
    row.target_dim = ring.dim(k + multiplier.degree());
    row.rank = mult.rank;
    row.maximal = row.rank == std::min(row.source_dim, row.target_dim);
    return row;
}

}  // namespace detail

// Weak Lefschetz check: L : R^k -> R^{k+1} has maximal rank for all k < N.
template <class F>
LefschetzReport<F> wlp_check(const JacobianRing<F>& ring, const GradedPolynomial<F>& witness) {
    if (witness.degree() != 1) throw PreconditionError("Lefschetz witness must have degree 1");
    if (!ring.smooth()) throw PreconditionError("Lefschetz checks require an Artinian ring");
    LefschetzReport<F> report{witness, {}, true, false};
    for (int k = 0; k < ring.socle_degree(); ++k) {
        auto row = detail::lefschetz_row(ring, witness, k, 1);
        if (!row.maximal) report.wlp = false;
        report.rows.push_back(row);
    }
    report.slp = false;
    return report;
}

// Strong Lefschetz check: L^c : R^k -> R^{k+c} has maximal rank for all
// k >= 0, c >= 1 with k + c <= N. Requires char 0 or p > N so that powers
// of L cannot collapse for characteristic reasons.
template <class F>
LefschetzReport<F> slp_check(const JacobianRing<F>& ring, const GradedPolynomial<F>& witness) {
    if (witness.degree() != 1) throw PreconditionError("Lefschetz witness must have degree 1");
    if (!ring.smooth()) throw PreconditionError("Lefschetz checks require an Artinian ring");
    const int N = ring.socle_degree();
    const std::uint64_t ch = ring.field().characteristic();
    if (ch != 0 && ch <= static_cast<std::uint64_t>(N))
        throw CharacteristicTooSmallError("slp_check needs char 0 or p > N");
    LefschetzReport<F> report{witness, {}, true, true};
    GradedPolynomial<F> power = witness;
    for (int c = 1; c <= N; ++c) {
        for (int k = 0; k + c <= N; ++k) {
            auto row = detail::lefschetz_row(ring, power, k, c);
            if (!row.maximal) {
                report.slp = false;
                if (c == 1) report.wlp = false;
            }
            report.rows.push_back(row);
        }
        if (c < N) power = power.times(witness);
    }
    return report;
}

template <class F>
JacobianRing<F> monomial_ci_ring(const std::vector<int>& exponents, const F& field,
                                 typename JacobianRing<F>::BuildOptions opts = {}) {
    return JacobianRing<F>::monomial_ci(exponents, field, opts);
}

// Injectivity of G -> normal_form(G * H^{d(n-1)}) from S^k into the Fermat
// Jacobian ring, H the sum of variables. When the target degree exceeds the
// socle degree the map is zero into a zero space and the property is
// reported as trivially false.
struct StarReport {
    int n = 0;
    int d = 0;
    int k = 0;
    int target_degree = 0;
    Index source_dim = 0;
    Index target_dim = 0;
    Index rank = 0;
    bool injective = false;
    bool trivially_false = false;
};

template <class F>
StarReport star_property_check(int n, int d, int k, const F& field) {
    if (k < 0) throw PreconditionError("star property needs k >= 0");
    const int N = (n + 1) * (d - 2);
    const std::uint64_t ch = field.characteristic();
    if (ch != 0 && ch <= static_cast<std::uint64_t>(std::max(N, d)))
        throw CharacteristicTooSmallError("star property needs char 0 or p > (n+1)(d-2)");
    StarReport report;
    report.n = n;
    report.d = d;
    report.k = k;
    report.target_degree = k + d * (n - 1);
    report.source_dim = static_cast<Index>(binomial_u64(n + k, n));
    if (report.target_degree > N) {
        report.trivially_false = true;
        return report;
    }
    auto ring = JacobianRing<F>::jacobian(fermat(n, d, field));
    auto multiplier = sum_of_variables(n, field).pow(d * (n - 1));
    report.target_dim = ring.dim(report.target_degree);
    const auto source = monomial_basis(n, k);
    Mat<F> m(report.target_dim, static_cast<Index>(source.size()));
    for (std::size_t j = 0; j < source.size(); ++j) {
        auto prod = multiplier.times(GradedPolynomial<F>::monomial(source[j], field.one(), field));
        m.col(static_cast<Index>(j)) = ring.normal_form(prod);
    }
    report.rank = rank<F>(m, field);
    report.injective = report.rank == report.source_dim;
    return report;
}

// The coefficient of (x0*...*xn)^(d-2) in H^((n+1)(d-2)) for d = n+1,
// computed both by the multinomial formula and by direct expansion.
template <class F>
struct SocleCoefficientReport {
    mpz_class multinomial;
    typename F::Elem in_field;
    bool expansion_matches = false;
};

template <class F>
SocleCoefficientReport<F> socle_coefficient(int n, int d, const F& field) {
    if (d != n + 1) throw PreconditionError("socle coefficient is defined for d = n + 1");
    const int exponent = (n + 1) * (d - 2);
    mpz_class lambda;
    mpz_fac_ui(lambda.get_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_class fac;
    mpz_fac_ui(fac.get_mpz_t(), static_cast<unsigned long>(d - 2));
    mpz_class denom;
    mpz_pow_ui(denom.get_mpz_t(), fac.get_mpz_t(), static_cast<unsigned long>(n + 1));
    mpz_divexact(lambda.get_mpz_t(), lambda.get_mpz_t(), denom.get_mpz_t());

    SocleCoefficientReport<F> report;
    report.multinomial = lambda;
    report.in_field = field.from_rat(mpq_class(lambda));
    if (field.is_zero(report.in_field))
        throw PreconditionError("characteristic divides the socle coefficient; use another prime");
    auto expansion = sum_of_variables(n, field).pow(exponent);
    auto coeff = expansion.coefficient(product_monomial_power(n, d - 2));
    report.expansion_matches = !field.is_zero(coeff) && field.is_zero(field.sub(coeff, report.in_field));
    return report;
}

// Samples eta in R^a maximizing rank(eta * : R^e -> R^{a+e}), then squares
// every element of the kernel of the best sample. A trivial kernel is a
// vacuous pass and is reported as such.
struct KernelSquareReport {
    int a = 0;
    int e = 0;
    int samples_requested = 0;
    int samples_used = 0;
    bool escalated = false;
    Index best_rank = 0;
    Index max_possible = 0;
    bool reached_max_possible = false;
    Index kernel_dim = 0;
    bool vacuous = true;
    int squares_checked = 0;
    bool squares_all_zero = true;
};

template <class F>
KernelSquareReport max_rank_kernel_square_check(const JacobianRing<F>& ring, int a, int e, int samples, Rng rng) {
    if (!ring.smooth()) throw SingularRingError("kernel-square check requires a smooth ring");
    if (a < 0 || e < 0 || a + 2 * e > ring.socle_degree())
        throw PreconditionError("kernel-square check requires a + 2e <= N");
    if (samples < 1) throw PreconditionError("need at least one sample");

    KernelSquareReport report;
    report.a = a;
    report.e = e;
    report.samples_requested = samples;
    report.max_possible = std::min(ring.dim(e), ring.dim(a + e));

    const int escalation_cap = std::max(samples, 100);
    GradedPolynomial<F> best = GradedPolynomial<F>::zero(ring.nvars(), a, ring.field());
    Index best_rank = -1;
    int used = 0;
    int budget = samples;
    for (int i = 0; i < budget; ++i) {
        Rng stream = rng.split(static_cast<std::uint64_t>(i));
        auto eta = ring.random_nonzero_element(a, stream);
        auto mult = multiplication_operator(ring, eta, e);
        ++used;
        if (mult.rank > best_rank) {
            best_rank = mult.rank;
            best = eta;
        }
        if (best_rank >= report.max_possible) break;
        if (i + 1 == budget && budget < escalation_cap) budget = escalation_cap;
    }
    report.samples_used = used;
    report.escalated = used > samples;
    report.best_rank = best_rank;
    report.reached_max_possible = best_rank == report.max_possible;

    auto mult = multiplication_operator(ring, best, e);
    report.kernel_dim = mult.kernel_dim();
    report.vacuous = report.kernel_dim == 0;
    if (!report.vacuous) {
        const auto& f = ring.field();
        auto square_is_zero = [&](const GradedPolynomial<F>& alpha) {
            Vec<F> nf = ring.normal_form(alpha.times(alpha));
            for (Index i = 0; i < nf.size(); ++i)
                if (!f.is_zero(nf(i))) return false;
            return true;
        };
        for (const auto& v : mult.kernel) {
            ++report.squares_checked;
            if (!square_is_zero(ring.lift(e, v))) report.squares_all_zero = false;
        }
        Rng combo_rng = rng.split("kernel-combinations");
        for (int t = 0; t < 5; ++t) {
            GradedPolynomial<F> combo(ring.nvars(), e, f);
            for (const auto& v : mult.kernel) combo = combo.plus(ring.lift(e, v).scaled(f.uniform(combo_rng)));
            if (combo.is_zero()) continue;
            ++report.squares_checked;
            if (!square_is_zero(combo)) report.squares_all_zero = false;
        }
    }
    return report;
}

}  // namespace jacring
