#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jacring/ring.hpp"

namespace jacring {

// Balanced split (k, p-k) with k = floor(p/2), the convention for the Segre
// parametrization of decomposable degree-p forms.
struct SegreSpec {
    int total = 0;

    explicit SegreSpec(int p) : total(p) {
        if (p < 0) throw PreconditionError("Segre split needs p >= 0");
    }

    int left() const { return total / 2; }
    int right() const { return total - total / 2; }
};

// Rank of (A, B) -> A*F + B*F_v from S^{p-d} (+) S^{p-d+1} to S^p, where
// F_v is the directional derivative. For smooth F the map is injective, so
// the rank equals s_{p-d} + s_{p-d+1}.
struct FvRankReport {
    int p = 0;
    Index rank = 0;
    Index expected = 0;
    bool injective = false;
};

template <class F>
FvRankReport f_v_rank(const GradedPolynomial<F>& hypersurface, const std::vector<typename F::Elem>& v, int p) {
    const int d = hypersurface.degree();
    const int n = hypersurface.nvars() - 1;
    if (p < d - 1) throw DegreeOutOfRangeError("f_v needs p >= d - 1");
    auto fv = directional_derivative(hypersurface, v);  // throws on the zero vector

    const auto target = monomial_basis(n, p);
    const BasisIndex target_index(target);
    const auto& field = hypersurface.field();

    std::vector<Vec<F>> cols;
    auto push_multiples = [&](const GradedPolynomial<F>& gen) {
        const int md = p - gen.degree();
        if (md < 0) return;
        for (const auto& m : monomial_basis(n, md)) {
            auto prod = gen.times(GradedPolynomial<F>::monomial(m, field.one(), field));
            cols.push_back(prod.coordinates(target, target_index));
        }
    };
    push_multiples(hypersurface);
    push_multiples(fv);

    Mat<F> mat(static_cast<Index>(target.size()), static_cast<Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) mat.col(static_cast<Index>(j)) = cols[j];

    FvRankReport report;
    report.p = p;
    report.rank = rank<F>(mat, field);
    report.expected = static_cast<Index>(binomial_u64(n + p - d, n) + binomial_u64(n + p - d + 1, n));
    report.injective = report.rank == report.expected;
    return report;
}

namespace detail {

template <class F>
bool normal_form_is_zero(const JacobianRing<F>& ring, const GradedPolynomial<F>& f) {
    Vec<F> nf = ring.normal_form(f);
    for (Index i = 0; i < nf.size(); ++i)
        if (!ring.field().is_zero(nf(i))) return false;
    return true;
}

}  // namespace detail

// Membership in Y = { [alpha] in P(R^{d-3}) : alpha^2 in J^{2d-6} }.
template <class F>
bool membership_Y(const JacobianRing<F>& ring, const GradedPolynomial<F>& alpha) {
    const int d = ring.hypersurface_degree();
    if (d < 5) throw PreconditionError("Y is considered for d >= 5 (so that 2d-6 >= d-1)");
    if (alpha.degree() != d - 3) throw DegreeOutOfRangeError("alpha must have degree d - 3");
    if (detail::normal_form_is_zero(ring, alpha))
        throw AlphaInIdealError("alpha lies in the ideal; the projective point is undefined");
    return detail::normal_form_is_zero(ring, alpha.times(alpha));
}

// The lift { beta in S^{d-3} : alpha*beta in J^{2d-6} } of the incidence
// fiber over [alpha]: its dimension splits as k_{d-3}(alpha) + dim J^{d-3}
// (the ideal part vanishes for d >= 5 since J starts in degree d-1). The
// projective fiber P(K_{d-3}(alpha)) contains [alpha] itself.
template <class F>
struct IncidenceFiberReport {
    Index space_dim = 0;       // dim of the S-level solution space
    Index ideal_dim = 0;       // dim J^{d-3}
    Index kernel_dim = 0;      // k_{d-3}(alpha) = space_dim - ideal_dim
    Index fiber_dim = 0;       // projective dim of P(K_{d-3}(alpha))
    bool contains_alpha = false;
    std::vector<Vec<F>> basis;  // coordinates on the S^{d-3} monomial basis
};

template <class F>
IncidenceFiberReport<F> incidence_fiber(const JacobianRing<F>& ring, const GradedPolynomial<F>& alpha) {
    if (!membership_Y(ring, alpha)) throw PreconditionError("alpha is not a member of Y");
    const int d = ring.hypersurface_degree();
    const int k = d - 3;
    const auto& field = ring.field();
    const auto& source = ring.monomials(k);
    const auto& source_index = ring.monomial_index(k);

    Mat<F> m(ring.dim(2 * k), static_cast<Index>(source.size()));
    for (std::size_t j = 0; j < source.size(); ++j) {
        auto prod = alpha.times(GradedPolynomial<F>::monomial(source[j], field.one(), field));
        m.col(static_cast<Index>(j)) = ring.normal_form(prod);
    }
    RankMatrix<F> rm(std::move(m), field);

    IncidenceFiberReport<F> report;
    report.basis = rm.kernel_basis();
    report.space_dim = static_cast<Index>(report.basis.size());
    report.ideal_dim = ring.ideal_dim(k);
    report.kernel_dim = report.space_dim - report.ideal_dim;
    report.fiber_dim = report.kernel_dim - 1;

    Vec<F> alpha_coords = alpha.coordinates(source, source_index);
    Vec<F> image = apply(rm.entries(), alpha_coords, field);
    report.contains_alpha = true;
    for (Index i = 0; i < image.size(); ++i)
        if (!field.is_zero(image(i))) report.contains_alpha = false;
    return report;
}

// Projective tangent-space dimension of Y at [alpha]: an upper bound for
// the local dimension of every component through a smooth point, nothing
// more. Equals k_{d-3}(alpha) - 1.
template <class F>
struct TangentDimReport {
    Index tangent_dim = 0;
    Index kernel_dim = 0;
};

template <class F>
TangentDimReport<F> tangent_dim_Y(const JacobianRing<F>& ring, const GradedPolynomial<F>& alpha) {
    auto fiber = incidence_fiber(ring, alpha);
    TangentDimReport<F> report;
    report.kernel_dim = fiber.kernel_dim;
    report.tangent_dim = fiber.kernel_dim - 1;
    return report;
}

// Ruppert-style probe for absolute irreducibility of a plane form over F_p.
// The form is dehomogenized on random affine charts; on a good chart the
// closed-form linear system
//     f * g_y - f_y * g = f * h_x - f_x * h,
// with deg g <= (m-1, n) and deg h <= (m, n-2), has only the trivial
// solution exactly when f is absolutely irreducible (valid here since p far
// exceeds the degree bound). A trivial null space is therefore evidence
// that the form is not a product of two positive-degree forms; a nontrivial
// one on a good chart detects decomposability over the closure.
enum class ProbeVerdict { NotDecomposableEvidence, DecomposableDetected, Inconclusive };

inline std::string to_string(ProbeVerdict v) {
    switch (v) {
        case ProbeVerdict::NotDecomposableEvidence: return "not-decomposable-evidence";
        case ProbeVerdict::DecomposableDetected: return "decomposable-detected";
        default: return "inconclusive";
    }
}

struct ProbeReport {
    ProbeVerdict verdict = ProbeVerdict::Inconclusive;
    int charts_tried = 0;
    bool good_chart_found = false;
    Index nullspace_dim = 0;
    std::string detail;
};

namespace detail {

// Dense bivariate polynomial over F_p keyed by (deg_x, deg_y).
using BivPoly = std::map<std::pair<int, int>, std::uint64_t>;

inline void biv_add(BivPoly& p, int i, int j, std::uint64_t c, const Zp& f) {
    if (f.is_zero(c)) return;
    auto key = std::make_pair(i, j);
    auto it = p.find(key);
    if (it == p.end()) {
        p.emplace(key, c);
    } else {
        it->second = f.add(it->second, c);
        if (it->second == 0) p.erase(it);
    }
}

inline BivPoly biv_mul_monomial(const BivPoly& p, int di, int dj, std::uint64_t c, const Zp& f) {
    BivPoly out;
    for (const auto& [key, v] : p) biv_add(out, key.first + di, key.second + dj, f.mul(v, c), f);
    return out;
}

inline BivPoly biv_dx(const BivPoly& p, const Zp& f) {
    BivPoly out;
    for (const auto& [key, v] : p)
        if (key.first > 0) biv_add(out, key.first - 1, key.second, f.mul(v, f.from_int(key.first)), f);
    return out;
}

inline BivPoly biv_dy(const BivPoly& p, const Zp& f) {
    BivPoly out;
    for (const auto& [key, v] : p)
        if (key.second > 0) biv_add(out, key.first, key.second - 1, f.mul(v, f.from_int(key.second)), f);
    return out;
}

// Substitute x_i -> sum_j M(i, j) x_j.
inline GradedPolynomial<Zp> substitute_linear(const GradedPolynomial<Zp>& p, const Mat<Zp>& m, const Zp& f) {
    const int nv = p.nvars();
    std::vector<GradedPolynomial<Zp>> images;
    for (int i = 0; i < nv; ++i) {
        GradedPolynomial<Zp> form(nv, 1, f);
        for (int j = 0; j < nv; ++j) form.add_term(Monomial::power(nv, j, 1), m(i, j));
        images.push_back(form);
    }
    GradedPolynomial<Zp> out(nv, p.degree(), f);
    for (const auto& [mono, c] : p.terms()) {
        GradedPolynomial<Zp> term = GradedPolynomial<Zp>::monomial(Monomial::unit(nv), c, f);
        for (int i = 0; i < nv; ++i)
            if (mono.exponent(i) > 0) term = term.times(images[static_cast<std::size_t>(i)].pow(mono.exponent(i)));
        out = out.plus(term);
    }
    return out;
}

}  // namespace detail

inline ProbeReport irreducibility_probe(const GradedPolynomial<Zp>& p, int trials, Rng rng) {
    if (p.nvars() != 3) throw PreconditionError("irreducibility probe works on plane forms (3 variables)");
    if (p.is_zero()) throw PreconditionError("irreducibility probe needs a nonzero polynomial");
    if (p.degree() < 2) throw PreconditionError("irreducibility probe needs degree >= 2");
    const Zp& field = p.field();
    const std::uint64_t bound = 2ull * static_cast<std::uint64_t>(p.degree()) * static_cast<std::uint64_t>(p.degree());
    if (field.modulus() <= bound)
        throw CharacteristicTooSmallError("probe needs p > 2*deg^2 for the criterion to be exact");

    ProbeReport report;
    for (int t = 0; t < std::max(trials, 1); ++t) {
        ++report.charts_tried;
        Rng stream = rng.split(static_cast<std::uint64_t>(t));

        Mat<Zp> change(3, 3);
        while (true) {
            for (Index i = 0; i < 3; ++i)
                for (Index j = 0; j < 3; ++j) change(i, j) = field.uniform(stream);
            if (rank<Zp>(change, field) == 3) break;
        }
        auto moved = detail::substitute_linear(p, change, field);

        detail::BivPoly f;
        int deg_x = 0, deg_y = 0, total = 0;
        for (const auto& [mono, c] : moved.terms()) {
            detail::biv_add(f, mono.exponent(0), mono.exponent(1), c, field);
            deg_x = std::max(deg_x, mono.exponent(0));
            deg_y = std::max(deg_y, mono.exponent(1));
            total = std::max(total, mono.exponent(0) + mono.exponent(1));
        }
        if (deg_x < 1 || deg_y < 1 || total != p.degree()) continue;  // degenerate chart

        const detail::BivPoly fx = detail::biv_dx(f, field);
        const detail::BivPoly fy = detail::biv_dy(f, field);

        // Columns of the closedness system, one per unknown coefficient.
        std::vector<detail::BivPoly> columns;
        for (int i = 0; i <= deg_x - 1; ++i)
            for (int j = 0; j <= deg_y; ++j) {
                detail::BivPoly col;
                if (j > 0) {
                    for (const auto& [key, v] : f)
                        detail::biv_add(col, key.first + i, key.second + j - 1, field.mul(v, field.from_int(j)),
                                        field);
                }
                for (const auto& [key, v] : fy)
                    detail::biv_add(col, key.first + i, key.second + j, field.neg(v), field);
                columns.push_back(std::move(col));
            }
        for (int i = 0; i <= deg_x; ++i)
            for (int j = 0; j <= deg_y - 2; ++j) {
                detail::BivPoly col;
                if (i > 0) {
                    for (const auto& [key, v] : f)
                        detail::biv_add(col, key.first + i - 1, key.second + j,
                                        field.neg(field.mul(v, field.from_int(i))), field);
                }
                for (const auto& [key, v] : fx)
                    detail::biv_add(col, key.first + i, key.second + j, v, field);
                columns.push_back(std::move(col));
            }

        std::map<std::pair<int, int>, Index> row_index;
        for (const auto& col : columns)
            for (const auto& [key, v] : col)
                if (!row_index.count(key)) row_index.emplace(key, static_cast<Index>(row_index.size()));

        Mat<Zp> system(static_cast<Index>(row_index.size()), static_cast<Index>(columns.size()));
        system.setZero();
        for (std::size_t j = 0; j < columns.size(); ++j)
            for (const auto& [key, v] : columns[j]) system(row_index.at(key), static_cast<Index>(j)) = v;

        const Index nullity = static_cast<Index>(columns.size()) - rank<Zp>(system, field);
        report.good_chart_found = true;
        report.nullspace_dim = nullity;
        if (nullity == 0) {
            report.verdict = ProbeVerdict::NotDecomposableEvidence;
            report.detail = "trivial null space on a good chart";
        } else {
            report.verdict = ProbeVerdict::DecomposableDetected;
            report.detail = "nontrivial null space on a good chart";
        }
        return report;
    }
    report.verdict = ProbeVerdict::Inconclusive;
    report.detail = "no good affine chart found";
    return report;
}

// Exact integer identities from the dimension bookkeeping of the
// decomposable locus: the codimension count for P(J^{2d-4}), the dimension
// of the balanced Segre image, the expected-dimension identity, and the
// inequality chain showing the two bounds on dim D_J^{2d-6} are
// incompatible for every d >= 2.
struct ArithCheckItem {
    std::string name;
    bool applicable = false;
    bool pass = true;
    long long lhs = 0;
    long long rhs = 0;
};

struct ArithCheckReport {
    int d = 0;
    std::vector<ArithCheckItem> items;
    bool all_pass = true;
};

inline ArithCheckReport dimension_arithmetic_check(int d) {
    if (d < 3) throw PreconditionError("dimension arithmetic is checked for d >= 3");
    auto s = [](int k) -> long long { return k < 0 ? 0 : static_cast<long long>(k + 2) * (k + 1) / 2; };

    ArithCheckReport report;
    report.d = d;
    auto add = [&](const std::string& name, bool applicable, long long lhs, long long rhs) {
        ArithCheckItem item{name, applicable, !applicable || lhs == rhs, lhs, rhs};
        if (!item.pass) report.all_pass = false;
        report.items.push_back(item);
    };

    const long long dd = d;
    add("proj-jacobian-dim", true, s(2 * d - 4) - s(d - 2) - 1, (3 * dd * dd - 9 * dd + 4) / 2);
    add("segre-image-dim", true, 2 * (s(d - 2) - 1), (dd - 2) * (dd + 1));
    add("expected-dim", true, (dd - 2) * (dd + 1) / 2 - 1,
        2 * (s(d - 2) - 1) + (s(2 * d - 4) - s(d - 2) - 1) - (s(2 * d - 4) - 1));
    add("genus-minus-one", true, (dd - 1) * (dd - 2) / 2 - 1, dd * (dd - 3) / 2);
    // The closed form for the upper bound holds from d = 4 on; d = 3 is
    // settled separately (one-dimensional deformation space).
    add("upper-bound-formula", d >= 4, s(2 * d - 6) - s(d) - s(d - 6) - s(d - 5) + 9, (dd - 1) * (dd - 4) / 2);
    add("bounds-incompatible", true, dd * (dd - 3) < (dd - 1) * (dd - 4) ? 1 : 0, d < 2 ? 1 : 0);
    return report;
}

}  // namespace jacring
