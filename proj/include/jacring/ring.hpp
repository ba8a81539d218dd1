#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jacring/linalg.hpp"
#include "jacring/poly.hpp"

namespace jacring {

// Graded Artinian quotient R = S/I of the polynomial ring by a homogeneous
// ideal, computed degreewise up to socle_degree + 1. Two constructions are
// supported: the Jacobian ring of a hypersurface (I spanned by the partial
// derivatives) and a monomial complete intersection (x_i^{a_i}).
//
// The basis of each graded piece R^k is the set of standard monomials: the
// non-pivot columns of the row echelon form of I^k under graded lex. When
// every ideal generator is a single monomial the pivot set is just the set
// of divisible monomials, and no elimination is performed; the result is
// identical to the dense route (the RREF of those rows is a scaled identity
// on the same pivot columns), which is checked in the test suite.
template <class F>
class JacobianRing {
public:
    struct BuildOptions {
        bool force_dense = false;  // disable the monomial-ideal shortcut
    };

    static JacobianRing jacobian(const GradedPolynomial<F>& hypersurface, BuildOptions opts = {}) {
        const int d = hypersurface.degree();
        const int nvars = hypersurface.nvars();
        if (d < 2) throw PreconditionError("hypersurface degree must be >= 2");
        if (nvars < 2) throw PreconditionError("need at least two variables");
        const std::uint64_t ch = hypersurface.field().characteristic();
        if (ch != 0 && ch <= static_cast<std::uint64_t>(d))
            throw CharacteristicTooSmallError("jacobian ring needs char 0 or p > d");
        std::vector<GradedPolynomial<F>> gens;
        gens.reserve(static_cast<std::size_t>(nvars));
        for (int i = 0; i < nvars; ++i) gens.push_back(hypersurface.partial_derivative(i));
        const int socle = nvars * (d - 2);
        return JacobianRing(hypersurface.field(), nvars, socle, std::move(gens), hypersurface, d, opts);
    }

    static JacobianRing monomial_ci(const std::vector<int>& exponents, const F& field, BuildOptions opts = {}) {
        if (exponents.empty()) throw PreconditionError("monomial_ci needs at least one exponent");
        const int nvars = static_cast<int>(exponents.size());
        int socle = 0;
        std::vector<GradedPolynomial<F>> gens;
        for (int i = 0; i < nvars; ++i) {
            const int a = exponents[static_cast<std::size_t>(i)];
            if (a < 2) throw PreconditionError("monomial_ci exponents must be >= 2");
            socle += a - 1;
            gens.push_back(GradedPolynomial<F>::monomial(Monomial::power(nvars, i, a), field.one(), field));
        }
        return JacobianRing(field, nvars, socle, std::move(gens), std::nullopt, std::nullopt, opts);
    }

    const F& field() const { return field_; }
    int nvars() const { return nvars_; }
    int projective_n() const { return nvars_ - 1; }
    int socle_degree() const { return socle_degree_; }
    bool smooth() const { return smooth_; }

    const std::optional<GradedPolynomial<F>>& hypersurface() const { return hypersurface_; }

    int hypersurface_degree() const {
        if (!degree_) throw PreconditionError("ring was not built from a hypersurface");
        return *degree_;
    }

    const std::vector<GradedPolynomial<F>>& ideal_generators() const { return generators_; }

    Index dim(int k) const {
        if (k < 0 || k > socle_degree_ + 1)
            throw DegreeOutOfRangeError("degree " + std::to_string(k) + " outside [0, N+1]");
        return static_cast<Index>(piece(k).std_monomials.size());
    }

    // r_0 .. r_N.
    std::vector<Index> hilbert_function() const {
        std::vector<Index> dims;
        dims.reserve(static_cast<std::size_t>(socle_degree_) + 1);
        for (int k = 0; k <= socle_degree_; ++k) dims.push_back(dim(k));
        return dims;
    }

    const std::vector<Monomial>& monomials(int k) const { return piece(k).s_basis; }
    const BasisIndex& monomial_index(int k) const { return piece(k).s_index; }
    const std::vector<Monomial>& std_monomials(int k) const { return piece(k).std_monomials; }
    Index ideal_dim(int k) const { return static_cast<Index>(piece(k).pivot_cols.size()); }

    // Coordinates of f modulo I^deg(f) on the standard monomials of its
    // degree. Linear, idempotent through lift(), zero exactly on I.
    Vec<F> normal_form(const GradedPolynomial<F>& f) const {
        const Piece& pc = piece(f.degree());
        Vec<F> v = f.coordinates(pc.s_basis, pc.s_index);
        if (!pc.monomial_path) v = reduce_against(pc.ideal_echelon, std::move(v), field_);
        Vec<F> out(static_cast<Index>(pc.std_cols.size()));
        for (std::size_t i = 0; i < pc.std_cols.size(); ++i) out(static_cast<Index>(i)) = v(pc.std_cols[i]);
        return out;
    }

    GradedPolynomial<F> lift(int k, const Vec<F>& coords) const {
        const Piece& pc = piece(k);
        if (coords.size() != static_cast<Index>(pc.std_monomials.size()))
            throw PreconditionError("coordinate length does not match dim R^" + std::to_string(k));
        GradedPolynomial<F> out(nvars_, k, field_);
        for (Index i = 0; i < coords.size(); ++i)
            out.add_term(pc.std_monomials[static_cast<std::size_t>(i)], coords(i));
        return out;
    }

    GradedPolynomial<F> random_element(int k, Rng& rng) const {
        const Piece& pc = piece(k);
        GradedPolynomial<F> out(nvars_, k, field_);
        for (const auto& m : pc.std_monomials) out.add_term(m, field_.uniform(rng));
        return out;
    }

    GradedPolynomial<F> random_nonzero_element(int k, Rng& rng) const {
        for (int attempt = 0; attempt < 64; ++attempt) {
            auto f = random_element(k, rng);
            if (!f.is_zero()) return f;
        }
        throw InternalError("failed to draw a nonzero element of R^" + std::to_string(k));
    }

    // Random element of I^k: a random coefficient combination of the
    // monomial multiples of the generators.
    GradedPolynomial<F> random_ideal_element(int k, Rng& rng) const {
        GradedPolynomial<F> out(nvars_, k, field_);
        for (const auto& g : generators_) {
            if (g.is_zero()) continue;
            const int md = k - g.degree();
            if (md < 0) continue;
            for (const auto& m : monomial_basis(nvars_ - 1, md))
                out = out.plus(g.times(GradedPolynomial<F>::monomial(m, field_.uniform(rng), field_)));
        }
        return out;
    }

    // Socle coordinate (in R^N) of every monomial of S^N, cached once.
    const Vec<F>& socle_coordinates() const {
        std::call_once(socle_cache_->flag, [this] {
            const Piece& pc = piece(socle_degree_);
            const Index sN = static_cast<Index>(pc.s_basis.size());
            Vec<F> table(sN);
            for (Index j = 0; j < sN; ++j) {
                Vec<F> unit(sN);
                for (Index i = 0; i < sN; ++i) unit(i) = field_.zero();
                unit(j) = field_.one();
                if (!pc.monomial_path) unit = reduce_against(pc.ideal_echelon, std::move(unit), field_);
                table(j) = pc.std_cols.empty() ? field_.zero() : unit(pc.std_cols[0]);
            }
            socle_cache_->table = std::move(table);
        });
        return socle_cache_->table;
    }

private:
    struct Piece {
        std::vector<Monomial> s_basis;
        BasisIndex s_index;
        std::vector<Index> pivot_cols;
        std::vector<Index> std_cols;
        std::vector<Monomial> std_monomials;
        Echelon<F> ideal_echelon;  // unused on the monomial path
        bool monomial_path = false;
    };

    struct SocleCache {
        std::once_flag flag;
        Vec<F> table;
    };

    JacobianRing(const F& field, int nvars, int socle_degree, std::vector<GradedPolynomial<F>> gens,
                 std::optional<GradedPolynomial<F>> hypersurface, std::optional<int> degree, BuildOptions opts)
        : field_(field),
          nvars_(nvars),
          socle_degree_(socle_degree),
          degree_(degree),
          hypersurface_(std::move(hypersurface)),
          generators_(std::move(gens)),
          socle_cache_(std::make_shared<SocleCache>()) {
        bool monomial_ideal = true;
        std::vector<Monomial> gen_monomials;
        for (const auto& g : generators_) {
            if (g.is_zero()) continue;
            if (g.terms().size() != 1) {
                monomial_ideal = false;
                break;
            }
            gen_monomials.push_back(g.terms().begin()->first);
        }
        const bool fast = monomial_ideal && !opts.force_dense;

        pieces_.reserve(static_cast<std::size_t>(socle_degree_) + 2);
        for (int k = 0; k <= socle_degree_ + 1; ++k) {
            Piece pc;
            pc.s_basis = monomial_basis(nvars_ - 1, k);
            pc.s_index = BasisIndex(pc.s_basis);
            const Index sk = static_cast<Index>(pc.s_basis.size());
            pc.monomial_path = fast;
            if (fast) {
                for (Index c = 0; c < sk; ++c) {
                    bool in_ideal = false;
                    for (const auto& g : gen_monomials)
                        if (g.divides(pc.s_basis[static_cast<std::size_t>(c)])) {
                            in_ideal = true;
                            break;
                        }
                    (in_ideal ? pc.pivot_cols : pc.std_cols).push_back(c);
                }
            } else {
                std::vector<Vec<F>> rows;
                for (const auto& g : generators_) {
                    if (g.is_zero()) continue;
                    const int md = k - g.degree();
                    if (md < 0) continue;
                    for (const auto& m : monomial_basis(nvars_ - 1, md)) {
                        auto prod = g.times(GradedPolynomial<F>::monomial(m, field_.one(), field_));
                        rows.push_back(prod.coordinates(pc.s_basis, pc.s_index));
                    }
                }
                Mat<F> mat(static_cast<Index>(rows.size()), sk);
                for (Index i = 0; i < mat.rows(); ++i) mat.row(i) = rows[static_cast<std::size_t>(i)].transpose();
                pc.ideal_echelon = row_echelon(mat, field_);
                pc.pivot_cols = pc.ideal_echelon.pivots;
                pc.std_cols = pc.ideal_echelon.free_columns();
            }
            pc.std_monomials.reserve(pc.std_cols.size());
            for (Index c : pc.std_cols) pc.std_monomials.push_back(pc.s_basis[static_cast<std::size_t>(c)]);
            pieces_.push_back(std::move(pc));
        }
        smooth_ = pieces_.back().std_monomials.empty();
    }

    const Piece& piece(int k) const {
        if (k < 0 || k > socle_degree_ + 1)
            throw DegreeOutOfRangeError("degree " + std::to_string(k) + " outside [0, N+1]");
        return pieces_[static_cast<std::size_t>(k)];
    }

    F field_;
    int nvars_;
    int socle_degree_;
    std::optional<int> degree_;
    std::optional<GradedPolynomial<F>> hypersurface_;
    std::vector<GradedPolynomial<F>> generators_;
    std::vector<Piece> pieces_;
    bool smooth_ = false;
    std::shared_ptr<SocleCache> socle_cache_;
};

template <class F>
JacobianRing<F> build_jacobian_ring(const GradedPolynomial<F>& hypersurface,
                                    typename JacobianRing<F>::BuildOptions opts = {}) {
    return JacobianRing<F>::jacobian(hypersurface, opts);
}

// Matrix, rank and kernel of multiplication by alpha from R^s to R^{s+e},
// in the standard monomial bases.
template <class F>
struct MultiplicationReport {
    GradedPolynomial<F> alpha;
    int source_degree = 0;
    int alpha_degree = 0;
    Mat<F> matrix;
    Index rank = 0;
    std::vector<Vec<F>> kernel;

    Index kernel_dim() const { return static_cast<Index>(kernel.size()); }
};

template <class F>
MultiplicationReport<F> multiplication_operator(const JacobianRing<F>& ring, const GradedPolynomial<F>& alpha,
                                                int s) {
    const int e = alpha.degree();
    if (s < 0 || s + e > ring.socle_degree() + 1)
        throw DegreeOutOfRangeError("multiplication R^" + std::to_string(s) + " -> R^" + std::to_string(s + e) +
                                    " outside computed range");
    const auto& source = ring.std_monomials(s);
    const Index rows = ring.dim(s + e);
    Mat<F> m(rows, static_cast<Index>(source.size()));
    for (std::size_t j = 0; j < source.size(); ++j) {
        auto prod = alpha.times(GradedPolynomial<F>::monomial(source[j], ring.field().one(), ring.field()));
        m.col(static_cast<Index>(j)) = ring.normal_form(prod);
    }
    RankMatrix<F> rm(std::move(m), ring.field());
    MultiplicationReport<F> report{alpha, s, e, rm.entries(), rm.rank(), rm.kernel_basis()};
    if (report.rank + report.kernel_dim() != ring.dim(s))
        throw InternalError("rank-nullity mismatch in multiplication operator");
    return report;
}

// The r_a x r_{N-a} matrix of socle coefficients of products of basis
// monomials; full rank is the perfect-pairing condition.
template <class F>
struct PairingReport {
    int degree_a = 0;
    Mat<F> matrix;
    Index rank = 0;
    bool perfect = false;
};

template <class F>
PairingReport<F> gorenstein_pairing_check(const JacobianRing<F>& ring, int a) {
    if (!ring.smooth()) throw SingularRingError("pairing check requires a smooth (Artinian) ring");
    const int N = ring.socle_degree();
    if (a < 0 || a > N) throw DegreeOutOfRangeError("pairing degree outside [0, N]");
    const auto& left = ring.std_monomials(a);
    const auto& right = ring.std_monomials(N - a);
    const auto& socle = ring.socle_coordinates();
    const auto& index_n = ring.monomial_index(N);
    Mat<F> m(static_cast<Index>(left.size()), static_cast<Index>(right.size()));
    for (std::size_t i = 0; i < left.size(); ++i)
        for (std::size_t j = 0; j < right.size(); ++j)
            m(static_cast<Index>(i), static_cast<Index>(j)) = socle(index_n.at(left[i].times(right[j])));
    PairingReport<F> report;
    report.degree_a = a;
    report.rank = rank<F>(m, ring.field());
    report.matrix = std::move(m);
    report.perfect = report.matrix.rows() == report.matrix.cols() && report.rank == report.matrix.rows();
    return report;
}

// Kernel dimensions k_s(alpha) for all source degrees, together with the
// dimension identity r_{N-e-s} - k_{N-e-s} = r_s - k_s and the
// one-dimensionality of the top quotient piece.
template <class F>
struct AnnihilatorReport {
    int alpha_degree = 0;
    struct Row {
        int s = 0;
        Index r_s = 0;
        Index k_s = 0;
        Index quotient_dim = 0;  // r_s - k_s
        bool identity_holds = false;
    };
    std::vector<Row> rows;
    bool identity_all = false;
    Index top_quotient_dim = 0;
    bool top_is_one_dimensional = false;
};

template <class F>
AnnihilatorReport<F> annihilator_quotient_dims(const JacobianRing<F>& ring, const GradedPolynomial<F>& alpha) {
    if (!ring.smooth()) throw SingularRingError("annihilator dimensions require a smooth ring");
    const auto& f = ring.field();
    Vec<F> nf = ring.normal_form(alpha);
    bool zero = true;
    for (Index i = 0; i < nf.size(); ++i)
        if (!f.is_zero(nf(i))) zero = false;
    if (zero) throw AlphaInIdealError("alpha lies in the ideal; the quotient is not defined");

    const int N = ring.socle_degree();
    const int e = alpha.degree();
    AnnihilatorReport<F> report;
    report.alpha_degree = e;
    std::vector<Index> kdim(static_cast<std::size_t>(N - e) + 1, 0);
    for (int s = 0; s <= N - e; ++s) {
        auto mult = multiplication_operator(ring, alpha, s);
        kdim[static_cast<std::size_t>(s)] = mult.kernel_dim();
    }
    report.identity_all = true;
    for (int s = 0; s <= N - e; ++s) {
        typename AnnihilatorReport<F>::Row row;
        row.s = s;
        row.r_s = ring.dim(s);
        row.k_s = kdim[static_cast<std::size_t>(s)];
        row.quotient_dim = row.r_s - row.k_s;
        const int dual = N - e - s;
        const Index dual_quot = ring.dim(dual) - kdim[static_cast<std::size_t>(dual)];
        row.identity_holds = dual_quot == row.quotient_dim;
        if (!row.identity_holds) report.identity_all = false;
        report.rows.push_back(row);
    }
    report.top_quotient_dim = ring.dim(N - e) - kdim[static_cast<std::size_t>(N - e)];
    report.top_is_one_dimensional = report.top_quotient_dim == 1;
    return report;
}

// A generator of the socle R^N (unique standard monomial for smooth rings).
template <class F>
struct SocleGenerator {
    Monomial representative;
    Vec<F> coordinates;  // length r_N = 1
};

template <class F>
SocleGenerator<F> socle_generator(const JacobianRing<F>& ring) {
    if (!ring.smooth()) throw SingularRingError("socle generator requires a smooth ring");
    const auto& basis = ring.std_monomials(ring.socle_degree());
    if (basis.size() != 1) throw InternalError("smooth ring with dim R^N != 1");
    SocleGenerator<F> gen;
    gen.representative = basis.front();
    Vec<F> coords(1);
    coords(0) = ring.field().one();
    gen.coordinates = coords;
    return gen;
}

}  // namespace jacring
