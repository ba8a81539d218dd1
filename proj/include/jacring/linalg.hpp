#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "jacring/fields.hpp"

namespace jacring {

template <class F>
using Mat = Eigen::Matrix<typename F::Elem, Eigen::Dynamic, Eigen::Dynamic>;

template <class F>
using Vec = Eigen::Matrix<typename F::Elem, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

// Reduced row echelon form of the row space, plus the pivot columns. The
// RREF of a matrix is unique, so it (and everything derived from it: rank,
// kernel vectors, normal forms) is independent of the elimination route.
template <class F>
struct Echelon {
    Mat<F> rref;                // rank x cols
    std::vector<Index> pivots;  // strictly increasing column indices
    Index cols = 0;

    Index rank() const { return static_cast<Index>(pivots.size()); }

    std::vector<Index> free_columns() const {
        std::vector<Index> free;
        std::size_t k = 0;
        for (Index c = 0; c < cols; ++c) {
            if (k < pivots.size() && pivots[k] == c)
                ++k;
            else
                free.push_back(c);
        }
        return free;
    }
};

namespace detail {

// Dense Gauss-Jordan over F_p with "first nonzero" pivoting: columns are
// scanned left to right, the pivot is the first row (lowest index) with a
// nonzero entry.
inline Echelon<Zp> echelon_zp(Mat<Zp> m, const Zp& f) {
    const Index rows = m.rows(), cols = m.cols();
    Echelon<Zp> ech;
    ech.cols = cols;
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index piv = -1;
        for (Index i = r; i < rows; ++i) {
            if (m(i, c) != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != r) m.row(piv).swap(m.row(r));
        const std::uint64_t scale = f.inv(m(r, c));
        for (Index k = c; k < cols; ++k) m(r, k) = f.mul(m(r, k), scale);
        for (Index i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            const std::uint64_t t = m(i, c);
            for (Index k = c; k < cols; ++k) m(i, k) = f.sub(m(i, k), f.mul(t, m(r, k)));
        }
        ech.pivots.push_back(c);
        ++r;
    }
    ech.rref = m.topRows(static_cast<Index>(ech.pivots.size()));
    return ech;
}

// Fraction-free (Bareiss) elimination over Q: rows are first scaled to
// integers, the forward pass stays in Z with exact one-step divisions, and
// only the final normalization to RREF divides.
inline Echelon<Rationals> echelon_rat(const Mat<Rationals>& m, const Rationals&) {
    const Index rows = m.rows(), cols = m.cols();
    Eigen::Matrix<mpz_class, Eigen::Dynamic, Eigen::Dynamic> b(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        mpz_class lcm_den = 1;
        for (Index j = 0; j < cols; ++j) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (Index j = 0; j < cols; ++j) {
            mpq_class scaled = m(i, j) * mpq_class(lcm_den);
            b(i, j) = scaled.get_num();  // denominator is 1 after scaling
        }
        mpz_class content = 0;
        for (Index j = 0; j < cols; ++j) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), b(i, j).get_mpz_t());
        if (content > 1)
            for (Index j = 0; j < cols; ++j) b(i, j) /= content;
    }

    std::vector<Index> pivots;
    mpz_class prev = 1;
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index piv = -1;
        for (Index i = r; i < rows; ++i) {
            if (b(i, c) != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != r) b.row(piv).swap(b.row(r));
        for (Index i = r + 1; i < rows; ++i) {
            for (Index k = c + 1; k < cols; ++k) {
                b(i, k) = b(i, k) * b(r, c) - b(i, c) * b(r, k);
                mpz_divexact(b(i, k).get_mpz_t(), b(i, k).get_mpz_t(), prev.get_mpz_t());
            }
            b(i, c) = 0;
        }
        prev = b(r, c);
        pivots.push_back(c);
        ++r;
    }

    const Index rank = static_cast<Index>(pivots.size());
    Mat<Rationals> rref(rank, cols);
    for (Index i = 0; i < rank; ++i)
        for (Index j = 0; j < cols; ++j) rref(i, j) = mpq_class(b(i, j));
    for (Index i = rank - 1; i >= 0; --i) {
        mpq_class inv_piv = 1 / rref(i, pivots[static_cast<std::size_t>(i)]);
        for (Index j = pivots[static_cast<std::size_t>(i)]; j < cols; ++j) rref(i, j) *= inv_piv;
        for (Index u = 0; u < i; ++u) {
            mpq_class t = rref(u, pivots[static_cast<std::size_t>(i)]);
            if (sgn(t) == 0) continue;
            for (Index j = pivots[static_cast<std::size_t>(i)]; j < cols; ++j) rref(u, j) -= t * rref(i, j);
        }
    }

    Echelon<Rationals> ech;
    ech.rref = std::move(rref);
    ech.pivots = std::move(pivots);
    ech.cols = cols;
    return ech;
}

inline Echelon<Zp> row_echelon_impl(const Mat<Zp>& m, const Zp& f) { return echelon_zp(m, f); }
inline Echelon<Rationals> row_echelon_impl(const Mat<Rationals>& m, const Rationals& f) { return echelon_rat(m, f); }

}  // namespace detail

template <class F>
Echelon<F> row_echelon(const Mat<F>& m, const F& field) {
    return detail::row_echelon_impl(m, field);
}

template <class F>
Index rank(const Mat<F>& m, const F& field) {
    return row_echelon(m, field).rank();
}

// Basis of the right kernel, derived from the RREF. One vector per free
// column (ascending), each normalized so its first nonzero coordinate is 1.
template <class F>
std::vector<Vec<F>> kernel_basis_from(const Echelon<F>& ech, const F& field) {
    std::vector<Vec<F>> basis;
    const auto free = ech.free_columns();
    basis.reserve(free.size());
    for (Index fc : free) {
        Vec<F> v(ech.cols);
        for (Index j = 0; j < ech.cols; ++j) v(j) = field.zero();
        v(fc) = field.one();
        for (std::size_t i = 0; i < ech.pivots.size(); ++i)
            v(ech.pivots[i]) = field.neg(ech.rref(static_cast<Index>(i), fc));
        for (Index j = 0; j < ech.cols; ++j) {
            if (!field.is_zero(v(j))) {
                const auto scale = field.inv(v(j));
                for (Index k = j; k < ech.cols; ++k) v(k) = field.mul(v(k), scale);
                break;
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class F>
std::vector<Vec<F>> kernel_basis(const Mat<F>& m, const F& field) {
    return kernel_basis_from(row_echelon(m, field), field);
}

template <class F>
Vec<F> apply(const Mat<F>& m, const Vec<F>& v, const F& field) {
    Vec<F> out(m.rows());
    for (Index i = 0; i < m.rows(); ++i) {
        auto acc = field.zero();
        for (Index j = 0; j < m.cols(); ++j) acc = field.add(acc, field.mul(m(i, j), v(j)));
        out(i) = acc;
    }
    return out;
}

// Reduce v against the RREF rows (v -= v[pivot] * row). The result has
// zeros on all pivot columns; restricted to the free columns it is the
// canonical representative of v modulo the row space.
template <class F>
Vec<F> reduce_against(const Echelon<F>& ech, Vec<F> v, const F& field) {
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
        const auto t = v(ech.pivots[i]);
        if (field.is_zero(t)) continue;
        for (Index j = ech.pivots[i]; j < ech.cols; ++j)
            v(j) = field.sub(v(j), field.mul(t, ech.rref(static_cast<Index>(i), j)));
    }
    return v;
}

// Exact matrix with a compute-once echelon cache, safe under concurrent
// reads. Entries are immutable after construction.
template <class F>
class RankMatrix {
public:
    RankMatrix(Mat<F> entries, const F& field)
        : field_(field), entries_(std::move(entries)), cache_(std::make_shared<Cache>()) {}

    const Mat<F>& entries() const { return entries_; }
    const F& field() const { return field_; }
    Index rows() const { return entries_.rows(); }
    Index cols() const { return entries_.cols(); }

    const Echelon<F>& echelon() const {
        std::call_once(cache_->flag, [this] { cache_->data = row_echelon(entries_, field_); });
        return cache_->data;
    }

    Index rank() const { return echelon().rank(); }

    std::vector<Vec<F>> kernel_basis() const { return kernel_basis_from(echelon(), field_); }

private:
    struct Cache {
        std::once_flag flag;
        Echelon<F> data;
    };

    F field_;
    Mat<F> entries_;
    std::shared_ptr<Cache> cache_;
};

// Consensus rank report over several prime fields. The maximum of the
// per-prime ranks is a certified lower bound for the rank of the same
// integer construction over Q.
struct MultiPrimeRankReport {
    std::vector<std::pair<std::uint64_t, Index>> per_prime;
    Index consensus = 0;  // max over primes
    bool agree = true;
    bool lower_bound_only = true;  // mod-p ranks never certify more than a lower bound
};

inline MultiPrimeRankReport multi_prime_rank(const std::function<Mat<Zp>(const Zp&)>& build,
                                             const std::vector<std::uint64_t>& primes) {
    if (primes.empty()) throw PreconditionError("multi_prime_rank requires at least one prime");
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t j = i + 1; j < primes.size(); ++j)
            if (primes[i] == primes[j]) throw PreconditionError("primes must be distinct");
    MultiPrimeRankReport report;
    for (std::uint64_t p : primes) {
        Zp field(p);
        Index r = rank<Zp>(build(field), field);
        report.per_prime.emplace_back(p, r);
        report.consensus = std::max(report.consensus, r);
    }
    for (const auto& [p, r] : report.per_prime)
        if (r != report.consensus) report.agree = false;
    return report;
}

}  // namespace jacring
