#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jacring/lefschetz.hpp"
#include "jacring/parallel.hpp"
#include "jacring/ring.hpp"

namespace jacring {

// The polynomial model of the infinitesimal variation data of a smooth
// plane curve of degree d: holomorphic 1-forms live in R^{d-3}, H^1 of the
// structure sheaf in R^{2d-3}, and first-order deformations coming from the
// linear system act through R^d. Cup products are ring multiplication in
// these identifications.
template <class F>
class PlaneCurveIVHS {
public:
    explicit PlaneCurveIVHS(JacobianRing<F> ring) : ring_(std::move(ring)) {
        if (ring_.nvars() != 3) throw PreconditionError("plane-curve model needs 3 variables");
        const int d = ring_.hypersurface_degree();
        if (d < 3) throw PreconditionError("plane-curve model needs degree >= 3");
        if (!ring_.smooth()) throw SingularRingError("plane curve is singular");
        const Index g = ring_.dim(d - 3);
        if (g != static_cast<Index>(d - 1) * (d - 2) / 2)
            throw InternalError("genus mismatch: dim R^{d-3} != (d-1)(d-2)/2");
        if (ring_.dim(2 * d - 3) != g) throw InternalError("dim R^{2d-3} != genus (Gorenstein symmetry)");
    }

    const JacobianRing<F>& ring() const { return ring_; }
    int degree() const { return ring_.hypersurface_degree(); }
    Index genus() const { return ring_.dim(degree() - 3); }

    int forms_degree() const { return degree() - 3; }        // H^0(omega_X) <-> R^{d-3}
    int h1_degree() const { return 2 * degree() - 3; }       // H^1(O_X)     <-> R^{2d-3}
    int deformation_degree() const { return degree(); }      // Img(KS)      <-> R^d

private:
    JacobianRing<F> ring_;
};

// Rank of the cup product with xi, i.e. of xi * : R^{d-3} -> R^{2d-3}.
// Zero exactly when xi lies in the Jacobian ideal.
template <class F>
Index cup_product_rank(const PlaneCurveIVHS<F>& model, const GradedPolynomial<F>& xi) {
    if (xi.degree() != model.degree())
        throw DegreeOutOfRangeError("deformation must have degree d = " + std::to_string(model.degree()));
    return multiplication_operator(model.ring(), xi, model.forms_degree()).rank;
}

// Sampled rank data for the cup-product action. best_rank is a certified
// lower bound for the maximal rank d_M over the deformation space; the
// histogram has one entry per sample (max across primes).
struct VariationReport {
    int samples = 0;
    std::vector<std::uint64_t> primes;
    std::map<Index, int> histogram;
    Index best_rank = 0;
    Index genus = 0;
    bool reached_genus = false;
    std::string witness;
    std::string witness_source;
    std::vector<std::pair<std::uint64_t, Index>> witness_certificates;
};

// One integer-coefficient curve viewed over several prime fields (or over Q
// when the prime list is empty). Samples are drawn once with integer
// coefficients and reduced modulo every prime, so a witness is a single
// polynomial with per-prime rank certificates.
class PlaneCurveScan {
public:
    PlaneCurveScan(GradedPolynomial<Rationals> curve, std::vector<std::uint64_t> primes)
        : curve_(std::move(curve)), primes_(std::move(primes)) {
        if (primes_.empty()) {
            q_model_.emplace(PlaneCurveIVHS<Rationals>(JacobianRing<Rationals>::jacobian(curve_)));
        } else {
            for (std::uint64_t p : primes_) {
                Zp field(p);
                auto ring = JacobianRing<Zp>::jacobian(reduce_mod(curve_, field));
                if (!ring.smooth())
                    throw SingularRingError("curve is singular modulo " + std::to_string(p));
                p_models_.emplace_back(p, PlaneCurveIVHS<Zp>(std::move(ring)));
            }
        }
    }

    int degree() const { return curve_.degree(); }

    Index genus() const {
        return q_model_ ? q_model_->genus() : p_models_.front().second.genus();
    }

    const GradedPolynomial<Rationals>& curve() const { return curve_; }

    // Rank of one deformation over every field in the scan; returns the max
    // and fills the per-prime certificate list.
    Index rank_of(const GradedPolynomial<Rationals>& xi,
                  std::vector<std::pair<std::uint64_t, Index>>* certificates = nullptr) const {
        Index best = 0;
        if (q_model_) {
            best = cup_product_rank(*q_model_, xi);
            if (certificates) certificates->emplace_back(0, best);
            return best;
        }
        for (const auto& [p, model] : p_models_) {
            Index r = cup_product_rank(model, reduce_mod(xi, Zp(p)));
            if (certificates) certificates->emplace_back(p, r);
            best = std::max(best, r);
        }
        return best;
    }

    // Best sampled cup-product rank over `samples` uniform draws. Samples
    // evaluate in parallel on derived streams and merge in index order, so
    // the report does not depend on the worker count.
    VariationReport estimate_dM(int samples, Rng rng, int threads = 1) const {
        if (samples < 1) throw PreconditionError("estimate_dM needs samples >= 1");
        VariationReport report = make_report();
        auto drawn = evaluate_samples(rng, 0, samples, threads);
        for (int i = 0; i < samples; ++i)
            merge_sample(report, *drawn[static_cast<std::size_t>(i)], "sample[" + std::to_string(i) + "]");
        return report;
    }

    // Searches for a deformation of rank exactly g. The d-th power of the
    // sum of variables (the classical Lefschetz witness) is tried first,
    // then random draws; on a miss the sample budget escalates to at least
    // 100 before reporting not-found. Never asserts the negative. The
    // report covers exactly the samples up to the first success, whatever
    // the worker count.
    VariationReport verify_I_maximal(int samples, Rng rng, int threads = 1) const {
        if (samples < 1) throw PreconditionError("verify_I_maximal needs samples >= 1");
        VariationReport report = make_report();
        auto slp_xi = sum_of_variables(2, Rationals{}).pow(degree());
        merge_sample(report, evaluate(slp_xi), "slp-power");
        if (report.reached_genus) return report;
        const int budget = std::max(samples, 100);
        constexpr int kBlock = 8;
        for (int base = 0; base < budget && !report.reached_genus; base += kBlock) {
            const int block = std::min(kBlock, budget - base);
            auto drawn = evaluate_samples(rng, base, block, threads);
            for (int j = 0; j < block; ++j) {
                const int i = base + j;
                merge_sample(report, *drawn[static_cast<std::size_t>(j)], "sample[" + std::to_string(i) + "]");
                if (report.reached_genus) break;
            }
        }
        return report;
    }

private:
    struct Evaluated {
        GradedPolynomial<Rationals> xi;
        std::vector<std::pair<std::uint64_t, Index>> certificates;
        Index rank = 0;
    };

    VariationReport make_report() const {
        VariationReport report;
        report.primes = primes_;
        report.genus = genus();
        return report;
    }

    Evaluated evaluate(const GradedPolynomial<Rationals>& xi) const {
        Evaluated e{xi, {}, 0};
        e.rank = rank_of(xi, &e.certificates);
        return e;
    }

    // Samples base..base+count-1 on streams derived from the sample index.
    std::vector<std::optional<Evaluated>> evaluate_samples(const Rng& rng, int base, int count,
                                                           int threads) const {
        return parallel_map<std::optional<Evaluated>>(
            static_cast<std::size_t>(count), threads, [&](std::size_t j) -> std::optional<Evaluated> {
                Rng stream = rng.split(static_cast<std::uint64_t>(base + static_cast<int>(j)));
                return evaluate(random_polynomial(2, degree(), Rationals{}, stream));
            });
    }

    void merge_sample(VariationReport& report, const Evaluated& sample, const std::string& source) const {
        report.samples += 1;
        report.histogram[sample.rank] += 1;
        if (sample.rank > report.best_rank || report.witness_source.empty()) {
            report.best_rank = sample.rank;
            report.witness = sample.xi.to_string();
            report.witness_source = source;
            report.witness_certificates = sample.certificates;
        }
        report.reached_genus = report.best_rank == report.genus;
    }

    GradedPolynomial<Rationals> curve_;
    std::vector<std::uint64_t> primes_;
    std::optional<PlaneCurveIVHS<Rationals>> q_model_;
    std::vector<std::pair<std::uint64_t, PlaneCurveIVHS<Zp>>> p_models_;
};

// Histogram of cup-product ranks over random deformations with nonzero
// normal form. Any observed rank strictly between 0 and d-3 is flagged.
struct RankSpectrumReport {
    int samples = 0;
    std::map<Index, int> histogram;
    Index min_rank = 0;
    Index max_rank = 0;
    std::vector<std::string> below_threshold_witnesses;
    bool threshold_violated = false;
};

template <class F>
RankSpectrumReport rank_spectrum(const PlaneCurveIVHS<F>& model, int samples, Rng rng, int threads = 1) {
    const int d = model.degree();
    if (d < 5) throw PreconditionError("rank spectrum is defined for d >= 5");
    if (samples < 1) throw PreconditionError("rank_spectrum needs samples >= 1");
    RankSpectrumReport report;
    const auto& f = model.ring().field();
    auto draws = parallel_map<std::pair<Index, std::string>>(
        static_cast<std::size_t>(samples), threads, [&](std::size_t i) -> std::pair<Index, std::string> {
            Rng stream = rng.split(static_cast<std::uint64_t>(i));
            while (true) {
                auto xi = random_polynomial(2, d, f, stream);
                Vec<F> nf = model.ring().normal_form(xi);
                bool nonzero = false;
                for (Index t = 0; t < nf.size(); ++t)
                    if (!f.is_zero(nf(t))) nonzero = true;
                if (nonzero) return {cup_product_rank(model, xi), xi.to_string()};
            }
        });
    for (const auto& [r, text] : draws) {
        report.histogram[r] += 1;
        report.samples += 1;
        if (r > 0 && r < static_cast<Index>(d - 3)) {
            report.threshold_violated = true;
            report.below_threshold_witnesses.push_back(text);
        }
    }
    report.min_rank = report.histogram.begin()->first;
    report.max_rank = report.histogram.rbegin()->first;
    return report;
}

// The explicit low-rank deformation x0^{d-2} x1^2 on the Fermat curve; its
// cup-product rank is exactly d-3.
template <class F>
std::pair<GradedPolynomial<F>, Index> fermat_min_variation_witness(int d, const F& field) {
    if (d < 5) throw PreconditionError("minimal-variation witness is defined for d >= 5");
    auto ring = JacobianRing<F>::jacobian(fermat(2, d, field));
    PlaneCurveIVHS<F> model(std::move(ring));
    Monomial m(std::vector<int>{d - 2, 2, 0});
    auto xi = GradedPolynomial<F>::monomial(m, field.one(), field);
    Index r = cup_product_rank(model, xi);
    if (r != static_cast<Index>(d - 3))
        throw InternalError("Fermat low-rank witness has rank " + std::to_string(r) + ", expected d-3");
    return {xi, r};
}

// Rank of the (n-1)-st power of a deformation acting from R^{d-n-1} to
// R^{dn-n-1}. Full rank r_{d-n-1} certifies that the xi-line realizes an
// isomorphism H^0(omega) -> H^{n-1}(O). Accepts xi of degree d, or a
// degree-1 representative L standing for the deformation L^d.
template <class F>
Index yukawa_rank(const JacobianRing<F>& ring, const GradedPolynomial<F>& xi) {
    if (!ring.smooth()) throw SingularRingError("yukawa rank requires a smooth ring");
    const int n = ring.projective_n();
    const int d = ring.hypersurface_degree();
    if (d < n + 1) throw PreconditionError("yukawa rank requires d >= n + 1");
    GradedPolynomial<F> multiplier(ring.nvars(), d * (n - 1), ring.field());
    if (xi.degree() == d)
        multiplier = xi.pow(n - 1);
    else if (xi.degree() == 1)
        multiplier = xi.pow(d * (n - 1));
    else
        throw DegreeOutOfRangeError("deformation must have degree d (or a degree-1 representative)");
    return multiplication_operator(ring, multiplier, d - n - 1).rank;
}

// Dense integer-coefficient hypersurface draw; coefficients are uniform
// 62-bit integers so one draw reduces coherently modulo every prime.
inline GradedPolynomial<Rationals> random_hypersurface(int n, int d, Rng& rng) {
    return random_polynomial(n, d, Rationals{}, rng);
}

// Rejection-samples until the ring is Artinian over every prime in the list
// (or over Q when the list is empty). Smoothness of a dense draw is
// generic; the retry cap matches that expectation.
inline GradedPolynomial<Rationals> random_smooth_hypersurface(int n, int d, const std::vector<std::uint64_t>& primes,
                                                              Rng& rng, int max_retries = 10) {
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        auto f = random_hypersurface(n, d, rng);
        bool smooth = true;
        if (primes.empty()) {
            smooth = JacobianRing<Rationals>::jacobian(f).smooth();
        } else {
            for (std::uint64_t p : primes) {
                Zp field(p);
                if (!JacobianRing<Zp>::jacobian(reduce_mod(f, field)).smooth()) {
                    smooth = false;
                    break;
                }
            }
        }
        if (smooth) return f;
    }
    throw PreconditionError("failed to draw a smooth hypersurface after " + std::to_string(max_retries) +
                            " attempts");
}

}  // namespace jacring
