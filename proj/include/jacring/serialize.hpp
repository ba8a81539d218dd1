#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "jacring/decomposable.hpp"
#include "jacring/ivhs.hpp"
#include "jacring/lefschetz.hpp"
#include "jacring/linalg.hpp"
#include "jacring/ring.hpp"

namespace jacring {

using nlohmann::json;

// Payload serialization for CLI reports. Keys are emitted in sorted order
// (nlohmann default), so identical reports dump to identical bytes.

template <class F>
json vector_to_json(const Vec<F>& v, const F& field) {
    json a = json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(field.to_string(v(i)));
    return a;
}

inline json to_json(const MultiPrimeRankReport& r) {
    json per = json::array();
    for (const auto& [p, rk] : r.per_prime) per.push_back({{"prime", p}, {"rank", rk}});
    return {{"per_prime", per},
            {"consensus", r.consensus},
            {"agree", r.agree},
            {"lower_bound_only", r.lower_bound_only}};
}

template <class F>
json to_json(const JacobianRing<F>& ring) {
    json dims = json::array();
    long long total = 0;
    for (Index r : ring.hilbert_function()) {
        dims.push_back(r);
        total += r;
    }
    json out{{"nvars", ring.nvars()},
             {"socle_degree", ring.socle_degree()},
             {"smooth", ring.smooth()},
             {"dims", dims},
             {"total_dim", total},
             {"field", ring.field().name()}};
    if (ring.hypersurface()) {
        out["degree"] = ring.hypersurface_degree();
        out["hypersurface"] = ring.hypersurface()->to_string();
    }
    return out;
}

template <class F>
json to_json(const MultiplicationReport<F>& r, const JacobianRing<F>& ring) {
    json kernel = json::array();
    for (const auto& v : r.kernel) kernel.push_back(ring.lift(r.source_degree, v).to_string());
    return {{"alpha", r.alpha.to_string()},
            {"source_degree", r.source_degree},
            {"alpha_degree", r.alpha_degree},
            {"rank", r.rank},
            {"kernel_dim", r.kernel_dim()},
            {"kernel", kernel}};
}

template <class F>
json to_json(const PairingReport<F>& r) {
    return {{"a", r.degree_a},
            {"rows", r.matrix.rows()},
            {"cols", r.matrix.cols()},
            {"rank", r.rank},
            {"perfect", r.perfect}};
}

template <class F>
json to_json(const AnnihilatorReport<F>& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"s", row.s},
                        {"r_s", row.r_s},
                        {"k_s", row.k_s},
                        {"quotient_dim", row.quotient_dim},
                        {"identity_holds", row.identity_holds}});
    return {{"alpha_degree", r.alpha_degree},
            {"rows", rows},
            {"identity_all", r.identity_all},
            {"top_quotient_dim", r.top_quotient_dim},
            {"top_is_one_dimensional", r.top_is_one_dimensional}};
}

inline json to_json(const LefschetzRow& row) {
    return {{"k", row.k},
            {"power", row.power},
            {"source_dim", row.source_dim},
            {"target_dim", row.target_dim},
            {"rank", row.rank},
            {"maximal", row.maximal}};
}

template <class F>
json to_json(const LefschetzReport<F>& r, bool strong) {
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back(to_json(row));
    json out{{"witness", r.witness.to_string()}, {"rows", rows}, {"wlp", r.wlp}};
    if (strong) out["slp"] = r.slp;
    return out;
}

inline json to_json(const StarReport& r) {
    return {{"n", r.n},
            {"d", r.d},
            {"k", r.k},
            {"target_degree", r.target_degree},
            {"source_dim", r.source_dim},
            {"target_dim", r.target_dim},
            {"rank", r.rank},
            {"injective", r.injective},
            {"trivially_false", r.trivially_false}};
}

template <class F>
json to_json(const SocleCoefficientReport<F>& r, const F& field) {
    return {{"lambda", r.multinomial.get_str()},
            {"lambda_in_field", field.to_string(r.in_field)},
            {"expansion_matches", r.expansion_matches}};
}

inline json to_json(const KernelSquareReport& r) {
    return {{"a", r.a},
            {"e", r.e},
            {"samples_requested", r.samples_requested},
            {"samples_used", r.samples_used},
            {"escalated", r.escalated},
            {"best_rank", r.best_rank},
            {"max_possible", r.max_possible},
            {"reached_max_possible", r.reached_max_possible},
            {"kernel_dim", r.kernel_dim},
            {"vacuous", r.vacuous},
            {"squares_checked", r.squares_checked},
            {"squares_all_zero", r.squares_all_zero}};
}

inline json to_json(const VariationReport& r) {
    json hist = json::object();
    for (const auto& [rank, count] : r.histogram) hist[std::to_string(rank)] = count;
    json certs = json::array();
    for (const auto& [p, rank] : r.witness_certificates)
        certs.push_back({{"prime", p}, {"rank", rank}});
    return {{"samples", r.samples},
            {"primes", r.primes},
            {"histogram", hist},
            {"best_rank", r.best_rank},
            {"genus", r.genus},
            {"reached_genus", r.reached_genus},
            {"witness", r.witness},
            {"witness_source", r.witness_source},
            {"witness_certificates", certs}};
}

inline json to_json(const RankSpectrumReport& r) {
    json hist = json::object();
    for (const auto& [rank, count] : r.histogram) hist[std::to_string(rank)] = count;
    return {{"samples", r.samples},
            {"histogram", hist},
            {"min_rank", r.min_rank},
            {"max_rank", r.max_rank},
            {"threshold_violated", r.threshold_violated},
            {"below_threshold_witnesses", r.below_threshold_witnesses}};
}

inline json to_json(const FvRankReport& r) {
    return {{"p", r.p}, {"rank", r.rank}, {"expected", r.expected}, {"injective", r.injective}};
}

template <class F>
json to_json(const IncidenceFiberReport<F>& r) {
    return {{"space_dim", r.space_dim},
            {"ideal_dim", r.ideal_dim},
            {"kernel_dim", r.kernel_dim},
            {"fiber_dim", r.fiber_dim},
            {"contains_alpha", r.contains_alpha}};
}

inline json to_json(const ProbeReport& r) {
    return {{"verdict", to_string(r.verdict)},
            {"charts_tried", r.charts_tried},
            {"good_chart_found", r.good_chart_found},
            {"nullspace_dim", r.nullspace_dim},
            {"detail", r.detail}};
}

inline json to_json(const ArithCheckReport& r) {
    json items = json::array();
    for (const auto& item : r.items)
        items.push_back({{"name", item.name},
                         {"applicable", item.applicable},
                         {"pass", item.pass},
                         {"lhs", item.lhs},
                         {"rhs", item.rhs}});
    return {{"d", r.d}, {"items", items}, {"all_pass", r.all_pass}};
}

}  // namespace jacring
