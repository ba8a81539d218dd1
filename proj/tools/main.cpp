// jacring: exact computations in Jacobian rings of smooth hypersurfaces.
//
// Every command prints one JSON run record to stdout:
//   {command, config, config_hash, payload, timestamp, tool_version, wall_ms}
// The payload depends only on the resolved config (timestamps and wall time
// live outside it), so reruns are byte-comparable.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jacring/jacring.hpp"
#include "jacring/parallel.hpp"
#include "jacring/serialize.hpp"

namespace {

using jacring::GradedPolynomial;
using jacring::Index;
using jacring::JacobianRing;
using jacring::json;
using jacring::Rationals;
using jacring::Rng;
using jacring::Zp;

constexpr const char* kToolVersion = "0.1.0";
constexpr const char* kPrimesEnvVar = "JACRING_PRIMES";
constexpr const char* kDefaultPrimes = "65537,1000003";

struct Options {
    // hypersurface source (exactly one)
    std::vector<int> fermat;  // n d
    std::string poly_file;
    std::vector<int> random;  // n d

    std::string field = "fp";  // fp | q
    std::string primes_csv;
    std::uint64_t seed = 0;
    int samples = 20;
    int threads = 1;
    std::string out;
    bool csv = false;

    // command-specific
    int n = 2;
    int d = 4;
    int k = 0;
    int a = 0;
    int e = 1;
    int p = 0;
    int alpha_degree = -1;
    int trials = 5;
    int vars = 3;
    int exp_max = 4;
    std::string xi;
    std::string alpha;
    std::string witness;
    std::string v_csv;
    std::string ci_csv;
    std::string mode = "verify";
    std::string kind;
    std::string d_range;
    std::string n_range;
    std::string jsonl;
    bool fiber = false;
    bool no_resume = false;
};

std::vector<std::uint64_t> parse_primes(const std::string& csv) {
    std::vector<std::uint64_t> primes;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::uint64_t p = 0;
        try {
            p = std::stoull(item);
        } catch (const std::exception&) {
            throw jacring::ParseError("invalid prime '" + item + "'");
        }
        if (p < 3 || p % 2 == 0 || p >= (1ull << 62) || !jacring::is_prime_u64(p))
            throw jacring::ParseError("'" + item + "' is not an odd prime < 2^62");
        primes.push_back(p);
    }
    if (primes.empty()) throw jacring::ParseError("empty prime list");
    return primes;
}

std::pair<int, int> parse_range(const std::string& text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            int v = std::stoi(text);
            return {v, v};
        }
        int lo = std::stoi(text.substr(0, dots));
        int hi = std::stoi(text.substr(dots + 2));
        if (lo > hi) throw jacring::ParseError("empty range '" + text + "'");
        return {lo, hi};
    } catch (const jacring::ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw jacring::ParseError("invalid range '" + text + "' (expected a..b)");
    }
}

std::vector<std::uint64_t> resolve_primes(const Options& opt) {
    std::string csv = opt.primes_csv;
    if (csv.empty()) {
        const char* env = std::getenv(kPrimesEnvVar);
        csv = env != nullptr && *env != '\0' ? env : kDefaultPrimes;
    }
    return parse_primes(csv);
}

std::string fnv_hash_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string iso_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// The resolved hypersurface, over Q with integer coefficients so it reduces
// coherently modulo every prime in play.
GradedPolynomial<Rationals> resolve_curve(const Options& opt, const std::vector<std::uint64_t>& primes,
                                          json& source) {
    int sources = 0;
    if (!opt.fermat.empty()) ++sources;
    if (!opt.poly_file.empty()) ++sources;
    if (!opt.random.empty()) ++sources;
    if (sources != 1)
        throw jacring::ParseError("exactly one of --fermat, --poly-file, --random must be given");

    if (!opt.fermat.empty()) {
        auto f = jacring::fermat(opt.fermat[0], opt.fermat[1], Rationals{});
        source = {{"kind", "fermat"}, {"n", opt.fermat[0]}, {"d", opt.fermat[1]}, {"poly", f.to_string()}};
        return f;
    }
    if (!opt.poly_file.empty()) {
        std::ifstream in(opt.poly_file);
        if (!in) throw jacring::ParseError("cannot read polynomial file '" + opt.poly_file + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        auto f = jacring::parse_polynomial(buffer.str(), Rationals{});
        source = {{"kind", "poly-file"}, {"path", opt.poly_file}, {"poly", f.to_string()}};
        return f;
    }
    Rng rng = Rng(opt.seed).split("hypersurface");
    std::vector<std::uint64_t> check = opt.field == "q" ? std::vector<std::uint64_t>{} : primes;
    auto f = jacring::random_smooth_hypersurface(opt.random[0], opt.random[1], check, rng);
    source = {{"kind", "random"},
              {"n", opt.random[0]},
              {"d", opt.random[1]},
              {"seed", opt.seed},
              {"poly", f.to_string()}};
    return f;
}

json field_config(const Options& opt, const std::vector<std::uint64_t>& primes) {
    if (opt.field == "q") return {{"kind", "rationals"}};
    return {{"kind", "prime-fields"}, {"primes", primes}};
}

// Runs fn over Q (--field q) or over the first prime (--field fp).
template <class Fn>
auto with_single_field(const Options& opt, const std::vector<std::uint64_t>& primes, Fn&& fn) {
    jacring::FieldSpec spec =
        opt.field == "q" ? jacring::FieldSpec::rationals() : jacring::FieldSpec::prime_field(primes[0]);
    return visit_field(spec, std::forward<Fn>(fn));
}

struct CommandResult {
    json config;
    json payload;
    std::string csv;  // optional flattened form
};

void emit(const std::string& command, const Options& opt, const CommandResult& result,
          std::chrono::steady_clock::time_point started) {
    const auto wall =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    json record{{"command", command},
                {"config", result.config},
                {"config_hash", fnv_hash_hex(result.config.dump())},
                {"payload", result.payload},
                {"timestamp", iso_timestamp()},
                {"tool_version", kToolVersion},
                {"wall_ms", wall.count()}};
    if (opt.csv) {
        if (result.csv.empty()) throw jacring::ParseError("--csv is not supported for this command");
        std::cout << result.csv;
    } else {
        std::cout << record.dump() << "\n";
    }
    if (!opt.out.empty()) {
        std::ofstream out(opt.out);
        if (!out) throw jacring::PreconditionError("cannot write output path '" + opt.out + "'");
        out << record.dump() << "\n";
    }
}

// Either the hypersurface ring over the single field, or a monomial
// complete intersection when --ci is given.
template <class F>
JacobianRing<F> resolve_ring(const Options& opt, const std::vector<std::uint64_t>& primes, const F& field,
                             json& source) {
    if (!opt.ci_csv.empty()) {
        std::vector<int> exps;
        std::stringstream ss(opt.ci_csv);
        std::string item;
        while (std::getline(ss, item, ',')) exps.push_back(std::stoi(item));
        source = {{"kind", "monomial-ci"}, {"exponents", exps}};
        return JacobianRing<F>::monomial_ci(exps, field);
    }
    auto master = resolve_curve(opt, primes, source);
    return JacobianRing<F>::jacobian(jacring::over_field(master, field));
}

// ---------------------------------------------------------------- commands

CommandResult run_hilbert(const Options& opt) {
    auto primes = resolve_primes(opt);
    json source;
    CommandResult result;
    result.payload = with_single_field(opt, primes, [&](const auto& field) {
        auto ring = resolve_ring(opt, primes, field, source);
        return to_json(ring);
    });
    result.config = {{"command", "hilbert"}, {"source", source}, {"field", field_config(opt, primes)}};
    return result;
}

CommandResult run_pairing(const Options& opt) {
    auto primes = resolve_primes(opt);
    json source;
    auto master = resolve_curve(opt, primes, source);
    json per_field = json::array();
    bool all_perfect = true;
    std::string csv = "field,a,rows,cols,rank,perfect\n";
    auto check_field = [&](const auto& field) {
        auto ring = JacobianRing<std::decay_t<decltype(field)>>::jacobian(jacring::over_field(master, field));
        json per_a = json::array();
        bool field_perfect = true;
        for (int a = 0; a <= ring.socle_degree(); ++a) {
            auto report = gorenstein_pairing_check(ring, a);
            if (!report.perfect) field_perfect = false;
            per_a.push_back(to_json(report));
            csv += field.name() + "," + std::to_string(a) + "," + std::to_string(report.matrix.rows()) + "," +
                   std::to_string(report.matrix.cols()) + "," + std::to_string(report.rank) + "," +
                   (report.perfect ? "true" : "false") + "\n";
        }
        if (!field_perfect) all_perfect = false;
        per_field.push_back({{"field", field.name()}, {"per_a", per_a}, {"all_perfect", field_perfect}});
    };
    if (opt.field == "q") {
        check_field(Rationals{});
    } else {
        for (auto p : primes) check_field(Zp(p));
    }
    CommandResult result;
    result.config = {{"command", "pairing"}, {"source", source}, {"field", field_config(opt, primes)}};
    result.payload = {{"per_field", per_field}, {"all_perfect", all_perfect}};
    result.csv = csv;
    return result;
}

CommandResult run_lefschetz(const Options& opt, bool strong) {
    auto primes = resolve_primes(opt);
    json source;
    CommandResult result;
    std::string csv = "k,power,source_dim,target_dim,rank,maximal\n";
    result.payload = with_single_field(opt, primes, [&](const auto& field) {
        using F = std::decay_t<decltype(field)>;
        auto ring = resolve_ring(opt, primes, field, source);
        GradedPolynomial<F> witness = opt.witness.empty()
                                          ? jacring::sum_of_variables(ring.projective_n(), field)
                                          : jacring::parse_polynomial(opt.witness, field, ring.nvars());
        auto report = strong ? slp_check(ring, witness) : wlp_check(ring, witness);
        for (const auto& row : report.rows)
            csv += std::to_string(row.k) + "," + std::to_string(row.power) + "," + std::to_string(row.source_dim) +
                   "," + std::to_string(row.target_dim) + "," + std::to_string(row.rank) + "," +
                   (row.maximal ? "true" : "false") + "\n";
        return to_json(report, strong);
    });
    result.config = {{"command", strong ? "slp" : "wlp"},
                     {"source", source},
                     {"witness", opt.witness.empty() ? "sum-of-variables" : opt.witness},
                     {"field", field_config(opt, primes)}};
    result.csv = csv;
    return result;
}

CommandResult run_star(const Options& opt) {
    auto primes = resolve_primes(opt);
    CommandResult result;
    result.payload = with_single_field(opt, primes, [&](const auto& field) {
        return to_json(jacring::star_property_check(opt.n, opt.d, opt.k, field));
    });
    result.config = {{"command", "star"},
                     {"n", opt.n},
                     {"d", opt.d},
                     {"k", opt.k},
                     {"field", field_config(opt, primes)}};
    return result;
}

CommandResult run_socle_coeff(const Options& opt) {
    auto primes = resolve_primes(opt);
    CommandResult result;
    result.payload = with_single_field(opt, primes, [&](const auto& field) {
        auto report = jacring::socle_coefficient(opt.n, opt.n + 1, field);
        return to_json(report, field);
    });
    result.config = {{"command", "socle-coeff"},
                     {"n", opt.n},
                     {"d", opt.n + 1},
                     {"field", field_config(opt, primes)}};
    return result;
}

CommandResult run_variation_max(const Options& opt) {
    auto primes = resolve_primes(opt);
    json source;
    auto master = resolve_curve(opt, primes, source);
    if (master.nvars() != 3) throw jacring::PreconditionError("variation commands need a plane curve (3 variables)");
    jacring::PlaneCurveScan scan(master, opt.field == "q" ? std::vector<std::uint64_t>{} : primes);
    Rng rng = Rng(opt.seed).split("variation");
    jacring::VariationReport report = opt.mode == "sample" ? scan.estimate_dM(opt.samples, rng, opt.threads)
                                                           : scan.verify_I_maximal(opt.samples, rng, opt.threads);
    CommandResult result;
    result.config = {{"command", "variation-max"}, {"source", source},   {"field", field_config(opt, primes)},
                     {"mode", opt.mode},           {"samples", opt.samples}, {"seed", opt.seed}};
    result.payload = to_json(report);
    return result;
}

CommandResult run_variation_spectrum(const Options& opt) {
    auto primes = resolve_primes(opt);
    json source;
    CommandResult result;
    std::string csv = "rank,count\n";
    result.payload = with_single_field(opt, primes, [&](const auto& field) {
        using F = std::decay_t<decltype(field)>;
        auto master = resolve_curve(opt, primes, source);
        jacring::PlaneCurveIVHS<F> model(JacobianRing<F>::jacobian(jacring::over_field(master, field)));
        auto report = rank_spectrum(model, opt.samples, Rng(opt.seed).split("spectrum"), opt.threads);
        for (const auto& [r, count] : report.histogram)
            csv += std::to_string(r) + "," + std::to_string(count) + "\n";
        return to_json(report);
    });
    result.config = {{"command", "variation-spectrum"},
                     {"source", source},
                     {"field", field_config(opt, primes)},
                     {"samples", opt.samples},
                     {"seed", opt.seed}};
    result.csv = csv;
    return result;
}

CommandResult run_min_witness(const Options& opt) {
    auto primes = resolve_primes(opt);
    CommandResult result;
    result.payload = with_single_field(opt, primes, [&](const auto& field) {
        auto [xi, rank] = jacring::fermat_min_variation_witness(opt.d, field);
        return json{{"d", opt.d}, {"xi", xi.to_string()}, {"rank", rank}, {"expected", opt.d - 3},
                    {"matches_expected", rank == static_cast<Index>(opt.d - 3)}};
    });
    result.config = {{"command", "min-witness"}, {"d", opt.d}, {"field", field_config(opt, primes)}};
    return result;
}

CommandResult run_yukawa(const Options& opt) {
    auto primes = resolve_primes(opt);
    json source;
    auto master = resolve_curve(opt, primes, source);
    const int n = master.nvars() - 1;
    GradedPolynomial<Rationals> xi = opt.xi.empty() ? jacring::sum_of_variables(n, Rationals{})
                                                    : jacring::parse_polynomial(opt.xi, Rationals{}, n + 1);
    json per_field = json::array();
    Index consensus = 0;
    bool agree = true;
    bool all_full = true;
    auto run_one = [&](const auto& field) {
        using F = std::decay_t<decltype(field)>;
        auto ring = JacobianRing<F>::jacobian(jacring::over_field(master, field));
        Index r = yukawa_rank(ring, jacring::over_field(xi, field));
        Index source_dim = ring.dim(ring.hypersurface_degree() - n - 1);
        per_field.push_back(
            {{"field", field.name()}, {"rank", r}, {"source_dim", source_dim}, {"full", r == source_dim}});
        if (r != source_dim) all_full = false;
        consensus = std::max(consensus, r);
    };
    if (opt.field == "q") {
        run_one(Rationals{});
    } else {
        for (auto p : primes) run_one(Zp(p));
    }
    for (const auto& entry : per_field)
        if (entry["rank"].get<Index>() != consensus) agree = false;
    CommandResult result;
    result.config = {{"command", "yukawa"},
                     {"source", source},
                     {"xi", xi.to_string()},
                     {"field", field_config(opt, primes)}};
    result.payload = {{"per_field", per_field}, {"consensus", consensus}, {"agree", agree}, {"all_full", all_full}};
    return result;
}

CommandResult run_kernel_square(const Options& opt) {
    auto primes = resolve_primes(opt);
    json source;
    CommandResult result;
    result.payload = with_single_field(opt, primes, [&](const auto& field) {
        auto ring = resolve_ring(opt, primes, field, source);
        auto report = jacring::max_rank_kernel_square_check(ring, opt.a, opt.e, opt.samples,
                                                            Rng(opt.seed).split("kernel-square"));
        return to_json(report);
    });
    result.config = {{"command", "kernel-square"},
                     {"source", source},
                     {"a", opt.a},
                     {"e", opt.e},
                     {"samples", opt.samples},
                     {"seed", opt.seed},
                     {"field", field_config(opt, primes)}};
    return result;
}

CommandResult run_annihilator(const Options& opt) {
    auto primes = resolve_primes(opt);
    json source;
    CommandResult result;
    std::string csv = "s,r_s,k_s,quotient_dim,identity_holds\n";
    std::string alpha_text;
    result.payload = with_single_field(opt, primes, [&](const auto& field) {
        using F = std::decay_t<decltype(field)>;
        auto ring = resolve_ring(opt, primes, field, source);
        GradedPolynomial<F> alpha(ring.nvars(), 0, field);
        if (!opt.alpha.empty()) {
            alpha = jacring::parse_polynomial(opt.alpha, field, ring.nvars());
        } else if (opt.alpha_degree >= 0) {
            Rng rng = Rng(opt.seed).split("alpha");
            alpha = ring.random_nonzero_element(opt.alpha_degree, rng);
        } else {
            throw jacring::ParseError("annihilator needs --alpha or --alpha-degree");
        }
        alpha_text = alpha.to_string();
        auto report = annihilator_quotient_dims(ring, alpha);
        for (const auto& row : report.rows)
            csv += std::to_string(row.s) + "," + std::to_string(row.r_s) + "," + std::to_string(row.k_s) + "," +
                   std::to_string(row.quotient_dim) + "," + (row.identity_holds ? "true" : "false") + "\n";
        json payload = to_json(report);
        payload["alpha"] = alpha_text;
        return payload;
    });
    result.config = {{"command", "annihilator"},
                     {"source", source},
                     {"alpha", alpha_text},
                     {"seed", opt.seed},
                     {"field", field_config(opt, primes)}};
    result.csv = csv;
    return result;
}

CommandResult run_fv_rank(const Options& opt) {
    auto primes = resolve_primes(opt);
    json source;
    CommandResult result;
    json v_echo = json::array();
    result.payload = with_single_field(opt, primes, [&](const auto& field) {
        using F = std::decay_t<decltype(field)>;
        auto master = resolve_curve(opt, primes, source);
        auto curve = jacring::over_field(master, field);
        std::vector<typename F::Elem> v;
        if (!opt.v_csv.empty()) {
            std::stringstream ss(opt.v_csv);
            std::string item;
            while (std::getline(ss, item, ',')) v.push_back(field.from_int(std::stoll(item)));
        } else {
            Rng rng = Rng(opt.seed).split("direction");
            for (int i = 0; i < curve.nvars(); ++i) v.push_back(field.uniform(rng));
        }
        for (const auto& c : v) v_echo.push_back(field.to_string(c));
        return to_json(jacring::f_v_rank(curve, v, opt.p));
    });
    result.config = {{"command", "fv-rank"},
                     {"source", source},
                     {"p", opt.p},
                     {"v", v_echo},
                     {"seed", opt.seed},
                     {"field", field_config(opt, primes)}};
    return result;
}

CommandResult run_y_membership(const Options& opt) {
    auto primes = resolve_primes(opt);
    json source;
    CommandResult result;
    if (opt.alpha.empty()) throw jacring::ParseError("y-membership needs --alpha");
    result.payload = with_single_field(opt, primes, [&](const auto& field) {
        using F = std::decay_t<decltype(field)>;
        auto master = resolve_curve(opt, primes, source);
        auto ring = JacobianRing<F>::jacobian(jacring::over_field(master, field));
        auto alpha = jacring::parse_polynomial(opt.alpha, field, ring.nvars());
        bool in_y = membership_Y(ring, alpha);
        json payload{{"alpha", alpha.to_string()}, {"in_Y", in_y}};
        if (opt.fiber && in_y) {
            auto fiber = incidence_fiber(ring, alpha);
            payload["fiber"] = to_json(fiber);
            auto tangent = tangent_dim_Y(ring, alpha);
            payload["tangent_dim"] = tangent.tangent_dim;
        }
        return payload;
    });
    result.config = {{"command", "y-membership"},
                     {"source", source},
                     {"alpha", opt.alpha},
                     {"fiber", opt.fiber},
                     {"field", field_config(opt, primes)}};
    return result;
}

CommandResult run_arith_check(const Options& opt) {
    auto [lo, hi] = parse_range(opt.d_range.empty() ? "3..12" : opt.d_range);
    if (lo < 3) throw jacring::PreconditionError("arith-check needs d >= 3");
    json per_d = json::array();
    bool all_pass = true;
    for (int d = lo; d <= hi; ++d) {
        auto report = jacring::dimension_arithmetic_check(d);
        if (!report.all_pass) all_pass = false;
        per_d.push_back(to_json(report));
    }
    CommandResult result;
    result.config = {{"command", "arith-check"}, {"d_range", json::array({lo, hi})}};
    result.payload = {{"per_d", per_d}, {"all_pass", all_pass}};
    return result;
}

// ----------------------------------------------------------------- surveys

struct SurveyCell {
    json config;
    std::string hash;
};

CommandResult run_survey(const Options& opt) {
    if (opt.jsonl.empty()) throw jacring::ParseError("survey needs --jsonl OUT");
    auto primes = resolve_primes(opt);
    const std::string field_name = opt.field == "q" ? "Q" : "F_" + std::to_string(primes[0]);

    std::vector<SurveyCell> cells;
    if (opt.kind == "star") {
        auto [nlo, nhi] = parse_range(opt.n_range.empty() ? "2" : opt.n_range);
        auto [dlo, dhi] = parse_range(opt.d_range);
        for (int n = nlo; n <= nhi; ++n)
            for (int d = dlo; d <= dhi; ++d)
                for (int k = 0; k <= d - n - 1; ++k) {
                    json cfg{{"command", "star"}, {"n", n}, {"d", d}, {"k", k}, {"field", field_name}};
                    cells.push_back({cfg, fnv_hash_hex(cfg.dump())});
                }
    } else if (opt.kind == "slp-ci") {
        if (opt.vars < 1 || opt.exp_max < 2) throw jacring::ParseError("slp-ci survey needs --vars >= 1, --exp-max >= 2");
        std::vector<int> exps(static_cast<std::size_t>(opt.vars), 2);
        while (true) {
            json cfg{{"command", "slp"},
                     {"exponents", exps},
                     {"witness", "sum-of-variables"},
                     {"field", field_name}};
            cells.push_back({cfg, fnv_hash_hex(cfg.dump())});
            int i = opt.vars - 1;
            while (i >= 0 && exps[static_cast<std::size_t>(i)] == opt.exp_max) {
                exps[static_cast<std::size_t>(i)] = 2;
                --i;
            }
            if (i < 0) break;
            ++exps[static_cast<std::size_t>(i)];
        }
    } else {
        throw jacring::ParseError("unknown survey kind '" + opt.kind + "' (expected star or slp-ci)");
    }
    if (cells.empty()) throw jacring::PreconditionError("survey grid is empty");

    std::set<std::string> done;
    if (!opt.no_resume) {
        std::ifstream in(opt.jsonl);
        std::string line;
        while (in && std::getline(in, line)) {
            if (line.empty()) continue;
            auto record = json::parse(line, nullptr, false);
            if (!record.is_discarded() && record.contains("config_hash"))
                done.insert(record["config_hash"].get<std::string>());
        }
    }

    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (!done.count(cells[i].hash)) todo.push_back(i);

    auto evaluate_cell = [&](const json& cfg) -> json {
        return with_single_field(opt, primes, [&](const auto& field) -> json {
            using F = std::decay_t<decltype(field)>;
            if (cfg["command"] == "star")
                return to_json(jacring::star_property_check(cfg["n"].get<int>(), cfg["d"].get<int>(),
                                                            cfg["k"].get<int>(), field));
            auto ring = JacobianRing<F>::monomial_ci(cfg["exponents"].get<std::vector<int>>(), field);
            auto witness = jacring::sum_of_variables(ring.projective_n(), field);
            return to_json(slp_check(ring, witness), true);
        });
    };

    auto payloads = jacring::parallel_map<json>(todo.size(), opt.threads,
                                                [&](std::size_t i) { return evaluate_cell(cells[todo[i]].config); });

    std::ofstream out(opt.jsonl, std::ios::app);
    if (!out) throw jacring::PreconditionError("cannot write survey output path '" + opt.jsonl + "'");
    for (std::size_t i = 0; i < todo.size(); ++i) {
        const auto& cell = cells[todo[i]];
        json record{{"command", cell.config["command"]},
                    {"config", cell.config},
                    {"config_hash", cell.hash},
                    {"payload", payloads[i]},
                    {"timestamp", iso_timestamp()},
                    {"tool_version", kToolVersion}};
        out << record.dump() << "\n";
    }
    out.close();

    CommandResult result;
    result.config = {{"command", "survey"},
                     {"kind", opt.kind},
                     {"field", field_config(opt, primes)},
                     {"cells_total", cells.size()}};
    result.payload = {{"kind", opt.kind},
                      {"cells_total", cells.size()},
                      {"cells_written", todo.size()},
                      {"cells_skipped", cells.size() - todo.size()},
                      {"path", opt.jsonl}};
    return result;
}

void add_source_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--fermat", opt.fermat, "Fermat hypersurface: n d")->expected(2);
    cmd->add_option("--poly-file", opt.poly_file, "file with a homogeneous polynomial");
    cmd->add_option("--random", opt.random, "random smooth hypersurface: n d (uses --seed)")->expected(2);
}

void add_field_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--field", opt.field, "fp (prime fields) or q (rationals)")
        ->check(CLI::IsMember({"fp", "q"}));
    cmd->add_option("--primes", opt.primes_csv, "comma-separated prime list (default $JACRING_PRIMES or 65537,1000003)");
}

void add_output_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--out", opt.out, "also write the JSON run record to this path");
    cmd->add_flag("--csv", opt.csv, "print a flattened CSV table instead of JSON");
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"exact Jacobian-ring computations for smooth hypersurfaces"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    auto* hilbert = app.add_subcommand("hilbert", "Hilbert function of the Jacobian ring");
    add_source_options(hilbert, opt);
    add_field_options(hilbert, opt);
    add_output_options(hilbert, opt);
    hilbert->add_option("--ci", opt.ci_csv, "monomial complete intersection exponents a0,a1,...");
    hilbert->add_option("--seed", opt.seed, "seed for --random");

    auto* pairing = app.add_subcommand("pairing", "perfect-pairing check for all degrees");
    add_source_options(pairing, opt);
    add_field_options(pairing, opt);
    add_output_options(pairing, opt);
    pairing->add_option("--seed", opt.seed, "seed for --random");

    auto* wlp = app.add_subcommand("wlp", "weak Lefschetz property check");
    add_source_options(wlp, opt);
    add_field_options(wlp, opt);
    add_output_options(wlp, opt);
    wlp->add_option("--ci", opt.ci_csv, "monomial complete intersection exponents");
    wlp->add_option("--witness", opt.witness, "linear form (default x0+...+xn)");
    wlp->add_option("--seed", opt.seed, "seed for --random");

    auto* slp = app.add_subcommand("slp", "strong Lefschetz property check");
    add_source_options(slp, opt);
    add_field_options(slp, opt);
    add_output_options(slp, opt);
    slp->add_option("--ci", opt.ci_csv, "monomial complete intersection exponents");
    slp->add_option("--witness", opt.witness, "linear form (default x0+...+xn)");
    slp->add_option("--seed", opt.seed, "seed for --random");

    auto* star = app.add_subcommand("star", "injectivity of G -> G*H^{d(n-1)} on the Fermat ring");
    star->add_option("--n", opt.n, "projective dimension n")->required();
    star->add_option("--d", opt.d, "hypersurface degree")->required();
    star->add_option("--k", opt.k, "source degree")->required();
    add_field_options(star, opt);
    add_output_options(star, opt);

    auto* socle = app.add_subcommand("socle-coeff", "socle coefficient of H^{(n+1)(n-1)} for d = n+1");
    socle->add_option("--n", opt.n, "projective dimension n")->required();
    add_field_options(socle, opt);
    add_output_options(socle, opt);

    auto* vmax = app.add_subcommand("variation-max", "best sampled cup-product rank for a plane curve");
    add_source_options(vmax, opt);
    add_field_options(vmax, opt);
    add_output_options(vmax, opt);
    vmax->add_option("--samples", opt.samples, "sample budget (default 20)");
    vmax->add_option("--seed", opt.seed, "master seed");
    vmax->add_option("--threads", opt.threads, "worker threads");
    vmax->add_option("--mode", opt.mode, "verify (witness search) or sample (fixed budget)")
        ->check(CLI::IsMember({"verify", "sample"}));

    auto* vspec = app.add_subcommand("variation-spectrum", "histogram of cup-product ranks");
    add_source_options(vspec, opt);
    add_field_options(vspec, opt);
    add_output_options(vspec, opt);
    vspec->add_option("--samples", opt.samples, "sample count");
    vspec->add_option("--seed", opt.seed, "master seed");
    vspec->add_option("--threads", opt.threads, "worker threads");

    auto* minw = app.add_subcommand("min-witness", "explicit rank-(d-3) deformation on the Fermat curve");
    minw->add_option("--d", opt.d, "curve degree (>= 5)")->required();
    add_field_options(minw, opt);
    add_output_options(minw, opt);

    auto* yukawa = app.add_subcommand("yukawa", "rank of the (n-1)-st cup power on R^{d-n-1}");
    add_source_options(yukawa, opt);
    add_field_options(yukawa, opt);
    add_output_options(yukawa, opt);
    yukawa->add_option("--xi", opt.xi, "deformation (degree d, or a degree-1 representative)");
    yukawa->add_option("--seed", opt.seed, "seed for --random");

    auto* ksq = app.add_subcommand("kernel-square", "squares of kernel elements of a max-rank multiplication");
    add_source_options(ksq, opt);
    add_field_options(ksq, opt);
    add_output_options(ksq, opt);
    ksq->add_option("--ci", opt.ci_csv, "monomial complete intersection exponents");
    ksq->add_option("--a", opt.a, "degree of eta")->required();
    ksq->add_option("--e", opt.e, "source degree of the kernel")->required();
    ksq->add_option("--samples", opt.samples, "sample budget (default 20)");
    ksq->add_option("--seed", opt.seed, "master seed");

    auto* annih = app.add_subcommand("annihilator", "annihilator quotient dimensions and the duality identity");
    add_source_options(annih, opt);
    add_field_options(annih, opt);
    add_output_options(annih, opt);
    annih->add_option("--ci", opt.ci_csv, "monomial complete intersection exponents");
    annih->add_option("--alpha", opt.alpha, "explicit alpha (polynomial text)");
    annih->add_option("--alpha-degree", opt.alpha_degree, "draw a random alpha of this degree");
    annih->add_option("--seed", opt.seed, "master seed");

    auto* fv = app.add_subcommand("fv-rank", "rank of (A,B) -> A*F + B*F_v into S^p");
    add_source_options(fv, opt);
    add_field_options(fv, opt);
    add_output_options(fv, opt);
    fv->add_option("--p", opt.p, "target degree")->required();
    fv->add_option("--v", opt.v_csv, "direction as comma-separated integers (default random)");
    fv->add_option("--seed", opt.seed, "master seed");

    auto* ymem = app.add_subcommand("y-membership", "membership of alpha^2 in the Jacobian ideal");
    add_source_options(ymem, opt);
    add_field_options(ymem, opt);
    add_output_options(ymem, opt);
    ymem->add_option("--alpha", opt.alpha, "element of S^{d-3} (polynomial text)")->required();
    ymem->add_flag("--fiber", opt.fiber, "also report the incidence fiber and tangent dimension");
    ymem->add_option("--seed", opt.seed, "seed for --random");

    auto* arith = app.add_subcommand("arith-check", "exact dimension-count identities");
    arith->add_option("--d-range", opt.d_range, "degree range a..b (default 3..12)");
    add_output_options(arith, opt);

    auto* survey = app.add_subcommand("survey", "JSONL grid runs (kinds: star, slp-ci)");
    survey->add_option("--kind", opt.kind, "star or slp-ci")->required();
    survey->add_option("--jsonl", opt.jsonl, "output JSONL path")->required();
    survey->add_option("--n-range", opt.n_range, "n range for star (default 2)");
    survey->add_option("--d-range", opt.d_range, "d range for star");
    survey->add_option("--vars", opt.vars, "variable count for slp-ci (default 3)");
    survey->add_option("--exp-max", opt.exp_max, "max exponent for slp-ci (default 4)");
    survey->add_option("--threads", opt.threads, "worker threads");
    survey->add_flag("--no-resume", opt.no_resume, "recompute cells already present in the output");
    add_field_options(survey, opt);
    add_output_options(survey, opt);

    const auto started = std::chrono::steady_clock::now();
    try {
        app.parse(argc, argv);
        CommandResult result;
        std::string name;
        if (*hilbert) {
            name = "hilbert";
            result = run_hilbert(opt);
        } else if (*pairing) {
            name = "pairing";
            result = run_pairing(opt);
        } else if (*wlp) {
            name = "wlp";
            result = run_lefschetz(opt, false);
        } else if (*slp) {
            name = "slp";
            result = run_lefschetz(opt, true);
        } else if (*star) {
            name = "star";
            result = run_star(opt);
        } else if (*socle) {
            name = "socle-coeff";
            result = run_socle_coeff(opt);
        } else if (*vmax) {
            name = "variation-max";
            result = run_variation_max(opt);
        } else if (*vspec) {
            name = "variation-spectrum";
            result = run_variation_spectrum(opt);
        } else if (*minw) {
            name = "min-witness";
            result = run_min_witness(opt);
        } else if (*yukawa) {
            name = "yukawa";
            result = run_yukawa(opt);
        } else if (*ksq) {
            name = "kernel-square";
            result = run_kernel_square(opt);
        } else if (*annih) {
            name = "annihilator";
            result = run_annihilator(opt);
        } else if (*fv) {
            name = "fv-rank";
            result = run_fv_rank(opt);
        } else if (*ymem) {
            name = "y-membership";
            result = run_y_membership(opt);
        } else if (*arith) {
            name = "arith-check";
            result = run_arith_check(opt);
        } else if (*survey) {
            name = "survey";
            result = run_survey(opt);
        }
        emit(name, opt, result, started);
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const jacring::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const jacring::InternalError& e) {
        std::cerr << "internal invariant breach: " << e.what() << "\n";
        return 4;
    } catch (const jacring::PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
