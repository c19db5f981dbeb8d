#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "drinlab/jsonio.hpp"
#include "drinlab/measure.hpp"
#include "drinlab/report.hpp"

using namespace drinlab;

namespace {

struct CheckFailure {};

struct GlobalOpts {
    std::uint64_t seed = 0;
    std::string output;
    std::string format = "csv";
    int workers = 1;
    bool no_timestamp = false;
};

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void emit(const GlobalOpts& g, ReportDoc doc) {
    if (!g.no_timestamp) doc.timestamp = now_iso8601();
    const std::string text = g.format == "json" ? doc.to_json() : doc.to_csv();
    if (g.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(g.output, std::ios::binary);
        if (!out) throw Error("cannot open output file " + g.output);
        out << text;
    }
    if (!doc.all_checks_pass()) throw CheckFailure{};
}

FqPtr field_for(int q) {
    int p = 0, s = 0;
    if (!prime_power(static_cast<std::uint64_t>(q), &p, &s) || q > 16)
        throw DomainError("q must be a prime power <= 16");
    return Fq::get(p, s);
}

PrimeIdeal parse_prime(const FqPtr& F, const std::string& text) {
    return PrimeIdeal::make(parse_symbolic(F, text));
}

std::string bool_str(bool b) { return b ? "1" : "0"; }

// ------------------------------------------------------------------ count

int run_count(const GlobalOpts& g, int r, const std::string& q_list,
              const std::string& method) {
    ProfileMethod pm = ProfileMethod::lattice_formula;
    if (method == "enumeration") pm = ProfileMethod::enumeration;
    else if (method != "lattice-formula" && method != "both")
        throw DomainError("method must be enumeration, lattice-formula or both");

    std::vector<std::uint64_t> qs;
    std::size_t pos = 0;
    while (pos <= q_list.size()) {
        const std::size_t comma = q_list.find(',', pos);
        qs.push_back(std::stoull(q_list.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }

    ReportDoc doc;
    doc.config = "count r=" + std::to_string(r) + " q_list=" + q_list +
                 " method=" + method;
    doc.columns = {"r", "q", "method", "gl_order", "s_count", "density",
                   "norm_ratio", "upper_bound", "identity_residual", "bound_ok"};
    bool residual_zero = true, bounds_ok = true, methods_agree = true;
    for (std::uint64_t q : qs) {
        std::vector<CountReport> reps;
        if (method == "both") {
            reps.push_back(
                s_count_and_density(r, q, ProfileMethod::enumeration, g.workers));
            reps.push_back(s_count_and_density(r, q, ProfileMethod::lattice_formula));
            if (reps[0].s_count != reps[1].s_count) methods_agree = false;
        } else {
            reps.push_back(s_count_and_density(r, q, pm, g.workers));
        }
        for (const auto& rep : reps) {
            doc.rows.push_back(
                {std::to_string(rep.r), std::to_string(rep.q),
                 rep.method == ProfileMethod::enumeration ? "enumeration"
                                                          : "lattice-formula",
                 rep.gl.str(), rep.s_count.str(), rat_str(rep.density),
                 rat_str(rep.norm_ratio), rep.upper_bound.str(),
                 rep.identity_residual.str(), bool_str(rep.bound_ok)});
            if (rep.identity_residual != 0) residual_zero = false;
            if (!rep.bound_ok) bounds_ok = false;
        }
    }
    doc.checks.push_back({"identity residual is zero", residual_zero});
    doc.checks.push_back({"upper bound s_count <= t1*stab1", bounds_ok});
    if (method == "both") doc.checks.push_back({"methods agree", methods_agree});
    emit(g, std::move(doc));
    return 0;
}

// ---------------------------------------------------------------- torsion

int run_torsion(const GlobalOpts& g, const std::string& module_spec,
                const std::string& ideal_s, const std::string& place_s) {
    auto m = parse_module_spec(module_spec);
    const auto& F = m.fq();
    const APoly ideal = parse_symbolic(F, ideal_s);
    const APoly place = parse_symbolic(F, place_s);
    auto red = reduce_at_place(m, place);

    ReportDoc doc;
    doc.config = "torsion module={" + module_spec + "} ideal=" + ideal_s +
                 " place=" + place_s;
    doc.columns = {"key", "value"};

    if (ideal.zero()) throw DomainError("torsion: ideal generator must be nonzero");
    const int d = rationality_degree(red, ideal);
    auto ext = extend_module(red, d);
    auto tors = torsion_submodule(ext, ideal);

    std::string structure;
    for (const auto& f : tors.invariant_factors) {
        if (!structure.empty()) structure += " (+) ";
        structure += "A/(" + to_symbolic(f) + ")";
    }
    if (structure.empty()) structure = "0";

    doc.rows.push_back({"splitting_degree", std::to_string(d)});
    doc.rows.push_back({"field", ext.field()->describe()});
    doc.rows.push_back({"fq_dim", std::to_string(tors.fq_dim)});
    doc.rows.push_back({"structure", structure});
    for (std::size_t i = 0; i < tors.invariant_factors.size(); ++i)
        doc.rows.push_back({"invariant_factor_" + std::to_string(i + 1),
                            to_symbolic(tors.invariant_factors[i])});
    for (std::size_t i = 0; i < tors.module_basis.size(); ++i)
        doc.rows.push_back({"basis_point_" + std::to_string(i + 1),
                            ext.field()->elem_text(tors.module_basis[i])});
    doc.checks.push_back(
        {"torsion fully rational (dim = r deg a)",
         tors.fq_dim == m.rank() * (ideal.deg() > 0 ? ideal.deg() : 0)});
    if (g.format == "json") {
        // dedicated record form for machine consumption
        const std::string text = torsion_record_json(module_spec, place, tors, d);
        if (g.output.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(g.output, std::ios::binary);
            out << text;
        }
        if (!doc.all_checks_pass()) throw CheckFailure{};
        return 0;
    }
    emit(g, std::move(doc));
    return 0;
}

// --------------------------------------------------------------- measure

SimConfig base_cfg(const GlobalOpts& g) {
    SimConfig cfg;
    cfg.seed = g.seed;
    cfg.workers = g.workers;
    return cfg;
}

int run_bc(const GlobalOpts& g, int r, int q, int e, int max_deg,
           std::uint64_t trials) {
    SimConfig cfg = base_cfg(g);
    cfg.r = r;
    cfg.q = q;
    cfg.e = e;
    cfg.max_degree = max_deg;
    cfg.trials = trials;
    auto rep = borel_cantelli_run(cfg);

    ReportDoc doc;
    doc.config = "bc " + cfg.describe();
    doc.columns = {"place", "degree", "norm", "density", "expected",
                   "expected_exact", "hits", "trials", "freq", "stderr",
                   "cum_expected", "cum_expected_exact", "cum_hits"};
    for (const auto& row : rep.rows)
        doc.rows.push_back({to_symbolic(row.P), std::to_string(row.degree),
                            std::to_string(row.norm), rat_str(row.density),
                            rat_str(row.expected), rat_str(row.expected_exact),
                            std::to_string(row.hits), std::to_string(row.trials),
                            format_double(row.freq), format_double(row.stderr_),
                            rat_str(row.cum_expected),
                            rat_str(row.cum_expected_exact),
                            std::to_string(row.cum_hits)});
    doc.checks.push_back(
        {"observed mean within 3 sigma of the exact joint expectation",
         rep.within_3_sigma});
    emit(g, std::move(doc));
    return 0;
}

int run_decay(const GlobalOpts& g, int r, int q, const std::string& prime_s,
              int levels, std::uint64_t trials, std::uint64_t exact_bound) {
    SimConfig cfg = base_cfg(g);
    cfg.r = r;
    cfg.q = q;
    cfg.level = levels;
    cfg.trials = trials;
    cfg.exact_bound = exact_bound;
    auto F = field_for(q);
    auto rep = padic_decay_run(cfg, parse_prime(F, prime_s));

    ReportDoc doc;
    doc.config = "decay " + cfg.describe() + " prime=" + prime_s;
    doc.columns = {"level", "mode", "density", "hits", "samples", "freq", "stderr"};
    for (const auto& row : rep.rows)
        doc.rows.push_back({std::to_string(row.level),
                            row.exact ? "exact" : "monte-carlo",
                            row.exact ? rat_str(row.density) : "-",
                            std::to_string(row.hits), std::to_string(row.samples),
                            format_double(row.freq), format_double(row.stderr_)});
    doc.checks.push_back(
        {"densities non-increasing within 3 sigma", rep.non_increasing});
    doc.checks.push_back({"final level below the first", rep.final_below_first});
    emit(g, std::move(doc));
    return 0;
}

int run_translate(const GlobalOpts& g, int r, int q, const std::string& prime_s,
                  int level, const std::string& unit_s, std::uint64_t trials,
                  std::uint64_t exact_bound) {
    SimConfig cfg = base_cfg(g);
    cfg.r = r;
    cfg.q = q;
    cfg.level = level;
    cfg.trials = trials;
    cfg.exact_bound = exact_bound;
    auto F = field_for(q);
    std::vector<APoly> units;
    if (!unit_s.empty()) units.push_back(parse_symbolic(F, unit_s));
    auto rep = translation_check(cfg, parse_prime(F, prime_s), level, units);

    ReportDoc doc;
    doc.config = "translate " + cfg.describe() + " prime=" + prime_s +
                 (unit_s.empty() ? " unit=all" : " unit=" + unit_s);
    doc.columns = {"u", "count_u", "count_1", "equal", "freq_u", "freq_1", "stderr"};
    for (const auto& row : rep.rows)
        doc.rows.push_back({to_symbolic(row.u), std::to_string(row.count_u),
                            std::to_string(row.count_1), bool_str(row.equal),
                            rep.exact ? "-" : format_double(row.freq_u),
                            rep.exact ? "-" : format_double(row.freq_1),
                            rep.exact ? "-" : format_double(row.stderr_)});
    if (rep.exact) {
        doc.checks.push_back(
            {"eigenvalue-u and eigenvalue-1 counts equal", rep.all_equal});
        doc.checks.push_back({"bijection g -> u g verified", rep.bijection_ok});
    } else {
        doc.checks.push_back({"sampled frequencies within 4 sigma", rep.sampled_ok});
    }
    emit(g, std::move(doc));
    return 0;
}

int run_indep(const GlobalOpts& g, int r, int q, const std::string& p1,
              const std::string& p2) {
    auto F = field_for(q);
    auto rep = independence_check(r, parse_prime(F, p1), parse_prime(F, p2));

    ReportDoc doc;
    doc.config = "indep r=" + std::to_string(r) + " q=" + std::to_string(q) +
                 " p1=" + p1 + " p2=" + p2;
    doc.columns = {"r", "p1", "p2", "n1", "s1", "n2", "s2", "joint", "product"};
    doc.rows.push_back({std::to_string(rep.r), to_symbolic(rep.P1),
                        to_symbolic(rep.P2), rep.n1.str(), rep.s1.str(),
                        rep.n2.str(), rep.s2.str(), rat_str(rep.joint),
                        rat_str(rep.product)});
    doc.checks.push_back(
        {"joint density equals the product exactly", rep.exact_equal});
    doc.checks.push_back(
        {"enumerated counts match the lattice formula", rep.formula_match});
    if (rep.crt_card_checked)
        doc.checks.push_back(
            {"card GL(r, A/P1P2) = product (ring enumeration)", rep.crt_card_ok});
    emit(g, std::move(doc));
    return 0;
}

int run_scan(const GlobalOpts& g, const std::string& module_spec,
             const std::string& prime_s, int max_deg, int e,
             std::uint64_t trials) {
    auto m = parse_module_spec(module_spec);
    SimConfig cfg = base_cfg(g);
    cfg.r = m.rank();
    cfg.q = m.fq()->q();
    cfg.e = e;
    cfg.max_degree = max_deg;
    cfg.trials = trials;
    cfg.target = "drinfeld-scan";
    cfg.module_spec = module_spec;
    auto rep = chebotarev_scan(cfg, m, parse_prime(m.fq(), prime_s));

    ReportDoc doc;
    doc.config = "scan " + cfg.describe() + " prime=" + prime_s + " note={" +
                 rep.note + "}";
    doc.columns = {"place", "degree", "split_deg", "hit", "freq", "stderr",
                   "predicted", "sigma_distance"};
    for (const auto& pp : rep.per_place)
        doc.rows.push_back({to_symbolic(pp.ell), std::to_string(pp.ell.deg()),
                            std::to_string(pp.splitting_degree), bool_str(pp.hit),
                            "-", "-", "-", "-"});
    doc.rows.push_back({"TOTAL", "-", "-", std::to_string(rep.hits),
                        format_double(rep.freq), format_double(rep.stderr_),
                        rat_str(rep.predicted),
                        format_double(rep.sigma_distance)});
    doc.checks.push_back(
        {"within 5 sigma of the full-image prediction", !rep.flagged});
    emit(g, std::move(doc));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"drinlab: Drinfeld-module torsion statistics laboratory"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    app.set_config("--config", "", "flat key=value file; command-line flags win");

    GlobalOpts g;
    auto* seed_opt = app.add_option("--seed", g.seed, "master RNG seed");
    app.add_option("--output", g.output, "write the report to this file");
    app.add_option("--format", g.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--workers", g.workers,
                   "parallelism bound (never changes results)")
        ->check(CLI::Range(1, 256));
    app.add_flag("--no-timestamp", g.no_timestamp, "suppress the timestamp line");

    auto* count = app.add_subcommand("count", "exact GL fixed-vector counts");
    int c_r = 2;
    std::string c_qs = "2", c_method = "lattice-formula";
    count->add_option("--r", c_r)->required();
    count->add_option("--q-list", c_qs)->required();
    count->add_option("--method", c_method)
        ->check(CLI::IsMember({"enumeration", "lattice-formula", "both"}));

    auto* tor = app.add_subcommand("torsion", "torsion structure of a reduction");
    std::string t_mod, t_ideal, t_place;
    tor->add_option("--module", t_mod)->required();
    tor->add_option("--ideal", t_ideal)->required();
    tor->add_option("--place", t_place)->required();

    auto* bc = app.add_subcommand("bc", "Borel-Cantelli matrix model");
    int b_r = 1, b_q = 2, b_e = 1, b_deg = 4;
    std::uint64_t b_trials = 100;
    bc->add_option("--r", b_r)->required();
    bc->add_option("--q", b_q)->required();
    bc->add_option("--e", b_e)->required();
    bc->add_option("--max-deg", b_deg)->required();
    bc->add_option("--trials", b_trials)->required();

    auto* decay = app.add_subcommand("decay", "p-adic primitive-fixer decay");
    int d_r = 1, d_q = 3, d_levels = 2;
    std::string d_prime = "T";
    std::uint64_t d_trials = 100000, d_bound = 1'000'000;
    decay->add_option("--r", d_r)->required();
    decay->add_option("--q", d_q)->required();
    decay->add_option("--prime", d_prime)->required();
    decay->add_option("--levels", d_levels)->required();
    decay->add_option("--trials", d_trials);
    decay->add_option("--exact-bound", d_bound);

    auto* tr = app.add_subcommand("translate", "eigenvalue translation counts");
    int tr_r = 1, tr_q = 3, tr_level = 1;
    std::string tr_prime = "T", tr_unit;
    std::uint64_t tr_trials = 100000, tr_bound = 1'000'000;
    tr->add_option("--r", tr_r)->required();
    tr->add_option("--q", tr_q)->required();
    tr->add_option("--prime", tr_prime)->required();
    tr->add_option("--level", tr_level)->required();
    tr->add_option("--unit", tr_unit, "one unit; all units when omitted");
    tr->add_option("--trials", tr_trials);
    tr->add_option("--exact-bound", tr_bound);

    auto* ind = app.add_subcommand("indep", "CRT independence of two primes");
    int i_r = 1, i_q = 2;
    std::string i_p1 = "T", i_p2 = "T+1";
    ind->add_option("--r", i_r)->required();
    ind->add_option("--q", i_q)->required();
    ind->add_option("--p1", i_p1)->required();
    ind->add_option("--p2", i_p2)->required();

    auto* scan = app.add_subcommand("scan", "Chebotarev place scan of a module");
    std::string s_mod, s_prime;
    int s_deg = 4, s_e = 1;
    std::uint64_t s_trials = 200;
    scan->add_option("--module", s_mod)->required();
    scan->add_option("--prime", s_prime)->required();
    scan->add_option("--max-deg", s_deg)->required();
    scan->add_option("--e", s_e);
    scan->add_option("--trials", s_trials);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (!*seed_opt) g.seed = entropy_seed();

    try {
        if (*count) return run_count(g, c_r, c_qs, c_method);
        if (*tor) return run_torsion(g, t_mod, t_ideal, t_place);
        if (*bc) return run_bc(g, b_r, b_q, b_e, b_deg, b_trials);
        if (*decay)
            return run_decay(g, d_r, d_q, d_prime, d_levels, d_trials, d_bound);
        if (*tr)
            return run_translate(g, tr_r, tr_q, tr_prime, tr_level, tr_unit,
                                 tr_trials, tr_bound);
        if (*ind) return run_indep(g, i_r, i_q, i_p1, i_p2);
        if (*scan) return run_scan(g, s_mod, s_prime, s_deg, s_e, s_trials);
    } catch (const CheckFailure&) {
        std::cerr << "drinlab: one or more built-in assertions failed\n";
        return 1;
    } catch (const SizeBoundError& e) {
        std::cerr << "drinlab: size bound: " << e.what() << "\n";
        return 4;
    } catch (const BadReductionError& e) {
        std::cerr << "drinlab: bad reduction: " << e.what() << "\n";
        return 3;
    } catch (const NonUnitError& e) {
        std::cerr << "drinlab: non-unit: " << e.what() << "\n";
        return 3;
    } catch (const MismatchError& e) {
        std::cerr << "drinlab: mismatch: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "drinlab: invalid input: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "drinlab: error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "drinlab: error: " << e.what() << "\n";
        return 5;
    }
    return 2;
}
