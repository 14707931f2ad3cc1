// mnl: mixed-norm Littlewood-Paley toolkit command line.
//
// Subcommands:
//   norm       compute a B/F quasi-norm of a field file
//   decompose  dump Littlewood-Paley bands as MNF1 files
//   verify     run one inequality family (or all) over a seeded ensemble
//   sweep      scaling-exponent sweep of the NPP constant
//
// Exit codes: 0 all-pass, 1 verdict fail, 2 configuration error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mnl/verifier.hpp"

namespace {

using namespace mnl;
using nlohmann::json;

double parse_exponent(const std::string& tok) {
    if (tok == "inf" || tok == "Inf" || tok == "INF") return kInf;
    auto slash = tok.find('/');
    if (slash != std::string::npos) {
        double num = std::stod(tok.substr(0, slash));
        double den = std::stod(tok.substr(slash + 1));
        if (den == 0.0) throw std::invalid_argument("zero denominator in " + tok);
        return num / den;
    }
    return std::stod(tok);
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(parse_exponent(tok));
    return out;
}

struct RunConfig {
    std::vector<std::size_t> dims;
    std::vector<double> periods;
    std::vector<double> aniso;
    std::string p = "2", r = "2", q = "2";
    double s = 0.0, t = 0.0;
    double R = 4.0;
    std::string Rvec;
    std::string R_list = "2,4,8,16,32,64";
    int jmax = -1;
    int trials = 100;
    std::uint64_t seed = 0;
    double slope_tol = 0.15;
    std::string ineq = "all";
    std::string family = "F";
    std::string input, output, json_path, csv_path;
};

GridSpec make_grid(const RunConfig& cfg, std::vector<std::string>& errs) {
    GridSpec g;
    g.dims = cfg.dims.empty() ? std::vector<std::size_t>{64} : cfg.dims;
    if (cfg.periods.empty())
        g.periods.assign(g.dims.size(), 2.0 * std::numbers::pi);
    else
        g.periods = cfg.periods;
    try {
        g.validate();
    } catch (const std::exception& e) {
        errs.push_back(e.what());
    }
    return g;
}

Anisotropy make_aniso(const RunConfig& cfg, std::size_t n,
                      std::vector<std::string>& errs) {
    Anisotropy a = cfg.aniso.empty() ? Anisotropy::isotropic(n)
                                     : Anisotropy{cfg.aniso};
    try {
        a.validate();
        if (a.ndim() != n) errs.push_back("anisotropy dimension mismatch");
    } catch (const std::exception& e) {
        errs.push_back(e.what());
    }
    return a;
}

int max_admissible_jmax(const GridSpec& grid, const Anisotropy& a) {
    int j = -1;
    while (true) {
        bool ok = true;
        for (std::size_t k = 0; k < grid.ndim(); ++k)
            if (!(std::pow(2.0, a.a[k] * (j + 2)) < grid.nyquist(k))) ok = false;
        if (!ok) return j;
        ++j;
    }
}

void emit_report(const VerificationReport& rep, const RunConfig& cfg) {
    if (!cfg.json_path.empty())
        write_file_atomic(cfg.json_path, rep.to_json().dump(2) + "\n");
    if (!cfg.csv_path.empty()) {
        std::ostringstream os;
        rep.write_csv(os);
        write_file_atomic(cfg.csv_path, os.str());
    }
}

// --- verification drivers ---------------------------------------------------

VerificationReport run_npp(const RunConfig& cfg, const GridSpec& grid) {
    double p = parse_exponent(cfg.p), r = parse_exponent(cfg.r);
    EnsembleSpec es;
    es.grid = grid;
    es.kind = EnsembleKind::random_rect;
    es.rect.assign(grid.ndim(), cfg.R);
    es.seed = cfg.seed;

    VerificationReport rep;
    rep.config = {{"ineq", "npp"}, {"p", cfg.p}, {"r", cfg.r}, {"R", cfg.R},
                  {"trials", cfg.trials}, {"seed", cfg.seed}};
    rep.trials.resize(static_cast<std::size_t>(cfg.trials));
    parallel_for_trials(cfg.trials, [&](int i) {
        SampledField f = generate_trial(es, i);
        // The measured support may exceed the axis rectangle radius in
        // Euclidean norm; declare the ball accordingly.
        double ball = cfg.R * std::sqrt(static_cast<double>(grid.ndim()));
        RatioTrial t = npp_ratio(f, p, r, ball);
        t.trial = i;
        rep.trials[static_cast<std::size_t>(i)] = t;
    });
    for (const RatioTrial& t : rep.trials)
        if (t.skipped) ++rep.skipped;
    rep.c_emp = empirical_constant(rep.trials);
    rep.pass = std::isfinite(rep.c_emp) && rep.c_emp > 0.0;
    return rep;
}

VerificationReport run_mixed_npp(const RunConfig& cfg, const GridSpec& grid,
                                 std::vector<std::string>& errs) {
    MixedExponents p{parse_list(cfg.p)}, r{parse_list(cfg.r)};
    if (p.ndim() != grid.ndim() || r.ndim() != grid.ndim()) {
        errs.push_back("mixed-npp: p/r length must equal grid dimension");
        return {};
    }
    std::vector<double> R = cfg.Rvec.empty()
                                ? std::vector<double>(grid.ndim(), cfg.R)
                                : parse_list(cfg.Rvec);
    EnsembleSpec es;
    es.grid = grid;
    es.kind = EnsembleKind::random_rect;
    es.rect = R;
    es.seed = cfg.seed;

    VerificationReport rep;
    rep.config = {{"ineq", "mixed-npp"}, {"p", cfg.p}, {"r", cfg.r},
                  {"R", R}, {"trials", cfg.trials}, {"seed", cfg.seed}};
    rep.trials.resize(static_cast<std::size_t>(cfg.trials));
    parallel_for_trials(cfg.trials, [&](int i) {
        SampledField f = generate_trial(es, i);
        RatioTrial t = mixed_npp_ratio(f, p, r, R);
        t.trial = i;
        rep.trials[static_cast<std::size_t>(i)] = t;
    });
    for (const RatioTrial& t : rep.trials)
        if (t.skipped) ++rep.skipped;
    rep.c_emp = empirical_constant(rep.trials);
    rep.pass = std::isfinite(rep.c_emp) && rep.c_emp > 0.0;
    return rep;
}

VerificationReport run_seq_npp(const RunConfig& cfg, const GridSpec& grid,
                               const Anisotropy& aniso,
                               std::vector<std::string>& errs) {
    MixedExponents p{parse_list(cfg.p)}, r{parse_list(cfg.r)};
    double q = parse_exponent(cfg.q);
    if (p.ndim() != grid.ndim() || r.ndim() != grid.ndim()) {
        errs.push_back("seq-npp: p/r length must equal grid dimension");
        return {};
    }
    int jmax = cfg.jmax >= 0 ? cfg.jmax : max_admissible_jmax(grid, aniso);
    if (jmax < 1) {
        errs.push_back("seq-npp: grid too small for any band decomposition");
        return {};
    }
    std::vector<double> Rbase(grid.ndim());
    for (std::size_t k = 0; k < grid.ndim(); ++k)
        Rbase[k] = std::pow(2.0, aniso.a[k]);
    double A = std::pow(2.0, aniso.max_weight());

    EnsembleSpec es;
    es.grid = grid;
    es.kind = EnsembleKind::lp_bands;
    es.aniso = aniso;
    es.band_jmax = jmax;
    es.seed = cfg.seed;

    VerificationReport rep;
    rep.config = {{"ineq", "seq-npp"}, {"p", cfg.p}, {"r", cfg.r},
                  {"q", cfg.q}, {"aniso", aniso.a}, {"jmax", jmax},
                  {"trials", cfg.trials}, {"seed", cfg.seed}};
    rep.trials.resize(static_cast<std::size_t>(cfg.trials));
    parallel_for_trials(cfg.trials, [&](int i) {
        auto bands = generate_band_sequence(es, i);
        RatioTrial t = seq_npp_ratio(bands, p, r, Rbase, A, q);
        t.trial = i;
        rep.trials[static_cast<std::size_t>(i)] = t;
    });
    for (const RatioTrial& t : rep.trials)
        if (t.skipped) ++rep.skipped;
    rep.c_emp = empirical_constant(rep.trials);
    rep.pass = std::isfinite(rep.c_emp) && rep.c_emp > 0.0;
    return rep;
}

VerificationReport run_sobolev(const RunConfig& cfg, const GridSpec& grid,
                               const Anisotropy& aniso,
                               std::vector<std::string>& errs) {
    MixedExponents p{parse_list(cfg.p)}, r{parse_list(cfg.r)};
    double q = parse_exponent(cfg.q);
    if (p.ndim() != grid.ndim() || r.ndim() != grid.ndim()) {
        errs.push_back("sobolev: p/r length must equal grid dimension");
        return {};
    }
    double lhs_bal = cfg.s, rhs_bal = cfg.t;
    for (std::size_t k = 0; k < grid.ndim(); ++k) {
        lhs_bal -= p.p[k] == kInf ? 0.0 : aniso.a[k] / p.p[k];
        rhs_bal -= r.p[k] == kInf ? 0.0 : aniso.a[k] / r.p[k];
    }
    if (std::fabs(lhs_bal - rhs_bal) > 1e-12) {
        std::ostringstream os;
        os << "sobolev: balance violated: s - sum a_k/p_k = " << lhs_bal
           << " but t - sum a_k/r_k = " << rhs_bal;
        errs.push_back(os.str());
        return {};
    }
    int jmax = cfg.jmax >= 0 ? cfg.jmax : max_admissible_jmax(grid, aniso);
    if (jmax < 1) {
        errs.push_back("sobolev: grid too small for any band decomposition");
        return {};
    }
    LPFamily family = build_family(grid, aniso, jmax);

    EnsembleSpec es;
    es.grid = grid;
    es.kind = EnsembleKind::lp_bands;
    es.aniso = aniso;
    es.band_jmax = jmax;
    es.seed = cfg.seed;

    VerificationReport rep;
    rep.config = {{"ineq", "sobolev"}, {"s", cfg.s}, {"t", cfg.t},
                  {"p", cfg.p}, {"r", cfg.r}, {"q", cfg.q},
                  {"aniso", aniso.a}, {"jmax", jmax},
                  {"trials", cfg.trials}, {"seed", cfg.seed}};
    rep.trials.resize(static_cast<std::size_t>(cfg.trials));
    parallel_for_trials(cfg.trials, [&](int i) {
        // Re-synthesize the full field from its bands for the ratio.
        auto bands = generate_band_sequence(es, i);
        std::vector<cplx> sum(grid.size(), cplx(0.0, 0.0));
        for (const SampledField& b : bands)
            for (std::size_t m = 0; m < sum.size(); ++m)
                sum[m] += b.values()[m];
        SampledField u(grid, std::move(sum));
        RatioTrial t = sobolev_ratio(u, family, cfg.s, cfg.t, p, r, q);
        t.trial = i;
        rep.trials[static_cast<std::size_t>(i)] = t;
    });
    for (const RatioTrial& t : rep.trials)
        if (t.skipped) ++rep.skipped;
    rep.c_emp = empirical_constant(rep.trials);
    rep.pass = std::isfinite(rep.c_emp) && rep.c_emp > 0.0;
    return rep;
}

VerificationReport run_lemma1(const RunConfig& cfg) {
    VerificationReport rep;
    rep.config = {{"ineq", "lemma1"}, {"seed", cfg.seed}};
    bool ok = true;

    // Single-term sequences: equality case, ratio must be 1 to 1e-12.
    int id = 0;
    for (int i = 0; i < 200; ++i) {
        TrialRng rng(cfg.seed, static_cast<std::uint64_t>(i));
        double s0 = -2.0 + 4.0 * rng.uniform();
        double s1 = s0 - (0.25 + 2.0 * rng.uniform());
        double theta = 0.05 + 0.9 * rng.uniform();
        double q = (i % 5 == 0) ? kInf : 0.25 + 4.0 * rng.uniform();
        double base = 1.5 + 2.0 * rng.uniform();
        int m = static_cast<int>(rng.next_u64() % 8);
        std::vector<cplx> seq(static_cast<std::size_t>(m) + 1, cplx(0.0, 0.0));
        seq[static_cast<std::size_t>(m)] = cplx(rng.normal(), rng.normal());
        auto res = interpolation_ratio(seq, s0, s1, theta, q, base);
        RatioTrial t;
        t.trial = id++;
        t.lhs = res.lhs;
        t.rhs_norm = res.rhs;
        t.ratio = res.ratio;
        rep.trials.push_back(t);
        if (std::fabs(res.ratio - 1.0) > 1e-12) ok = false;
    }

    // Exhaustive 0/1 search, deterministic reference constant.
    double c_emp = 0.0;
    for (int len = 1; len <= 12; ++len)
        for (unsigned mask = 1; mask < (1u << len); ++mask) {
            std::vector<cplx> seq(static_cast<std::size_t>(len));
            for (int j = 0; j < len; ++j)
                seq[static_cast<std::size_t>(j)] = (mask >> j) & 1u ? 1.0 : 0.0;
            auto res = interpolation_ratio(seq, 1.0, -1.0, 0.5, 1.0, 2.0);
            c_emp = std::max(c_emp, res.ratio);
        }
    rep.c_emp = c_emp;
    rep.notes.push_back("c_emp from exhaustive 0/1 search, length <= 12, "
                        "(s0,s1,theta,q,base) = (1,-1,0.5,1,2)");
    rep.pass = ok && std::isfinite(c_emp);
    return rep;
}

VerificationReport run_subadd(const RunConfig& cfg, const GridSpec& grid,
                              std::vector<std::string>& errs) {
    MixedExponents p{parse_list(cfg.p)};
    if (p.ndim() != grid.ndim()) {
        errs.push_back("subadd: p length must equal grid dimension");
        return {};
    }
    EnsembleSpec es;
    es.grid = grid;
    es.kind = EnsembleKind::random_rect;
    es.rect.assign(grid.ndim(), cfg.R);
    es.seed = cfg.seed;

    VerificationReport rep;
    rep.config = {{"ineq", "subadd"}, {"p", cfg.p}, {"trials", cfg.trials},
                  {"seed", cfg.seed}};
    rep.trials.resize(static_cast<std::size_t>(cfg.trials));
    std::vector<char> holds(static_cast<std::size_t>(cfg.trials), 1);
    parallel_for_trials(cfg.trials, [&](int i) {
        SampledField f = generate_trial(es, 2 * i);
        SampledField g = generate_trial(es, 2 * i + 1);
        auto res = power_subadditivity_check(f, g, p);
        RatioTrial t;
        t.trial = i;
        t.lhs = res.lhs;
        t.rhs_norm = res.rhs;
        t.ratio = res.rhs > 0.0 ? res.lhs / res.rhs : 0.0;
        rep.trials[static_cast<std::size_t>(i)] = t;
        holds[static_cast<std::size_t>(i)] = res.holds ? 1 : 0;
    });
    rep.c_emp = empirical_constant(rep.trials);
    rep.pass = std::all_of(holds.begin(), holds.end(),
                           [](char h) { return h == 1; });
    if (!rep.pass) rep.notes.push_back("subadditivity violation detected");
    return rep;
}

int do_verify(RunConfig& cfg) {
    std::vector<std::string> errs;
    GridSpec grid = make_grid(cfg, errs);
    Anisotropy aniso = make_aniso(cfg, grid.ndim(), errs);
    if (!errs.empty()) {
        for (const auto& e : errs) std::cerr << "config error: " << e << "\n";
        return 2;
    }

    std::vector<std::pair<std::string, VerificationReport>> reports;
    auto run_one = [&](const std::string& name) {
        if (name == "npp") reports.emplace_back(name, run_npp(cfg, grid));
        else if (name == "mixed-npp")
            reports.emplace_back(name, run_mixed_npp(cfg, grid, errs));
        else if (name == "seq-npp")
            reports.emplace_back(name, run_seq_npp(cfg, grid, aniso, errs));
        else if (name == "sobolev")
            reports.emplace_back(name, run_sobolev(cfg, grid, aniso, errs));
        else if (name == "lemma1") reports.emplace_back(name, run_lemma1(cfg));
        else if (name == "subadd")
            reports.emplace_back(name, run_subadd(cfg, grid, errs));
        else errs.push_back("unknown inequality selector: " + name);
    };

    if (cfg.ineq == "all") {
        // Representative defaults per family on the shared grid.
        for (const char* name :
             {"npp", "mixed-npp", "seq-npp", "sobolev", "lemma1", "subadd"}) {
            RunConfig sub = cfg;
            if (std::string(name) == "sobolev" && sub.s == sub.t) {
                // Need a balanced nontrivial pair; derive one from p -> r.
                sub.s = 1.0;
                MixedExponents p{parse_list(sub.p)}, r{parse_list(sub.r)};
                double gap = 0.0;
                for (std::size_t k = 0; k < grid.ndim(); ++k)
                    gap += aniso.a[k] * ((p.p[k] == kInf ? 0.0 : 1.0 / p.p[k]) -
                                         (r.p[k] == kInf ? 0.0 : 1.0 / r.p[k]));
                sub.t = sub.s - gap;
                if (!(sub.s > sub.t)) { sub.s = sub.t + 1.0; sub.t = sub.s - gap; }
            }
            RunConfig tmp = sub;
            std::swap(cfg, tmp);
            run_one(name);
            std::swap(cfg, tmp);
        }
    } else {
        run_one(cfg.ineq);
    }
    if (!errs.empty()) {
        for (const auto& e : errs) std::cerr << "config error: " << e << "\n";
        return 2;
    }

    bool all_pass = true;
    json breakdown = json::array();
    for (auto& [name, rep] : reports) {
        std::printf("[%s] %-9s c_emp=%.6g skipped=%d\n",
                    rep.pass ? "PASS" : "FAIL", name.c_str(), rep.c_emp,
                    rep.skipped);
        breakdown.push_back({{"ineq", name},
                             {"c_emp", rep.c_emp},
                             {"verdict", rep.pass ? "pass" : "fail"}});
        all_pass = all_pass && rep.pass;
    }

    if (reports.size() == 1) {
        emit_report(reports[0].second, cfg);
    } else {
        VerificationReport agg;
        agg.config = {{"ineq", "all"}, {"seed", cfg.seed}};
        agg.pass = all_pass;
        for (auto& [name, rep] : reports) {
            agg.c_emp = std::max(agg.c_emp, rep.c_emp);
            for (RatioTrial t : rep.trials) {
                t.trial = static_cast<int>(agg.trials.size());
                agg.trials.push_back(t);
            }
        }
        json j = agg.to_json();
        j["breakdown"] = breakdown;
        if (!cfg.json_path.empty())
            write_file_atomic(cfg.json_path, j.dump(2) + "\n");
        if (!cfg.csv_path.empty()) {
            std::ostringstream os;
            agg.write_csv(os);
            write_file_atomic(cfg.csv_path, os.str());
        }
        return all_pass ? 0 : 1;
    }
    return all_pass ? 0 : 1;
}

int do_sweep(RunConfig& cfg) {
    std::vector<std::string> errs;
    SweepConfig sc;
    sc.grid = make_grid(cfg, errs);
    if (!errs.empty()) {
        for (const auto& e : errs) std::cerr << "config error: " << e << "\n";
        return 2;
    }
    sc.p = parse_exponent(cfg.p);
    sc.r = parse_exponent(cfg.r);
    sc.R_list = parse_list(cfg.R_list);
    sc.trials = cfg.trials;
    sc.seed = cfg.seed;
    sc.slope_tol = cfg.slope_tol;
    VerificationReport rep = scaling_sweep(sc);
    std::printf("[%s] sweep slope=%.4f predicted=%.4f tol=%.2f\n",
                rep.pass ? "PASS" : "FAIL", rep.fit->slope,
                *rep.predicted_slope, rep.slope_tol);
    emit_report(rep, cfg);
    return rep.pass ? 0 : 1;
}

int do_norm(RunConfig& cfg) {
    SampledField field = read_field(cfg.input);
    std::vector<std::string> errs;
    Anisotropy aniso = make_aniso(cfg, field.spec().ndim(), errs);
    MixedExponents p{parse_list(cfg.p)};
    if (p.ndim() != field.spec().ndim())
        errs.push_back("p length must equal field dimension");
    if (!errs.empty()) {
        for (const auto& e : errs) std::cerr << "config error: " << e << "\n";
        return 2;
    }
    int jmax = cfg.jmax >= 0 ? cfg.jmax
                             : max_admissible_jmax(field.spec(), aniso);
    LPFamily family = build_family(field.spec(), aniso, jmax);
    auto bands = decompose(field, family);
    double q = parse_exponent(cfg.q);
    double value;
    if (cfg.family == "B" || cfg.family == "b")
        value = besov_norm(bands, {cfg.s, aniso, p, q, SpaceFamily::besov});
    else
        value = triebel_norm(bands, {cfg.s, aniso, p, q, SpaceFamily::triebel});
    std::printf("%.17g\n", value);
    return 0;
}

int do_decompose(RunConfig& cfg) {
    SampledField field = read_field(cfg.input);
    std::vector<std::string> errs;
    Anisotropy aniso = make_aniso(cfg, field.spec().ndim(), errs);
    if (!errs.empty()) {
        for (const auto& e : errs) std::cerr << "config error: " << e << "\n";
        return 2;
    }
    int jmax = cfg.jmax >= 0 ? cfg.jmax
                             : max_admissible_jmax(field.spec(), aniso);
    LPFamily family = build_family(field.spec(), aniso, jmax);
    auto bands = decompose(field, family);
    for (std::size_t j = 0; j < bands.size(); ++j) {
        std::string path = cfg.output + "_band" + std::to_string(j) + ".mnf1";
        write_field(bands[j], path);
        std::printf("%s\n", path.c_str());
    }
    return 0;
}

void apply_json_config(const std::string& path, CLI::App* sub, RunConfig& cfg) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("unreadable config file: " + path);
    json j = json::parse(is);
    auto set_if_unset = [&](const char* flag, auto& target) {
        CLI::Option* opt = sub->get_option_no_throw(flag);
        std::string key = flag + 2;  // strip "--"
        if (j.contains(key) && (!opt || opt->count() == 0)) {
            if constexpr (std::is_same_v<std::decay_t<decltype(target)>,
                                         std::string>) {
                if (j[key].is_string()) target = j[key].get<std::string>();
                else target = j[key].dump();
            } else {
                target = j[key].get<std::decay_t<decltype(target)>>();
            }
        }
    };
    set_if_unset("--N", cfg.dims);
    set_if_unset("--L", cfg.periods);
    set_if_unset("--aniso", cfg.aniso);
    set_if_unset("--p", cfg.p);
    set_if_unset("--r", cfg.r);
    set_if_unset("--q", cfg.q);
    set_if_unset("--s", cfg.s);
    set_if_unset("--t", cfg.t);
    set_if_unset("--R", cfg.R);
    set_if_unset("--Rvec", cfg.Rvec);
    set_if_unset("--R-list", cfg.R_list);
    set_if_unset("--jmax", cfg.jmax);
    set_if_unset("--trials", cfg.trials);
    set_if_unset("--seed", cfg.seed);
    set_if_unset("--slope-tol", cfg.slope_tol);
    set_if_unset("--ineq", cfg.ineq);
    set_if_unset("--family", cfg.family);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixed-norm Littlewood-Paley toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string config_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file; flags override");
        sub->add_option("--N", cfg.dims, "grid sizes per axis")->delimiter(',');
        sub->add_option("--L", cfg.periods, "periods per axis (default 2*pi)")
            ->delimiter(',');
        sub->add_option("--aniso", cfg.aniso, "anisotropy weights")->delimiter(',');
        sub->add_option("--p", cfg.p, "exponent(s); comma list, inf, a/b");
        sub->add_option("--r", cfg.r, "target exponent(s)");
        sub->add_option("--q", cfg.q, "sum exponent q");
        sub->add_option("--s", cfg.s, "smoothness s");
        sub->add_option("--t", cfg.t, "target smoothness t");
        sub->add_option("--R", cfg.R, "spectral radius");
        sub->add_option("--Rvec", cfg.Rvec, "per-axis spectral rectangle");
        sub->add_option("--jmax", cfg.jmax, "decomposition depth (-1 = auto)");
        sub->add_option("--trials", cfg.trials, "trial count");
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_option("--json", cfg.json_path, "JSON report path");
        sub->add_option("--csv", cfg.csv_path, "CSV report path");
    };

    CLI::App* norm = app.add_subcommand("norm", "compute a B/F quasi-norm");
    add_common(norm);
    norm->add_option("--family", cfg.family, "B or F");
    norm->add_option("--input", cfg.input, "MNF1 field file")->required();

    CLI::App* dec = app.add_subcommand("decompose", "dump LP bands as MNF1");
    add_common(dec);
    dec->add_option("--input", cfg.input, "MNF1 field file")->required();
    dec->add_option("--output", cfg.output, "output path prefix")->required();

    CLI::App* verify = app.add_subcommand("verify", "verify an inequality family");
    add_common(verify);
    verify->add_option("--ineq", cfg.ineq,
                       "npp|mixed-npp|seq-npp|sobolev|lemma1|subadd|all");

    CLI::App* sweep = app.add_subcommand("sweep", "NPP scaling-exponent sweep");
    add_common(sweep);
    sweep->add_option("--R-list", cfg.R_list, "comma list of radii");
    sweep->add_option("--slope-tol", cfg.slope_tol, "slope tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!config_path.empty()) apply_json_config(config_path, sub, cfg);
        if (sub == norm) return do_norm(cfg);
        if (sub == dec) return do_decompose(cfg);
        if (sub == verify) return do_verify(cfg);
        if (sub == sweep) return do_sweep(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const mnl::io_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
