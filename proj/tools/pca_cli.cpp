#include "pca/fields.hpp"
#include "pca/interactions.hpp"
#include "pca/io.hpp"
#include "pca/symmetry.hpp"
#include "pca/thermal.hpp"
#include "pca/vacuum.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <boost/version.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>

using namespace pca;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kToolVersion = "0.1.0";

struct Run {
    ExperimentConfig cfg;
    json results = json::object();
    bool ok = true;
};

std::ofstream open_out(const Run& r, const std::string& name) {
    std::ofstream f(fs::path(r.cfg.out_dir) / name);
    if (!f) throw InputError("cannot write '" + name + "' in " + r.cfg.out_dir);
    f << std::setprecision(17);
    return f;
}

std::optional<InteractionRule> load_rule(const ExperimentConfig& c) {
    if (!c.rule_path.empty()) {
        if (!fs::exists(c.rule_path)) throw InputError("rule file '" + c.rule_path + "' does not exist");
        return read_rule_file(c.rule_path);
    }
    if (c.rule_name.empty()) return std::nullopt;
    if (c.rule_name == "ua-un") return rule_ua_un();
    if (c.rule_name == "color-switch") return rule_color_switch();
    if (c.rule_name == "two-color") return rule_two_color();
    throw InputError("unknown rule name '" + c.rule_name + "'");
}

Schedule make_schedule(const ExperimentConfig& c) {
    Schedule s;
    s.rule = load_rule(c);
    if (s.rule) {
        if (s.rule->n_species != c.spec.n_species())
            throw InputError("rule species count must match the lattice");
        if (s.rule->width != c.spec.cell_width)
            throw InputError("rule width must equal lattice.cell_width");
    }
    return s;
}

// deterministic default ensemble: eight distinct configs with seeded weights
Ensemble default_ensemble(const LatticeSpec& spec, std::uint64_t seed) {
    if (spec.bits() > 62) throw DimensionError("default ensemble needs at most 62 bits; give an ensemble file");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> code(0, (std::uint64_t{1} << spec.bits()) - 1);
    std::uniform_real_distribution<double> wd(0.1, 1.0);
    std::map<std::uint64_t, double> pick;
    const std::size_t want = std::min<std::uint64_t>(8, std::uint64_t{1} << spec.bits());
    while (pick.size() < want) pick.emplace(code(rng), wd(rng));
    double s = 0;
    for (auto& kv : pick) s += kv.second;
    Ensemble e;
    e.seed = seed;
    for (auto& [c, w] : pick) e.entries.emplace_back(SpinConfig::from_code(c, spec.n_x, spec.n_species()), w / s);
    double acc = 0;
    for (std::size_t i = 0; i + 1 < e.entries.size(); ++i) acc += e.entries[i].second;
    e.entries.back().second = 1.0 - acc;
    return e;
}

Ensemble load_ensemble(const ExperimentConfig& c) {
    if (c.ensemble_path.empty()) return default_ensemble(c.spec, c.seed);
    if (!fs::exists(c.ensemble_path)) throw InputError("ensemble file '" + c.ensemble_path + "' does not exist");
    Ensemble e = read_ensemble_file(c.ensemble_path, c.spec);
    if (e.seed == 0) e.seed = c.seed;
    return e;
}

std::vector<Observable> occupations(const LatticeSpec& spec) {
    std::vector<Observable> obs;
    for (int g = 0; g < spec.n_species(); ++g)
        for (int p = 0; p < spec.n_x; ++p) obs.push_back(occupation_observable(g, p));
    return obs;
}

json series_summary(const std::vector<SeriesPoint>& s) {
    json j = json::object();
    for (const auto& p : s)
        if (p.t == s.back().t) j[p.id] = p.mean;
    return j;
}

void cmd_evolve(Run& r) {
    r.cfg.spec.validate();
    auto sched = make_schedule(r.cfg);
    auto ens = load_ensemble(r.cfg);
    auto s = quantum_occupation_series(ens, r.cfg.spec, sched);
    auto f = open_out(r, "series.csv");
    write_series_csv(f, s);
    r.results["final_layer"] = series_summary(s);
}

void cmd_sample(Run& r) {
    r.cfg.spec.validate();
    auto sched = make_schedule(r.cfg);
    auto ens = load_ensemble(r.cfg);
    SampleMode mode;
    if (r.cfg.mode == "exhaustive") mode = SampleMode::Exhaustive;
    else if (r.cfg.mode == "mc") mode = SampleMode::MonteCarlo;
    else throw InputError("mode must be exhaustive or mc");
    std::size_t n = r.cfg.samples ? r.cfg.samples : 10000;
    auto s = sample_observables(ens, r.cfg.spec, sched, occupations(r.cfg.spec), mode, n);
    auto f = open_out(r, "series.csv");
    write_series_csv(f, s);
    r.results["mode"] = r.cfg.mode;
    r.results["final_layer"] = series_summary(s);
}

void cmd_spectrum(Run& r) {
    const auto& spec = r.cfg.spec;
    spec.validate();
    auto sched = make_schedule(r.cfg);
    BasisIndexing b(spec);
    if (b.dim() > r.cfg.dense_cap)
        throw DimensionError("Hilbert dimension " + std::to_string(b.dim()) + " exceeds dense cap " +
                             std::to_string(r.cfg.dense_cap));
    SignedPermutation S = build_transport_operator(spec);
    if (sched.rule) S = build_cell_operator(spec, *sched.rule) * S;
    auto ev = spectrum(S.to_dense().cast<cplx>());
    {
        auto f = open_out(r, "step_spectrum.csv");
        write_spectrum_csv(f, ev);
    }
    RVec h = hermitian_spectrum(principal_generator(S, spec.epsilon), r.cfg.dense_cap);
    std::vector<cplx> hv(h.data(), h.data() + h.size());
    std::sort(hv.begin(), hv.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    auto f = open_out(r, "spectrum.csv");
    write_spectrum_csv(f, hv);
    double pair = 0;
    for (std::size_t i = 0; i < hv.size(); ++i) pair = std::max(pair, std::abs(hv[i].real() + hv[hv.size() - 1 - i].real()));
    r.results["dim"] = b.dim();
    r.results["min_energy"] = hv.front().real();
    r.results["max_energy"] = hv.back().real();
    r.results["pm_pairing_defect"] = pair;
}

VacuumKind vacuum_kind(const LatticeSpec& s) {
    if (s.species == Species::Dirac) return VacuumKind::ParticleDirac;
    if (s.species == Species::Colored) throw UnsupportedError("vacuum needs species MW_R, MW_L or Dirac");
    return VacuumKind::ParticleMW;
}

void cmd_vacuum(Run& r) {
    const auto& spec = r.cfg.spec;
    spec.validate(true);
    auto m = free_model(spec, r.cfg.dense_cap);
    auto v = build_vacuum(vacuum_kind(spec), m);
    auto rep = vacuum_report(v, m);
    SymmetryContext ctx(spec);
    auto hf = half_filling_check(v.psi, m.ladders);
    std::cout << std::setprecision(12) << "E_vac " << v.energy << "  formula " << m.E0 * spec.n_species() << '\n';
    std::cout << "site occupations";
    for (double x : hf) std::cout << ' ' << x;
    std::cout << "\ntransform  |<0|U|0>|  invariant\n";
    json tab = json::object();
    for (const auto& o : vacuum_symmetry_table(v, ctx)) {
        std::cout << std::setw(9) << to_string(o.kind) << "  " << std::abs(o.overlap) << "  "
                  << (o.invariant ? "yes" : "no") << '\n';
        tab[to_string(o.kind)] = {{"abs_overlap", std::abs(o.overlap)}, {"invariant", o.invariant}};
    }
    r.results["energy"] = v.energy;
    r.results["energy_formula"] = m.E0 * spec.n_species();
    r.results["site_occupations"] = hf;
    r.results["B_eigenvalue"] = rep.B_eigenvalue;
    r.results["momentum"] = rep.momentum;
    r.results["particle_sectors"] = rep.particle_numbers;
    r.results["symmetry"] = tab;
}

void cmd_thermal(Run& r) {
    const auto& spec = r.cfg.spec;
    spec.validate();
    auto m = free_model(spec, r.cfg.dense_cap);
    auto f = open_out(r, "thermal.csv");
    f << "T,species,p,occupation_trace,occupation_analytic,fermi_dirac\n";
    double worst = 0;
    for (double T : r.cfg.temperatures) {
        auto s = thermal_state(m, T);
        for (int g = 0; g < spec.n_species(); ++g)
            for (int k = -spec.jmax(); k <= spec.jmax(); ++k) {
                auto o = mode_occupation(s, m, g, k);
                worst = std::max(worst, std::abs(o.trace - o.fermi_dirac));
                f << T << ',' << g << ',' << m.modes[g].p(k) << ',' << o.trace << ',' << o.analytic << ','
                  << o.fermi_dirac << '\n';
            }
    }
    r.results["temperatures"] = r.cfg.temperatures;
    r.results["max_trace_vs_fermi_dirac"] = worst;
}

void cmd_propagator(Run& r) {
    const auto& c = r.cfg;
    c.spec.validate();
    if (c.grid < 2) throw InputError("propagator.grid >= 2 required");
    Kernel k{c.spec.n_x, c.spec.epsilon};
    auto mode = c.infinite_L ? KernelMode::InfiniteL : KernelMode::FiniteL;
    auto f = open_out(r, "propagator.csv");
    f << "t,x,re,im\n";
    int skipped = 0;
    for (int a = 0; a < c.grid; ++a)
        for (int b = 0; b < c.grid; ++b) {
            double t = c.t_min + (c.t_max - c.t_min) * a / (c.grid - 1);
            double x = c.x_min + (c.x_max - c.x_min) * b / (c.grid - 1);
            if (t == 0.0) {
                ++skipped;
                continue;
            }
            cplx g = feynman(k, c.spec.direction(0), t, x, 0.0, 0.0, mode);
            f << t << ',' << x << ',' << g.real() << ',' << g.imag() << '\n';
        }
    r.results["kernel"] = c.infinite_L ? "infinite_L" : "finite_L";
    r.results["equal_time_points_skipped"] = skipped;
}

struct Check {
    std::string name;
    double value, tol;
    bool pass() const { return value <= tol; }
};

void emit_checks(Run& r, const std::vector<Check>& checks, const std::string& file) {
    auto f = open_out(r, file);
    f << "check,value,tol,pass\n";
    json j = json::array();
    for (const auto& c : checks) {
        f << c.name << ',' << c.value << ',' << c.tol << ',' << (c.pass() ? 1 : 0) << '\n';
        j.push_back({{"check", c.name}, {"value", c.value}, {"tol", c.tol}, {"pass", c.pass()}});
        std::cout << (c.pass() ? "PASS " : "FAIL ") << c.name << "  " << c.value << '\n';
        r.ok = r.ok && c.pass();
    }
    r.results["checks"] = j;
}

void cmd_symmetry(Run& r) {
    int n = r.cfg.spec.n_x;
    auto f = open_out(r, "symmetry.csv");
    f << "model,transform,step_invariant,step_deviation,hamiltonian_ok,hamiltonian_deviation\n";
    json j = json::object();
    for (Species sp : {Species::MW_R, Species::MW_L, Species::Dirac}) {
        LatticeSpec s = r.cfg.spec;
        s.n_x = n;
        s.species = sp;
        s.cell_width = 1;
        s.validate();
        SymmetryContext ctx(s);
        auto S = build_transport_operator(s);
        auto m = free_model(s, r.cfg.dense_cap);
        SpMat HR = m.H_gamma[0], HL = sp == Species::Dirac ? m.H_gamma[1] : SpMat(-m.H_gamma[0]);
        if (sp == Species::MW_L) std::swap(HR, HL);
        for (auto k : kAllTransforms) {
            auto inv = check_invariance(S, k, ctx);
            auto hr = hamiltonian_transform_report(HR, HL, k, ctx);
            double hd = std::max(hr.dev_R, hr.dev_L);
            f << to_string(sp) << ',' << to_string(k) << ',' << inv.invariant << ',' << inv.deviation << ','
              << hr.ok << ',' << hd << '\n';
            j[to_string(sp)][to_string(k)] = {{"step_invariant", inv.invariant}, {"hamiltonian_ok", hr.ok}};
            std::cout << std::setw(6) << to_string(sp) << ' ' << std::setw(4) << to_string(k)
                      << "  step " << (inv.invariant ? "invariant" : "changed  ") << "  H map "
                      << (hr.ok ? "PASS" : "FAIL") << '\n';
            r.ok = r.ok && hr.ok;
        }
    }
    r.results["table"] = j;
}

std::vector<Check> invariant_suite(const ExperimentConfig& c) {
    std::vector<Check> out;
    for (Species sp : {Species::MW_R, Species::Dirac}) {
        LatticeSpec s;
        s.n_x = 5;
        s.species = sp;
        auto m = free_model(s, c.dense_cap);
        auto S = build_transport_operator(s);
        const std::string tag = to_string(sp);
        out.push_back({tag + " expm(-i eps H) vs S", max_abs_diff(expm_hermitian(m.H, s.epsilon), S.to_sparse()), 1e-10});
        auto v = build_vacuum(sp == Species::Dirac ? VacuumKind::ParticleDirac : VacuumKind::ParticleMW, m);
        auto rep = vacuum_report(v, m);
        out.push_back({tag + " vacuum energy", std::abs(v.energy - m.E0 * s.n_species()), 1e-10});
        out.push_back({tag + " vacuum eigen residual", rep.eigen_residual, 1e-10});
        double hf = 0;
        for (double x : half_filling_check(v.psi, m.ladders)) hf = std::max(hf, std::abs(x - 0.5));
        out.push_back({tag + " vacuum half filling", hf, 1e-12});
        out.push_back({tag + " vacuum step phase", rep.step_phase_residual, 1e-10});
        auto th = thermal_state(m, 1.0);
        out.push_back({tag + " thermal half filling", thermal_half_filling(th, m).max_site_deviation, 1e-12});
        out.push_back({tag + " thermal stationarity", thermal_stationarity(th, m).step, 1e-12});
        out.push_back({tag + " Heisenberg identity", heisenberg_check(m, 0, 0.37, 0.21), 1e-10});
        SymmetryContext ctx(s);
        double hm = 0;
        SpMat HR = m.H_gamma[0], HL = sp == Species::Dirac ? m.H_gamma[1] : SpMat(-HR);
        for (auto k : kAllTransforms) {
            auto hr = hamiltonian_transform_report(HR, HL, k, ctx);
            hm = std::max({hm, hr.dev_R, hr.dev_L});
        }
        out.push_back({tag + " Hamiltonian transform table", hm, 1e-10});
    }
    LatticeSpec s;
    s.n_x = 5;
    auto m = free_model(s, c.dense_cap);
    out.push_back({"position form of H", max_abs_diff(hamiltonian_position(m.ladders, 0), m.H_gamma[0]), 1e-10});
    out.push_back({"H from field operators", max_abs_diff(reconstruct_hamiltonian(m, 0), m.H_gamma[0]), 1e-8});
    auto ua = rule_ua_un();
    double cert = ua.certificate->all({"C", "P", "T", "CP", "CT", "PT", "CPT"}) ? 0 : 1;
    out.push_back({"UA-UN certificate", cert, 0});
    out.push_back({"UA-UN involution", ua.involution ? 0.0 : 1.0, 0});
    out.push_back({"UA-UN parity", conserves_parity(ua) ? 0.0 : 1.0, 0});
    return out;
}

void cmd_verify(Run& r) {
    std::vector<Check> checks;
    if (!r.cfg.rule_path.empty() || !r.cfg.rule_name.empty()) {
        auto rule = *load_rule(r.cfg);
        for (const auto& [k, e] : rule.certificate->entries) {
            checks.push_back({"rule " + rule.name + " " + k + " covariant", e.covariant ? 0.0 : 1.0, 0});
            checks.push_back({"rule " + rule.name + " " + k + " closed", e.closed ? 0.0 : 1.0, 0});
        }
        checks.push_back({"rule " + rule.name + " parity", conserves_parity(rule) ? 0.0 : 1.0, 0});
        r.results["rule"] = {{"name", rule.name}, {"fixed_points", rule.fixed_points()},
                             {"involution", rule.involution}};
    } else {
        checks = invariant_suite(r.cfg);
    }
    emit_checks(r, checks, "verify.csv");
}

json config_json(const ExperimentConfig& c) {
    return {{"kind", c.kind},
            {"n_x", c.spec.n_x},
            {"epsilon", c.spec.epsilon},
            {"species", to_string(c.spec.species)},
            {"n_t", c.spec.n_t},
            {"cell_width", c.spec.cell_width},
            {"rule_file", c.rule_path},
            {"rule_name", c.rule_name},
            {"ensemble", c.ensemble_path},
            {"seed", c.seed},
            {"mode", c.mode},
            {"dense_cap", c.dense_cap}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"probabilistic cellular automaton toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir, mode, rule_path;
    std::uint64_t seed = 0;
    std::size_t dense_cap = 0;
    bool infinite_L = false;
    app.add_option("--config", config_path, "INI config file")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--mode", mode, "sampling mode")->check(CLI::IsMember({"exhaustive", "mc"}));
    app.add_option("--dense-cap", dense_cap, "largest dense dimension");

    const std::vector<std::string> kinds = {"evolve", "spectrum", "vacuum", "thermal", "propagator",
                                            "symmetry-check", "sample", "verify"};
    for (const auto& k : kinds) {
        auto* sub = app.add_subcommand(k);
        sub->fallthrough();
        if (k == "propagator") sub->add_flag("--infinite-L", infinite_L, "L -> infinity kernel");
        if (k == "verify") sub->add_option("--rule", rule_path, "rule file to certify")->check(CLI::ExistingFile);
    }
    CLI11_PARSE(app, argc, argv);

    Run run;
    try {
        if (!config_path.empty()) run.cfg = read_config(config_path);
        run.cfg.kind = app.get_subcommands().front()->get_name();
        if (app.count("--seed")) run.cfg.seed = seed;
        if (!out_dir.empty()) run.cfg.out_dir = out_dir;
        if (!mode.empty()) run.cfg.mode = mode;
        if (dense_cap) run.cfg.dense_cap = dense_cap;
        if (infinite_L) run.cfg.infinite_L = true;
        if (!rule_path.empty()) run.cfg.rule_path = rule_path;
        fs::create_directories(run.cfg.out_dir);

        auto t0 = std::chrono::steady_clock::now();
        const auto& k = run.cfg.kind;
        if (k == "evolve") cmd_evolve(run);
        else if (k == "sample") cmd_sample(run);
        else if (k == "spectrum") cmd_spectrum(run);
        else if (k == "vacuum") cmd_vacuum(run);
        else if (k == "thermal") cmd_thermal(run);
        else if (k == "propagator") cmd_propagator(run);
        else if (k == "symmetry-check") cmd_symmetry(run);
        else cmd_verify(run);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        json summary = {{"tool", "pca_cli"},
                        {"version", kToolVersion},
                        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                      "." + std::to_string(EIGEN_MINOR_VERSION)},
                        {"boost", BOOST_LIB_VERSION},
                        {"config", config_json(run.cfg)},
                        {"ok", run.ok},
                        {"results", run.results}};
        {
            auto f = open_out(run, "summary.json");
            f << summary.dump(2) << '\n';
        }
        auto f = open_out(run, "timings.json");
        f << json{{"command", k}, {"seconds", secs}}.dump(2) << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return run.ok ? 0 : 1;
}
