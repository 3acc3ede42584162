// runner.cpp — steady / cool / sweep / verify-laws subcommands

#include "qfridge/cli/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include <CLI11.hpp>

#ifndef QFRIDGE_VERSION
#define QFRIDGE_VERSION "unknown"
#endif

namespace qfridge::cli {

namespace {

using nlohmann::json;

json num(double v)
{
    if (!std::isfinite(v)) return nullptr;
    return v;
}

struct Audit {
    json checks = json::array();
    json block = json::object();
    bool pass = true;

    void check(const std::string& name, double value, double tol, bool ok)
    {
        checks.push_back({{"name", name}, {"value", num(value)}, {"tol", num(tol)}, {"pass", ok}});
        pass = pass && ok;
    }

    json finish()
    {
        block["checks"] = checks;
        block["pass"] = pass;
        return block;
    }
};

void audit_rates(Audit& a, const std::vector<RatePair>& rates)
{
    json kms = json::array();
    bool all = true;
    for (const auto& p : rates) {
        const bool ok = kms_check(p);
        all = all && ok;
        kms.push_back({{"omega", num(p.omega)}, {"beta", num(p.beta)}, {"down", num(p.down)}, {"up", num(p.up)}, {"pass", ok}});
    }
    a.block["kms"] = kms;
    a.check("kms_detailed_balance", double(rates.size()), 0.0, all);
}

void audit_truncation(Audit& a, Index levels, double top, std::size_t null_dimension)
{
    a.block["truncation"] = {{"levels", levels}, {"top_population", num(top)}, {"guard", 1e-10}};
    a.check("truncation_guard", top, 1e-10, top <= 1e-10);
    a.block["null_dimension"] = null_dimension;
    a.check("ergodic_steady_state", double(null_dimension), 1.0, null_dimension == 1);
}

struct AbsorptionOutcome {
    AbsorptionCurrents currents;
    double sigma;
};

AbsorptionOutcome audit_absorption(Audit& a, const AbsorptionModel& m, const ScenarioConfig& c)
{
    AbsorptionCurrents cur = currents_numeric(m);
    const double first = cur.first_law_residual();
    const double sigma = steady_entropy_production(m, cur);
    a.block["first_law_residual"] = num(first);
    a.block["second_law_min_sigma"] = num(sigma);
    a.check("first_law", std::abs(first), c.tol_first_law, std::abs(first) <= c.tol_first_law);
    a.check("second_law", sigma, c.tol_second_law, sigma >= -c.tol_second_law);
    audit_rates(a, cur.rates);
    audit_truncation(a, cur.truncation, cur.top_population, cur.null_dimension);
    return {std::move(cur), sigma};
}

DrivenCurrents audit_driven(Audit& a, const DrivenModel& m, const ScenarioConfig& c)
{
    DrivenCurrents cur = currents_numeric_driven(m);
    const double flux = m.beta_h * cur.J_h + m.beta_c * cur.J_c;
    a.block["first_law_residual"] = num(cur.J_h + cur.J_c + cur.P);
    a.block["second_law_min_sigma"] = num(-flux);
    a.check("second_law", flux, c.tol_second_law, flux <= c.tol_second_law);
    if (cur.J_c > c.tol_first_law) a.check("positive_power_when_cooling", cur.P, 0.0, cur.P > 0.0);
    audit_rates(a, cur.rates);
    audit_truncation(a, cur.truncation, cur.top_population, cur.null_dimension);
    return cur;
}

json provenance(std::chrono::steady_clock::time_point start)
{
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {{"tool", "qfridge"}, {"version", QFRIDGE_VERSION}, {"wall_time_s", wall}, {"units", "hbar = k_B = 1"}};
}

json base_report(const ScenarioConfig& c, Mode mode)
{
    return {{"mode", to_string(mode)}, {"config", to_json(c)}};
}

std::string fmt(double v) { return format_double(v); }

json fit_json(const ExponentFit& f)
{
    return {{"zeta", num(f.zeta)}, {"intercept", num(f.intercept)}, {"residual", num(f.residual)},
            {"T_low", num(f.T_low)}, {"T_high", num(f.T_high)}, {"points", f.points}};
}

void audit_cooling_start(Audit& a, const CoolingScenario& sc, const ScenarioConfig& c)
{
    const OperatingPoint op = operating_point(sc, sc.T_start);
    if (sc.fridge == FridgeKind::Absorption) audit_absorption(a, absorption_at(sc, sc.T_start, op.omega_c), c);
    else audit_driven(a, driven_at(sc, sc.T_start, op.omega_c, op.lambda), c);
    a.block["operating_point"] = {{"T", num(sc.T_start)}, {"omega_c", num(op.omega_c)}, {"lambda", num(op.lambda)}};
}

CoolingScenario checked_scenario(const ScenarioConfig& c)
{
    CoolingScenario sc = cooling_scenario(c);
    try {
        sc.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return sc;
}

Matrix random_state_matrix(Index dim, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    Matrix z(dim, dim);
    for (Index j = 0; j < dim; ++j)
        for (Index i = 0; i < dim; ++i) z(i, j) = Scalar(g(rng), g(rng));
    Matrix rho = z * z.adjoint();
    return rho / rho.trace();
}

struct SpohnSweep {
    double min_sigma{std::numeric_limits<double>::infinity()};
    std::size_t evaluations{0};
};

SpohnSweep spohn_sweep(const Superoperator& l, const std::vector<BathCoupling>& baths, const ScenarioConfig& c)
{
    std::mt19937_64 rng(c.seed);
    const std::vector<double> times{0.0, 0.25 * c.evolve_time, 0.5 * c.evolve_time, 0.75 * c.evolve_time, c.evolve_time};
    SpohnSweep out;
    for (int k = 0; k < c.random_states; ++k) {
        const DensityMatrix rho0 = DensityMatrix::from_numeric(Operator(l.space(), random_state_matrix(l.space().dim(), rng)));
        for (const auto& rho : evolve(rho0, l, times)) {
            out.min_sigma = std::min(out.min_sigma, entropy_production(rho, l, baths).sigma);
            ++out.evaluations;
        }
    }
    return out;
}

} // namespace

RunReport run_steady(const ScenarioConfig& c, const RunOptions&)
{
    const auto start = std::chrono::steady_clock::now();
    RunReport out;
    json rep = base_report(c, Mode::Steady);
    Audit audit;
    json res;
    if (c.fridge == FridgeKind::Absorption) {
        const AbsorptionModel m = resolved_absorption(c);
        const auto [cur, sigma] = audit_absorption(audit, m, c);
        res = {{"fridge", "absorption"}, {"medium", to_string(m.medium)}, {"J_h", num(cur.J_h)}, {"J_c", num(cur.J_c)},
               {"J_w", num(cur.J_w)}, {"entropy_production", num(sigma)}, {"cop", num(cop(m))}, {"truncation", cur.truncation}};
        if (cur.J_w != 0.0) res["cop_numeric"] = num(cur.J_c / cur.J_w);
        if (m.beta_w == 0.0) {
            const double ja = steady_current_analytic(m);
            const double delta = std::abs(ja - cur.J_c);
            res["J_c_analytic"] = num(ja);
            res["J_c_delta"] = num(delta);
            res["J_c_relative_delta"] = ja != 0.0 ? num(delta / std::abs(ja)) : json(nullptr);
            audit.check("analytic_vs_numeric_J_c", delta, c.tol_cross, delta <= c.tol_cross * std::abs(ja) + c.tol_first_law);
            if (std::abs(cur.J_w) > c.tol_first_law) {
                const double d = std::abs(cur.J_c / cur.J_w - cop(m));
                audit.check("cop_matches_otto", d, c.tol_cross, d <= c.tol_cross * cop(m));
            }
        }
    } else {
        const DrivenModel m = resolved_driven(c);
        const DrivenCurrents cur = audit_driven(audit, m, c);
        const double ja = jc_analytic(m);
        const double delta = std::abs(ja - cur.J_c);
        res = {{"fridge", "driven"}, {"J_h", num(cur.J_h)}, {"J_c", num(cur.J_c)}, {"P", num(cur.P)},
               {"J_c_analytic", num(ja)}, {"J_c_delta", num(delta)}, {"truncation", cur.truncation},
               {"entropy_production", num(-(m.beta_h * cur.J_h + m.beta_c * cur.J_c))}, {"warnings", m.warnings()}};
        res["J_c_relative_delta"] = ja != 0.0 ? num(delta / std::abs(ja)) : json(nullptr);
        if (cur.P != 0.0) res["J_c_over_P"] = num(cur.J_c / cur.P);
        audit.check("analytic_vs_numeric_J_c", delta, c.tol_cross, delta <= c.tol_cross * std::abs(ja) + c.tol_first_law);
    }
    rep["results"] = res;
    out.physics_ok = audit.pass;
    rep["law_audit"] = audit.finish();
    rep["provenance"] = provenance(start);
    out.report = std::move(rep);
    return out;
}

RunReport run_cool(const ScenarioConfig& c, const RunOptions&)
{
    const auto start = std::chrono::steady_clock::now();
    const CoolingScenario sc = checked_scenario(c);
    RunReport out;
    json rep = base_report(c, Mode::Cool);
    Audit audit;
    audit_cooling_start(audit, sc, c);

    json res = {{"optimal_ratio", num(optimal_frequency_ratio(sc.cold_bath))}};
    try {
        const CoolingTrajectory traj = integrate_cooling(sc);
        std::string csv = "# units: hbar = k_B = 1; t [1/energy], T_c [energy], omega_c [energy], lambda [energy], J_c [energy^2]\n"
                          "t,T_c,omega_c,lambda,J_c\n";
        for (const auto& s : traj.samples)
            csv += fmt(s.t) + "," + fmt(s.T) + "," + fmt(s.omega_c) + "," + fmt(s.lambda) + "," + fmt(s.J_c) + "\n";
        out.trajectory_csv = std::move(csv);
        res["samples"] = traj.samples.size();
        res["terminated_at_floor"] = traj.terminated_at_floor;
        res["window_exited"] = traj.window_exited;
        res["T_final"] = num(traj.samples.back().T);
        res["t_final"] = num(traj.samples.back().t);
        if (traj.zeta_fit.points > 0) {
            const auto verdict = unattainability_report(traj.zeta_fit, traj);
            res["fit"] = fit_json(traj.zeta_fit);
            res["verdict"] = to_string(verdict.verdict);
            res["statement"] = verdict.statement;
            res["t0"] = verdict.t0 ? num(*verdict.t0) : json(nullptr);
            res["low_confidence"] = verdict.low_confidence;
        } else {
            res["fit"] = nullptr;
            res["error"] = "too few samples in the coldest decade for an exponent fit";
            out.physics_ok = false;
        }
    } catch (const std::runtime_error& e) {
        res["error"] = e.what();
        out.physics_ok = false;
    }
    rep["results"] = res;
    out.physics_ok = out.physics_ok && audit.pass;
    rep["law_audit"] = audit.finish();
    rep["provenance"] = provenance(start);
    out.report = std::move(rep);
    return out;
}

RunReport run_sweep(const ScenarioConfig& c, const RunOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    const CoolingScenario base = checked_scenario(c);

    struct Row {
        std::string bath;
        int d{0};
        double kappa{0.0};
        ExponentFit fit;
        std::string verdict;
        std::optional<double> t0;
        std::string status;
    };
    std::vector<Row> rows;
    if (c.bath_type == BathType::Bosonic) {
        for (int d : c.sweep_d)
            for (double k : c.sweep_kappa) rows.push_back({"bosonic", d, k, {}, "", std::nullopt, ""});
    } else {
        rows.push_back({"gas-" + to_string(c.gas.statistics), 3, 0.0, {}, "", std::nullopt, ""});
    }

    auto work = [&](Row& row) {
        CoolingScenario sc = base;
        if (row.bath == "bosonic") {
            if (!van_hove_classify(row.d, row.kappa).ground_state_exists) {
                row.status = "unstable field, skipped";
                return;
            }
            BosonicBath b = c.bosonic;
            b.d = row.d;
            b.kappa = row.kappa;
            sc.cold_bath = b;
            if (c.capacity == CapacityKind::Auto) sc.capacity = HeatCapacityModel::bosonic_solid(row.d, c.c0);
            if (sc.hot_bath) sc.hot_bath = b;
        }
        try {
            sc.validate();
            const CoolingTrajectory traj = integrate_cooling(sc);
            if (traj.zeta_fit.points == 0) throw std::runtime_error("too few samples for an exponent fit");
            const auto v = unattainability_report(traj.zeta_fit, traj);
            row.fit = traj.zeta_fit;
            row.verdict = to_string(v.verdict);
            row.t0 = v.t0;
            row.status = v.low_confidence ? "ok (low confidence)" : "ok";
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
        }
    };

    const unsigned n_threads = std::max(1u, std::min<unsigned>(options.threads, unsigned(rows.size())));
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n_threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < rows.size(); i = next++) work(rows[i]);
            });
    }

    RunReport out;
    std::string csv = "# units: hbar = k_B = 1; d [1], kappa [1], zeta [1], residual [1], t0 [1/energy]\n"
                      "row,bath,d,kappa,zeta,residual,verdict,t0,status\n";
    json table = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        const bool done = r.status.rfind("ok", 0) == 0;
        csv += std::to_string(i) + "," + r.bath + "," + std::to_string(r.d) + "," + fmt(r.kappa) + "," + (done ? fmt(r.fit.zeta) : "") +
               "," + (done ? fmt(r.fit.residual) : "") + "," + r.verdict + "," + (r.t0 ? fmt(*r.t0) : "") + ",\"" + r.status + "\"\n";
        table.push_back({{"row", i}, {"bath", r.bath}, {"d", r.d}, {"kappa", num(r.kappa)},
                         {"zeta", done ? num(r.fit.zeta) : json(nullptr)}, {"residual", done ? num(r.fit.residual) : json(nullptr)},
                         {"verdict", r.verdict}, {"t0", r.t0 ? num(*r.t0) : json(nullptr)}, {"status", r.status}});
    }
    out.sweep_csv = std::move(csv);

    json rep = base_report(c, Mode::Sweep);
    Audit audit;
    audit_cooling_start(audit, base, c);
    rep["results"] = {{"rows", table}, {"threads", n_threads}};
    out.physics_ok = audit.pass;
    rep["law_audit"] = audit.finish();
    rep["provenance"] = provenance(start);
    out.report = std::move(rep);
    return out;
}

RunReport run_verify_laws(const ScenarioConfig& c, const RunOptions&)
{
    const auto start = std::chrono::steady_clock::now();
    RunReport out;
    json rep = base_report(c, Mode::VerifyLaws);
    Audit audit;
    SpohnSweep sweep;
    if (c.fridge == FridgeKind::Absorption) {
        const AbsorptionModel m = resolved_absorption(c);
        audit_absorption(audit, m, c);
        const AbsorptionSystem sys = build_absorption_system(m);
        sweep = spohn_sweep(sys.total(), sys.baths, c);
    } else {
        const DrivenModel m = resolved_driven(c);
        audit_driven(audit, m, c);
        const DrivenSystem sys = build_driven_system(m);
        sweep = spohn_sweep(sys.total(), {sys.hot, sys.cold}, c);
    }
    if (sweep.evaluations > 0) {
        audit.block["spohn_min_sigma"] = num(sweep.min_sigma);
        audit.check("spohn_entropy_production", sweep.min_sigma, c.tol_second_law, sweep.min_sigma >= -c.tol_second_law);
    }
    rep["results"] = {{"random_states", c.random_states}, {"spohn_evaluations", sweep.evaluations}};
    out.physics_ok = audit.pass;
    rep["law_audit"] = audit.finish();
    rep["provenance"] = provenance(start);
    out.report = std::move(rep);
    return out;
}

int run(Mode mode, const ScenarioConfig& config, const RunOptions& options)
{
    if (config.mode && *config.mode != mode)
        throw ConfigError("config is for mode '" + to_string(*config.mode) + "', not '" + to_string(mode) + "'");

    RunReport r;
    switch (mode) {
    case Mode::Steady: r = run_steady(config, options); break;
    case Mode::Cool: r = run_cool(config, options); break;
    case Mode::Sweep: r = run_sweep(config, options); break;
    case Mode::VerifyLaws: r = run_verify_laws(config, options); break;
    }

    if (options.write_files) {
        const std::filesystem::path dir = options.out_dir.value_or(std::filesystem::path(config.out_dir));
        std::filesystem::create_directories(dir);
        auto write = [&](const std::string& name, const std::string& body) {
            std::ofstream f(dir / name, std::ios::binary);
            if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
            f << body;
        };
        if (!r.trajectory_csv.empty()) write(config.trajectory_file, r.trajectory_csv);
        if (!r.sweep_csv.empty()) write(config.sweep_file, r.sweep_csv);
        write(config.report_file, r.report.dump(2) + "\n");
    }
    return r.physics_ok ? 0 : 1;
}

int main_entry(int argc, char** argv)
{
    CLI::App app{"qfridge: quantum refrigerators and the dynamical third law"};
    app.set_version_flag("--version", QFRIDGE_VERSION);
    std::string config_path;
    std::string out_dir;
    unsigned threads = 1;
    std::optional<Mode> mode;
    for (Mode m : {Mode::Steady, Mode::Cool, Mode::Sweep, Mode::VerifyLaws}) {
        auto* sub = app.add_subcommand(to_string(m), "run the " + to_string(m) + " scenario");
        sub->add_option("--config", config_path, "scenario file (INI)")->required();
        sub->add_option("--out", out_dir, "output directory (overrides [output] dir)");
        sub->add_option("--threads", threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
        sub->callback([&mode, m] { mode = m; });
    }
    app.require_subcommand(1);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const ScenarioConfig config = load_config(config_path);
        RunOptions options;
        if (!out_dir.empty()) options.out_dir = out_dir;
        options.threads = threads;
        const int code = run(*mode, config, options);
        if (code != 0) std::cerr << "qfridge: physics checks failed (see report)\n";
        return code;
    } catch (const ConfigError& e) {
        std::cerr << "qfridge: config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "qfridge: " << e.what() << "\n";
        return 1;
    }
}

} // namespace qfridge::cli
