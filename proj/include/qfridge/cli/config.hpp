// config.hpp — Scenario configuration files for the qfridge tool

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfridge/absorption.hpp"
#include "qfridge/baths.hpp"
#include "qfridge/cooling.hpp"
#include "qfridge/driven.hpp"

namespace qfridge::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Mode { Steady, Cool, Sweep, VerifyLaws };

std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

enum class BathType { Bosonic, Gas };
enum class CapacityKind { Auto, Solid, Gas, Custom };

// INI layout:
//   [meta]   version = 1
//   [fridge] type = absorption | driven, model parameters, rates = constant | spectrum
//   [bath]   type = bosonic | gas, spectrum and heat-capacity parameters
//   [run]    mode, tuning, source, temperatures, sweep grid, seed, tolerances
//   [output] dir and file names
// Keys that do not apply to the selected fridge / bath / capacity type are rejected.
struct ScenarioConfig {
    int version{1};

    FridgeKind fridge{FridgeKind::Absorption};
    AbsorptionModel absorption;
    DrivenModel driven;
    bool spectral_rates{false};

    BathType bath_type{BathType::Bosonic};
    BosonicBath bosonic;
    GasBath gas;
    CapacityKind capacity{CapacityKind::Auto};
    double c0{1.0};
    int capacity_d{3};
    double capacity_exponent{1.0};

    std::optional<Mode> mode;
    TuningPolicy tuning{TuningPolicy::OptimalRatio};
    double lambda_ratio{0.0};
    CurrentSource source{CurrentSource::LowTemperature};
    double T_start{1.0};
    std::optional<double> T_floor;
    int samples_per_decade{40};
    std::vector<int> sweep_d{3};
    std::vector<double> sweep_kappa{1.0, 1.5, 2.0};
    std::uint64_t seed{12345};
    int random_states{20};
    double evolve_time{5.0};
    double tol_first_law{1e-10};
    double tol_second_law{1e-10};
    double tol_cross{1e-8};

    std::string out_dir{"."};
    std::string trajectory_file{"trajectory.csv"};
    std::string sweep_file{"sweep.csv"};
    std::string report_file{"report.json"};

    BathSpectrum spectrum() const;
    HeatCapacityModel capacity_model() const;

    // Model-level invariants; throws ConfigError.
    void validate() const;
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

// Canonical INI text of the resolved configuration; parse_config(to_ini(c)) reproduces c.
std::string to_ini(const ScenarioConfig& config);
// The same content as {section: {key: value}}.
nlohmann::json to_json(const ScenarioConfig& config);
ScenarioConfig from_json(const nlohmann::json& echo);

CoolingScenario cooling_scenario(const ScenarioConfig& config);

// Fridge models with rates resolved (spectral rates evaluated when requested).
AbsorptionModel resolved_absorption(const ScenarioConfig& config);
DrivenModel resolved_driven(const ScenarioConfig& config);

std::string format_double(double v);

} // namespace qfridge::cli
