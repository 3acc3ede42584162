// config.cpp — INI parsing, validation and canonical echo of scenario configurations

#include "qfridge/cli/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace qfridge::cli {

std::string to_string(Mode m)
{
    switch (m) {
    case Mode::Steady: return "steady";
    case Mode::Cool: return "cool";
    case Mode::Sweep: return "sweep";
    case Mode::VerifyLaws: return "verify-laws";
    }
    return "?";
}

Mode parse_mode(const std::string& s)
{
    if (s == "steady") return Mode::Steady;
    if (s == "cool") return Mode::Cool;
    if (s == "sweep") return Mode::Sweep;
    if (s == "verify-laws") return Mode::VerifyLaws;
    throw ConfigError("unknown mode '" + s + "'");
}

std::string format_double(double v)
{
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& s)
{
    const std::string t = trim(s);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || *end != '\0' || errno == ERANGE || std::isnan(v)) throw ConfigError(key + ": not a number: '" + s + "'");
    return v;
}

long to_long(const std::string& key, const std::string& s)
{
    const std::string t = trim(s);
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(t.c_str(), &end, 10);
    if (t.empty() || *end != '\0' || errno == ERANGE) throw ConfigError(key + ": not an integer: '" + s + "'");
    return v;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!trim(item).empty()) out.push_back(trim(item));
    return out;
}

template <typename T>
std::string join(const std::vector<T>& v, const std::function<std::string(const T&)>& f)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + f(v[i]);
    return out;
}

template <typename E>
E pick(const std::string& key, const std::string& s, const std::map<std::string, E>& choices)
{
    const auto it = choices.find(trim(s));
    if (it == choices.end()) {
        std::string opts;
        for (const auto& [k, _] : choices) opts += (opts.empty() ? "" : ", ") + k;
        throw ConfigError(key + ": '" + s + "' is not one of {" + opts + "}");
    }
    return it->second;
}

template <typename E>
std::string name_of(E v, const std::map<std::string, E>& choices)
{
    for (const auto& [k, e] : choices)
        if (e == v) return k;
    return "?";
}

const std::map<std::string, FridgeKind> fridge_names{{"absorption", FridgeKind::Absorption}, {"driven", FridgeKind::Driven}};
const std::map<std::string, Medium> medium_names{{"tls", Medium::Tls}, {"oscillator", Medium::Oscillator}};
const std::map<std::string, bool> rate_names{{"constant", false}, {"spectrum", true}};
const std::map<std::string, BathType> bath_names{{"bosonic", BathType::Bosonic}, {"gas", BathType::Gas}};
const std::map<std::string, Statistics> statistics_names{{"bose", Statistics::Bose}, {"fermi", Statistics::Fermi}};
const std::map<std::string, CapacityKind> capacity_names{
    {"auto", CapacityKind::Auto}, {"solid", CapacityKind::Solid}, {"gas", CapacityKind::Gas}, {"custom", CapacityKind::Custom}};
const std::map<std::string, TuningPolicy> tuning_names{{"optimal", TuningPolicy::OptimalRatio}, {"numeric-opt", TuningPolicy::NumericOpt}};
const std::map<std::string, CurrentSource> source_names{
    {"low-t", CurrentSource::LowTemperature}, {"analytic", CurrentSource::Analytic}, {"numeric", CurrentSource::NumericSteadyState}};
const std::map<std::string, Mode> mode_names{
    {"steady", Mode::Steady}, {"cool", Mode::Cool}, {"sweep", Mode::Sweep}, {"verify-laws", Mode::VerifyLaws}};

using Applies = std::function<bool(const ScenarioConfig&)>;
using Setter = std::function<void(ScenarioConfig&, const std::string&)>;
using Getter = std::function<std::string(const ScenarioConfig&)>;

struct Field {
    std::string section;
    std::string key;
    Applies applies;
    Setter set;
    Getter get;
};

bool always(const ScenarioConfig&) { return true; }
bool absorption_only(const ScenarioConfig& c) { return c.fridge == FridgeKind::Absorption; }
bool driven_only(const ScenarioConfig& c) { return c.fridge == FridgeKind::Driven; }
bool bosonic_only(const ScenarioConfig& c) { return c.bath_type == BathType::Bosonic; }
bool gas_only(const ScenarioConfig& c) { return c.bath_type == BathType::Gas; }

Field real(std::string section, std::string key, Applies applies, std::function<double&(ScenarioConfig&)> ref)
{
    const std::string name = section + "." + key;
    return {std::move(section), std::move(key), std::move(applies),
            [ref, name](ScenarioConfig& c, const std::string& s) { ref(c) = to_double(name, s); },
            [ref](const ScenarioConfig& c) { return format_double(ref(const_cast<ScenarioConfig&>(c))); }};
}

template <typename I>
Field integer(std::string section, std::string key, Applies applies, std::function<I&(ScenarioConfig&)> ref)
{
    const std::string name = section + "." + key;
    return {std::move(section), std::move(key), std::move(applies),
            [ref, name](ScenarioConfig& c, const std::string& s) { ref(c) = I(to_long(name, s)); },
            [ref](const ScenarioConfig& c) { return std::to_string(ref(const_cast<ScenarioConfig&>(c))); }};
}

template <typename E>
Field choice(std::string section, std::string key, Applies applies, const std::map<std::string, E>& names,
             std::function<E&(ScenarioConfig&)> ref)
{
    const std::string name = section + "." + key;
    return {std::move(section), std::move(key), std::move(applies),
            [ref, name, &names](ScenarioConfig& c, const std::string& s) { ref(c) = pick(name, s, names); },
            [ref, &names](const ScenarioConfig& c) { return name_of(ref(const_cast<ScenarioConfig&>(c)), names); }};
}

Field optional_real(std::string section, std::string key, Applies applies, std::function<std::optional<double>&(ScenarioConfig&)> ref)
{
    const std::string name = section + "." + key;
    return {std::move(section), std::move(key), std::move(applies),
            [ref, name](ScenarioConfig& c, const std::string& s) {
                if (trim(s) == "none") ref(c).reset();
                else ref(c) = to_double(name, s);
            },
            [ref](const ScenarioConfig& c) {
                const auto& v = ref(const_cast<ScenarioConfig&>(c));
                return v ? format_double(*v) : std::string("none");
            }};
}

Field text(std::string section, std::string key, std::function<std::string&(ScenarioConfig&)> ref)
{
    return {std::move(section), std::move(key), always, [ref](ScenarioConfig& c, const std::string& s) { ref(c) = trim(s); },
            [ref](const ScenarioConfig& c) { return ref(const_cast<ScenarioConfig&>(c)); }};
}

// Selector fields come first: later fields' applicability depends on them.
const std::vector<Field>& fields()
{
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        f.push_back(integer<int>("meta", "version", always, [](ScenarioConfig& c) -> int& { return c.version; }));
        f.push_back(choice<FridgeKind>("fridge", "type", always, fridge_names, [](ScenarioConfig& c) -> FridgeKind& { return c.fridge; }));
        f.push_back(choice<BathType>("bath", "type", always, bath_names, [](ScenarioConfig& c) -> BathType& { return c.bath_type; }));
        f.push_back(choice<CapacityKind>("bath", "capacity", always, capacity_names,
                                         [](ScenarioConfig& c) -> CapacityKind& { return c.capacity; }));

        f.push_back(choice<Medium>("fridge", "medium", absorption_only, medium_names,
                                   [](ScenarioConfig& c) -> Medium& { return c.absorption.medium; }));
        f.push_back(choice<bool>("fridge", "rates", always, rate_names, [](ScenarioConfig& c) -> bool& { return c.spectral_rates; }));

        auto both_real = [&f](const char* key, double AbsorptionModel::*pa, double DrivenModel::*pd) {
            f.push_back(real("fridge", key, always, [pa, pd](ScenarioConfig& c) -> double& {
                return c.fridge == FridgeKind::Absorption ? c.absorption.*pa : c.driven.*pd;
            }));
        };
        both_real("omega_h", &AbsorptionModel::omega_h, &DrivenModel::omega_h);
        both_real("omega_c", &AbsorptionModel::omega_c, &DrivenModel::omega_c);
        both_real("beta_h", &AbsorptionModel::beta_h, &DrivenModel::beta_h);
        both_real("beta_c", &AbsorptionModel::beta_c, &DrivenModel::beta_c);
        both_real("upward_rate_factor", &AbsorptionModel::upward_rate_factor, &DrivenModel::upward_rate_factor);
        f.push_back(integer<Index>("fridge", "truncation", always, [](ScenarioConfig& c) -> Index& {
            return c.fridge == FridgeKind::Absorption ? c.absorption.truncation : c.driven.truncation;
        }));
        f.push_back(integer<Index>("fridge", "max_truncation", always, [](ScenarioConfig& c) -> Index& {
            return c.fridge == FridgeKind::Absorption ? c.absorption.max_truncation : c.driven.max_truncation;
        }));

        auto abs_real = [&f](const char* key, double AbsorptionModel::*p) {
            f.push_back(real("fridge", key, absorption_only, [p](ScenarioConfig& c) -> double& { return c.absorption.*p; }));
        };
        abs_real("gamma_h", &AbsorptionModel::gamma_h);
        abs_real("gamma_c", &AbsorptionModel::gamma_c);
        abs_real("gamma_w", &AbsorptionModel::gamma_w);
        abs_real("beta_w", &AbsorptionModel::beta_w);
        abs_real("delta_h", &AbsorptionModel::delta_h);
        abs_real("delta_c", &AbsorptionModel::delta_c);
        abs_real("repair_rate", &AbsorptionModel::repair_rate);

        auto drv_real = [&f](const char* key, double DrivenModel::*p) {
            f.push_back(real("fridge", key, driven_only, [p](ScenarioConfig& c) -> double& { return c.driven.*p; }));
        };
        drv_real("lambda", &DrivenModel::lambda);
        drv_real("gamma_h_plus", &DrivenModel::gamma_h_plus);
        drv_real("gamma_h_minus", &DrivenModel::gamma_h_minus);
        drv_real("gamma_c_plus", &DrivenModel::gamma_c_plus);
        drv_real("gamma_c_minus", &DrivenModel::gamma_c_minus);

        f.push_back(integer<int>("bath", "d", bosonic_only, [](ScenarioConfig& c) -> int& { return c.bosonic.d; }));
        f.push_back(real("bath", "kappa", bosonic_only, [](ScenarioConfig& c) -> double& { return c.bosonic.kappa; }));
        f.push_back(real("bath", "g0", bosonic_only, [](ScenarioConfig& c) -> double& { return c.bosonic.g0; }));
        f.push_back(real("bath", "n", gas_only, [](ScenarioConfig& c) -> double& { return c.gas.n; }));
        f.push_back(real("bath", "m", gas_only, [](ScenarioConfig& c) -> double& { return c.gas.m; }));
        f.push_back(real("bath", "a_s", gas_only, [](ScenarioConfig& c) -> double& { return c.gas.a_s; }));
        f.push_back(choice<Statistics>("bath", "statistics", gas_only, statistics_names,
                                       [](ScenarioConfig& c) -> Statistics& { return c.gas.statistics; }));
        f.push_back(optional_real("bath", "T_crit", gas_only, [](ScenarioConfig& c) -> std::optional<double>& { return c.gas.T_crit; }));
        f.push_back(real("bath", "c0", always, [](ScenarioConfig& c) -> double& { return c.c0; }));
        f.push_back(integer<int>("bath", "capacity_d", [](const ScenarioConfig& c) { return c.capacity == CapacityKind::Solid; },
                                 [](ScenarioConfig& c) -> int& { return c.capacity_d; }));
        f.push_back(real("bath", "capacity_exponent", [](const ScenarioConfig& c) { return c.capacity == CapacityKind::Custom; },
                         [](ScenarioConfig& c) -> double& { return c.capacity_exponent; }));

        f.push_back({"run", "mode", always,
                     [](ScenarioConfig& c, const std::string& s) {
                         if (trim(s) == "any") c.mode.reset();
                         else c.mode = pick("run.mode", s, mode_names);
                     },
                     [](const ScenarioConfig& c) { return c.mode ? to_string(*c.mode) : std::string("any"); }});
        f.push_back(choice<TuningPolicy>("run", "tuning", always, tuning_names, [](ScenarioConfig& c) -> TuningPolicy& { return c.tuning; }));
        f.push_back(choice<CurrentSource>("run", "source", always, source_names, [](ScenarioConfig& c) -> CurrentSource& { return c.source; }));
        f.push_back(real("run", "lambda_ratio", driven_only, [](ScenarioConfig& c) -> double& { return c.lambda_ratio; }));
        f.push_back(real("run", "T_start", always, [](ScenarioConfig& c) -> double& { return c.T_start; }));
        f.push_back(optional_real("run", "T_floor", always, [](ScenarioConfig& c) -> std::optional<double>& { return c.T_floor; }));
        f.push_back(integer<int>("run", "samples_per_decade", always, [](ScenarioConfig& c) -> int& { return c.samples_per_decade; }));
        f.push_back({"run", "sweep_d", always,
                     [](ScenarioConfig& c, const std::string& s) {
                         c.sweep_d.clear();
                         for (const auto& item : split_list(s)) c.sweep_d.push_back(int(to_long("run.sweep_d", item)));
                     },
                     [](const ScenarioConfig& c) { return join<int>(c.sweep_d, [](const int& v) { return std::to_string(v); }); }});
        f.push_back({"run", "sweep_kappa", always,
                     [](ScenarioConfig& c, const std::string& s) {
                         c.sweep_kappa.clear();
                         for (const auto& item : split_list(s)) c.sweep_kappa.push_back(to_double("run.sweep_kappa", item));
                     },
                     [](const ScenarioConfig& c) { return join<double>(c.sweep_kappa, [](const double& v) { return format_double(v); }); }});
        f.push_back({"run", "seed", always,
                     [](ScenarioConfig& c, const std::string& s) {
                         const long v = to_long("run.seed", s);
                         if (v < 0) throw ConfigError("run.seed must be >= 0");
                         c.seed = std::uint64_t(v);
                     },
                     [](const ScenarioConfig& c) { return std::to_string(c.seed); }});
        f.push_back(integer<int>("run", "random_states", always, [](ScenarioConfig& c) -> int& { return c.random_states; }));
        f.push_back(real("run", "evolve_time", always, [](ScenarioConfig& c) -> double& { return c.evolve_time; }));
        f.push_back(real("run", "tol_first_law", always, [](ScenarioConfig& c) -> double& { return c.tol_first_law; }));
        f.push_back(real("run", "tol_second_law", always, [](ScenarioConfig& c) -> double& { return c.tol_second_law; }));
        f.push_back(real("run", "tol_cross", always, [](ScenarioConfig& c) -> double& { return c.tol_cross; }));

        f.push_back(text("output", "dir", [](ScenarioConfig& c) -> std::string& { return c.out_dir; }));
        f.push_back(text("output", "trajectory", [](ScenarioConfig& c) -> std::string& { return c.trajectory_file; }));
        f.push_back(text("output", "sweep", [](ScenarioConfig& c) -> std::string& { return c.sweep_file; }));
        f.push_back(text("output", "report", [](ScenarioConfig& c) -> std::string& { return c.report_file; }));
        return f;
    }();
    return table;
}

using Sections = std::map<std::string, std::map<std::string, std::string>>;

ScenarioConfig from_sections(const Sections& sections)
{
    const std::set<std::string> known_sections{"meta", "fridge", "bath", "run", "output"};
    for (const auto& [name, _] : sections)
        if (!known_sections.count(name)) throw ConfigError("unknown section [" + name + "]");

    const auto meta = sections.find("meta");
    if (meta == sections.end() || !meta->second.count("version")) throw ConfigError("missing [meta] version");

    ScenarioConfig c;
    std::set<std::pair<std::string, std::string>> used;
    for (const auto& f : fields()) {
        const auto sec = sections.find(f.section);
        if (sec == sections.end()) continue;
        const auto kv = sec->second.find(f.key);
        if (kv == sec->second.end()) continue;
        if (!f.applies(c)) throw ConfigError(f.section + "." + f.key + " does not apply to this configuration");
        f.set(c, kv->second);
        used.insert({f.section, f.key});
    }
    for (const auto& [sec, kvs] : sections)
        for (const auto& [k, _] : kvs)
            if (!used.count({sec, k})) throw ConfigError("unknown key " + sec + "." + k);
    if (c.version != 1) throw ConfigError("unsupported config version " + std::to_string(c.version));
    c.validate();
    return c;
}

Sections to_sections(const ScenarioConfig& c)
{
    Sections out;
    for (const auto& f : fields())
        if (f.applies(c)) out[f.section][f.key] = f.get(c);
    return out;
}

} // namespace

BathSpectrum ScenarioConfig::spectrum() const
{
    if (bath_type == BathType::Bosonic) return bosonic;
    return gas;
}

HeatCapacityModel ScenarioConfig::capacity_model() const
{
    switch (capacity) {
    case CapacityKind::Auto:
        if (bath_type == BathType::Bosonic) return HeatCapacityModel::bosonic_solid(bosonic.d, c0);
        return HeatCapacityModel::ideal_gas(gas.statistics, gas.T_crit, c0);
    case CapacityKind::Solid: return HeatCapacityModel::bosonic_solid(capacity_d, c0);
    case CapacityKind::Gas:
        return bath_type == BathType::Gas ? HeatCapacityModel::ideal_gas(gas.statistics, gas.T_crit, c0)
                                          : HeatCapacityModel::ideal_gas(Statistics::Bose, std::nullopt, c0);
    case CapacityKind::Custom: return HeatCapacityModel::custom(capacity_exponent, c0);
    }
    throw std::logic_error("unknown capacity kind");
}

void ScenarioConfig::validate() const
{
    try {
        if (fridge == FridgeKind::Absorption) absorption.validate();
        else driven.validate();
        std::visit([](const auto& b) { b.validate(); }, spectrum());
        capacity_model().validate();
        if (samples_per_decade < 2) throw std::invalid_argument("run.samples_per_decade must be >= 2");
        if (random_states < 0) throw std::invalid_argument("run.random_states must be >= 0");
        if (!(evolve_time > 0.0)) throw std::invalid_argument("run.evolve_time must be > 0");
        if (!(T_start > 0.0)) throw std::invalid_argument("run.T_start must be > 0");
        if (T_floor && !(*T_floor > 0.0 && *T_floor < T_start)) throw std::invalid_argument("run.T_floor must lie in (0, T_start)");
        if (!(lambda_ratio >= 0.0)) throw std::invalid_argument("run.lambda_ratio must be >= 0");
        for (double tol : {tol_first_law, tol_second_law, tol_cross})
            if (!(tol > 0.0)) throw std::invalid_argument("run tolerances must be > 0");
        for (int d : sweep_d)
            if (d < 1) throw std::invalid_argument("run.sweep_d entries must be >= 1");
        if (trajectory_file.empty() || sweep_file.empty() || report_file.empty())
            throw std::invalid_argument("output file names must not be empty");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

ScenarioConfig parse_config(const std::string& text)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config syntax: ") + e.what());
    }
    Sections sections;
    for (const auto& [name, section] : tree) {
        if (section.empty() && !section.data().empty()) throw ConfigError("key '" + name + "' outside of a section");
        for (const auto& [key, value] : section) sections[name][key] = value.data();
        sections[name];
    }
    return from_sections(sections);
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_ini(const ScenarioConfig& config)
{
    std::string out;
    for (const char* name : {"meta", "fridge", "bath", "run", "output"}) {
        const auto sections = to_sections(config);
        const auto it = sections.find(name);
        if (it == sections.end()) continue;
        out += std::string("[") + name + "]\n";
        for (const auto& f : fields())
            if (f.section == name && it->second.count(f.key)) out += f.key + " = " + it->second.at(f.key) + "\n";
        out += "\n";
    }
    return out;
}

nlohmann::json to_json(const ScenarioConfig& config)
{
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [sec, kvs] : to_sections(config))
        for (const auto& [k, v] : kvs) j[sec][k] = v;
    return j;
}

ScenarioConfig from_json(const nlohmann::json& echo)
{
    Sections sections;
    for (const auto& [sec, kvs] : echo.items()) {
        if (!kvs.is_object()) throw ConfigError("config echo: section '" + sec + "' is not an object");
        for (const auto& [k, v] : kvs.items()) {
            if (!v.is_string()) throw ConfigError("config echo: " + sec + "." + k + " is not a string");
            sections[sec][k] = v.get<std::string>();
        }
    }
    return from_sections(sections);
}

AbsorptionModel resolved_absorption(const ScenarioConfig& config)
{
    if (!config.spectral_rates) return config.absorption;
    return with_spectral_rates(config.absorption, config.spectrum(), config.spectrum());
}

DrivenModel resolved_driven(const ScenarioConfig& config)
{
    if (!config.spectral_rates) return config.driven;
    return with_spectral_rates(config.driven, config.spectrum(), config.spectrum());
}

CoolingScenario cooling_scenario(const ScenarioConfig& config)
{
    CoolingScenario s;
    s.fridge = config.fridge;
    s.absorption = config.absorption;
    s.driven = config.driven;
    s.cold_bath = config.spectrum();
    if (config.spectral_rates) s.hot_bath = config.spectrum();
    s.capacity = config.capacity_model();
    s.tuning = config.tuning;
    s.lambda_ratio = config.lambda_ratio;
    s.source = config.source;
    s.T_start = config.T_start;
    s.T_floor = config.T_floor;
    s.samples_per_decade = config.samples_per_decade;
    return s;
}

} // namespace qfridge::cli
