#include "accel/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "accel/errors.hpp"
#include "accel/units.hpp"

namespace accel {

namespace {

using Kind = ConfigError::Kind;

enum class ValueKind { Real, Count, Keyword };

enum class Constraint { None, Positive, NonNegative, AtLeastOne, AtLeastTwo, OpenUnit };

struct KeySpec {
    std::string_view name;
    ValueKind kind;
    Dimension dimension;
    Constraint constraint;
    bool required;
    void (*set)(Config&, double);
    std::optional<double> (*get)(const Config&);
};

#define REAL_FIELD(path)                                                 \
    [](Config& c, double v) { c.path = v; },                             \
    [](const Config& c) -> std::optional<double> { return c.path; }
#define COUNT_FIELD(path)                                                \
    [](Config& c, double v) { c.path = static_cast<int>(v); },           \
    [](const Config& c) -> std::optional<double> { return c.path; }
#define OPTIONAL_FIELD(path)                                             \
    [](Config& c, double v) { c.path = v; },                             \
    [](const Config& c) -> std::optional<double> { return c.path; }

// Keyword fields are encoded as small integers through the same table.
const KeySpec kKeys[] = {
    {"geometry.n_proof_masses", ValueKind::Count, Dimension::Dimensionless, Constraint::AtLeastOne, true,
     COUNT_FIELD(model.geometry.n_proof_masses)},
    {"geometry.proof_mass_length", ValueKind::Real, Dimension::Length, Constraint::Positive, true,
     REAL_FIELD(model.geometry.proof_mass_length)},
    {"geometry.proof_mass_width", ValueKind::Real, Dimension::Length, Constraint::Positive, true,
     REAL_FIELD(model.geometry.proof_mass_width)},
    {"geometry.proof_mass_thickness", ValueKind::Real, Dimension::Length, Constraint::Positive, false,
     REAL_FIELD(model.geometry.proof_mass_thickness)},
    {"geometry.device_thickness", ValueKind::Real, Dimension::Length, Constraint::Positive, true,
     REAL_FIELD(model.geometry.device_thickness)},
    {"geometry.n_movable_fingers", ValueKind::Count, Dimension::Dimensionless, Constraint::AtLeastOne, true,
     COUNT_FIELD(model.geometry.n_movable_fingers)},
    {"geometry.n_fixed_fingers", ValueKind::Count, Dimension::Dimensionless, Constraint::NonNegative, false,
     COUNT_FIELD(model.geometry.n_fixed_fingers)},
    {"geometry.finger_length", ValueKind::Real, Dimension::Length, Constraint::Positive, true,
     REAL_FIELD(model.geometry.finger_length)},
    {"geometry.finger_breadth", ValueKind::Real, Dimension::Length, Constraint::Positive, true,
     REAL_FIELD(model.geometry.finger_breadth)},
    {"geometry.finger_gap", ValueKind::Real, Dimension::Length, Constraint::Positive, true,
     REAL_FIELD(model.geometry.finger_gap)},
    {"geometry.initial_overlap", ValueKind::Real, Dimension::Length, Constraint::Positive, false,
     OPTIONAL_FIELD(model.geometry.initial_overlap)},
    {"geometry.beam_length", ValueKind::Real, Dimension::Length, Constraint::Positive, true,
     REAL_FIELD(model.geometry.beam_length)},
    {"geometry.beam_width", ValueKind::Real, Dimension::Length, Constraint::Positive, true,
     REAL_FIELD(model.geometry.beam_width)},
    {"geometry.pad_length", ValueKind::Real, Dimension::Length, Constraint::NonNegative, false,
     REAL_FIELD(model.geometry.pad_length)},
    {"geometry.pad_width", ValueKind::Real, Dimension::Length, Constraint::NonNegative, false,
     REAL_FIELD(model.geometry.pad_width)},
    {"geometry.pad_thickness", ValueKind::Real, Dimension::Length, Constraint::NonNegative, false,
     REAL_FIELD(model.geometry.pad_thickness)},
    {"material.youngs_modulus", ValueKind::Real, Dimension::Pressure, Constraint::Positive, true,
     REAL_FIELD(model.material.youngs_modulus)},
    {"material.density", ValueKind::Real, Dimension::Density, Constraint::Positive, true,
     REAL_FIELD(model.material.density)},
    {"material.permittivity", ValueKind::Real, Dimension::Permittivity, Constraint::Positive, false,
     REAL_FIELD(model.material.permittivity)},
    {"material.effective_viscosity", ValueKind::Real, Dimension::Viscosity, Constraint::Positive, false,
     REAL_FIELD(model.material.effective_viscosity)},
    {"overrides.stiffness", ValueKind::Real, Dimension::Stiffness, Constraint::Positive, false,
     OPTIONAL_FIELD(model.overrides.stiffness)},
    {"overrides.sensitivity", ValueKind::Real, Dimension::Sensitivity, Constraint::Positive, false,
     OPTIONAL_FIELD(model.overrides.sensitivity)},
    {"overrides.mass", ValueKind::Real, Dimension::Mass, Constraint::Positive, false,
     OPTIONAL_FIELD(model.overrides.mass)},
    {"model.g_value", ValueKind::Real, Dimension::Acceleration, Constraint::Positive, false,
     REAL_FIELD(model.g_value)},
    {"simulation.dt", ValueKind::Real, Dimension::Time, Constraint::Positive, false,
     REAL_FIELD(simulation.dt)},
    {"simulation.duration", ValueKind::Real, Dimension::Time, Constraint::Positive, false,
     REAL_FIELD(simulation.duration)},
    {"simulation.settling_band", ValueKind::Real, Dimension::Dimensionless, Constraint::OpenUnit, false,
     REAL_FIELD(simulation.settling_band)},
    {"simulation.rise_definition", ValueKind::Keyword, Dimension::Dimensionless, Constraint::None, false,
     [](Config& c, double v) { c.simulation.rise = static_cast<RiseDefinition>(static_cast<int>(v)); },
     [](const Config& c) -> std::optional<double> { return static_cast<int>(c.simulation.rise); }},
    {"frequency.f_min", ValueKind::Real, Dimension::Frequency, Constraint::Positive, false,
     REAL_FIELD(frequency.f_min)},
    {"frequency.f_max", ValueKind::Real, Dimension::Frequency, Constraint::Positive, false,
     REAL_FIELD(frequency.f_max)},
    {"frequency.points", ValueKind::Count, Dimension::Dimensionless, Constraint::AtLeastTwo, false,
     COUNT_FIELD(frequency.points)},
    {"frequency.spacing", ValueKind::Keyword, Dimension::Dimensionless, Constraint::None, false,
     [](Config& c, double v) { c.frequency.spacing = static_cast<GridSpacing>(static_cast<int>(v)); },
     [](const Config& c) -> std::optional<double> { return static_cast<int>(c.frequency.spacing); }},
};

#undef REAL_FIELD
#undef COUNT_FIELD
#undef OPTIONAL_FIELD

struct KeywordChoice {
    std::string_view key;
    std::string_view word;
    int value;
};

const KeywordChoice kKeywords[] = {
    {"simulation.rise_definition", "full", static_cast<int>(RiseDefinition::FirstCrossing)},
    {"simulation.rise_definition", "10-90", static_cast<int>(RiseDefinition::TenToNinety)},
    {"frequency.spacing", "log", static_cast<int>(GridSpacing::Log)},
    {"frequency.spacing", "linear", static_cast<int>(GridSpacing::Linear)},
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

const KeySpec* find_key(std::string_view name) {
    for (const auto& k : kKeys) {
        if (k.name == name) return &k;
    }
    return nullptr;
}

double parse_number(std::string_view token, int line, std::string_view key) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw ConfigError(Kind::NonNumeric, line,
                          std::string(key) + ": '" + std::string(token) + "' is not a finite number");
    }
    return value;
}

void check_constraint(const KeySpec& spec, double value, int line) {
    auto fail = [&](const char* what) {
        throw ConfigError(Kind::InvariantViolation, line,
                          std::string(spec.name) + " must be " + what + ", got " + format_double(value));
    };
    switch (spec.constraint) {
        case Constraint::None: break;
        case Constraint::Positive: if (!(value > 0.0)) fail("positive"); break;
        case Constraint::NonNegative: if (!(value >= 0.0)) fail("non-negative"); break;
        case Constraint::AtLeastOne: if (!(value >= 1.0)) fail(">= 1"); break;
        case Constraint::AtLeastTwo: if (!(value >= 2.0)) fail(">= 2"); break;
        case Constraint::OpenUnit: if (!(value > 0.0 && value < 1.0)) fail("in (0, 1)"); break;
    }
}

}  // namespace

Config parse_config(std::string_view text) {
    Config config;
    std::map<std::string_view, int> seen;  // key -> line

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(Kind::Syntax, line_no, "expected 'section.key = value [unit]'");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const auto tokens = split_ws(line.substr(eq + 1));

        const KeySpec* spec = find_key(key);
        if (spec == nullptr) {
            throw ConfigError(Kind::UnknownKey, line_no, "unknown key '" + std::string(key) + "'");
        }
        if (const auto it = seen.find(spec->name); it != seen.end()) {
            throw ConfigError(Kind::Syntax, line_no,
                              std::string(key) + " already set on line " + std::to_string(it->second));
        }
        if (tokens.empty() || tokens.size() > 2) {
            throw ConfigError(Kind::Syntax, line_no, std::string(key) + ": expected 'value [unit]'");
        }

        double value = 0.0;
        if (spec->kind == ValueKind::Keyword) {
            if (tokens.size() != 1) {
                throw ConfigError(Kind::Syntax, line_no, std::string(key) + " takes a single word");
            }
            bool matched = false;
            std::string choices;
            for (const auto& kw : kKeywords) {
                if (kw.key != spec->name) continue;
                if (!choices.empty()) choices += "|";
                choices += kw.word;
                if (kw.word == tokens[0]) {
                    value = kw.value;
                    matched = true;
                }
            }
            if (!matched) {
                throw ConfigError(Kind::InvariantViolation, line_no,
                                  std::string(key) + " must be one of " + choices);
            }
        } else {
            value = parse_number(tokens[0], line_no, key);
            if (spec->dimension == Dimension::Dimensionless) {
                if (tokens.size() == 2) {
                    throw ConfigError(Kind::BadUnit, line_no,
                                      std::string(key) + " is dimensionless and takes no unit");
                }
            } else {
                if (tokens.size() != 2) {
                    throw ConfigError(Kind::BadUnit, line_no,
                                      std::string(key) + " needs a " +
                                          std::string(to_string(spec->dimension)) + " unit");
                }
                const auto scale = unit_scale(spec->dimension, tokens[1]);
                if (!scale) {
                    throw ConfigError(Kind::BadUnit, line_no,
                                      "unit '" + std::string(tokens[1]) + "' is not a " +
                                          std::string(to_string(spec->dimension)) + " unit");
                }
                value *= *scale;
            }
            if (spec->kind == ValueKind::Count && value != std::floor(value)) {
                throw ConfigError(Kind::NonNumeric, line_no, std::string(key) + " must be an integer");
            }
            check_constraint(*spec, value, line_no);
        }
        spec->set(config, value);
        seen.emplace(spec->name, line_no);
    }

    const int end_line = line_no;
    for (const auto& spec : kKeys) {
        if (spec.required && !seen.contains(spec.name)) {
            throw ConfigError(Kind::MissingRequiredKey, end_line,
                              "missing required key '" + std::string(spec.name) + "'");
        }
    }

    auto& geom = config.model.geometry;
    if (!seen.contains("geometry.proof_mass_thickness")) {
        geom.proof_mass_thickness = geom.device_thickness;
    }
    auto line_of = [&](std::string_view key) {
        const auto it = seen.find(key);
        return it == seen.end() ? end_line : it->second;
    };
    if (geom.initial_overlap && *geom.initial_overlap > geom.finger_length) {
        throw ConfigError(Kind::InvariantViolation, line_of("geometry.initial_overlap"),
                          "geometry.initial_overlap must not exceed geometry.finger_length");
    }
    const auto& ov = config.model.overrides;
    if (ov.stiffness && ov.sensitivity) {
        throw ConfigError(Kind::InvariantViolation,
                          std::max(line_of("overrides.stiffness"), line_of("overrides.sensitivity")),
                          "overrides.stiffness and overrides.sensitivity are mutually exclusive");
    }
    if (!(config.frequency.f_min < config.frequency.f_max)) {
        throw ConfigError(Kind::InvariantViolation, line_of("frequency.f_max"),
                          "frequency.f_min must be below frequency.f_max");
    }
    try {
        geom.validate();
        config.model.material.validate();
        ov.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(Kind::InvariantViolation, end_line, e.what());
    }
    return config;
}

Config load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(Kind::Io, 0, "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(e.kind(), e.line(), path + ": " + e.what());
    }
}

std::string serialize_config(const Config& config) {
    std::ostringstream out;
    for (const auto& spec : kKeys) {
        const auto value = spec.get(config);
        if (!value) continue;
        out << spec.name << " = ";
        if (spec.kind == ValueKind::Keyword) {
            for (const auto& kw : kKeywords) {
                if (kw.key == spec.name && kw.value == static_cast<int>(*value)) out << kw.word;
            }
        } else if (spec.kind == ValueKind::Count) {
            out << static_cast<long long>(*value);
        } else {
            out << format_double(*value);
            if (spec.dimension != Dimension::Dimensionless) out << ' ' << si_unit(spec.dimension);
        }
        out << '\n';
    }
    return out.str();
}

void apply_environment(Config& config) {
    const char* env = std::getenv("ACCEL_SIM_G");
    if (env == nullptr) return;
    const std::string_view text = trim(env);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !(value > 0.0) ||
        !std::isfinite(value)) {
        throw ConfigError(Kind::InvariantViolation, 0,
                          "ACCEL_SIM_G must be a positive number, got '" + std::string(text) + "'");
    }
    config.model.g_value = value;
}

}  // namespace accel
