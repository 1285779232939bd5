// Copyright 2026 The Blockade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "blockade/config.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace blockade {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void field_error(std::string_view key, std::string_view what) {
    throw ValidationError("config field '" + std::string(key) + "': " + std::string(what));
}

double number(const json& v, std::string_view key) {
    if (!v.is_number()) field_error(key, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) field_error(key, "must be finite");
    return x;
}

double positive(const json& v, std::string_view key) {
    const double x = number(v, key);
    if (!(x > 0.0)) field_error(key, "must be > 0");
    return x;
}

double non_negative(const json& v, std::string_view key) {
    const double x = number(v, key);
    if (!(x >= 0.0)) field_error(key, "must be >= 0");
    return x;
}

long long integer(const json& v, std::string_view key, long long min) {
    if (!v.is_number_integer()) field_error(key, "expected an integer");
    const long long x = v.get<long long>();
    if (x < min) field_error(key, "must be >= " + std::to_string(min));
    return x;
}

std::string text(const json& v, std::string_view key) {
    if (!v.is_string()) field_error(key, "expected a string");
    return v.get<std::string>();
}

}  // namespace

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::DriveAmplitude: return "amplitude";
        case SweepAxis::PulseWidth: return "width";
        case SweepAxis::StarkAmplitude: return "stark_amplitude";
    }
    return "?";
}

std::string_view axis_label(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::DriveAmplitude: return "omega0_ghz";
        case SweepAxis::PulseWidth: return "tau_per_kappa";
        case SweepAxis::StarkAmplitude: return "stark_omega0_ghz";
    }
    return "?";
}

double ExperimentConfig::to_angular(double ghz) const {
    return rates_are_over_2pi ? kTwoPi * ghz : ghz;
}

double ExperimentConfig::from_angular(double rad_per_ns) const {
    return rates_are_over_2pi ? rad_per_ns / kTwoPi : rad_per_ns;
}

ExperimentConfig parse_config(std::string_view source) {
    json doc;
    try {
        doc = json::parse(source, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("config must be a JSON object of key/value pairs");

    ExperimentConfig c;
    std::optional<double> g, kappa, gamma, delta_c, omega0, delta_max, sweep_from, sweep_to;
    std::optional<Branch> branch;

    const std::map<std::string, std::function<void(const json&, std::string_view)>, std::less<>> handlers{
        {"rates_are_over_2pi",
         [&](const json& v, std::string_view k) {
             if (!v.is_boolean()) field_error(k, "expected true or false");
             c.rates_are_over_2pi = v.get<bool>();
         }},
        {"g", [&](const json& v, std::string_view k) { g = non_negative(v, k); }},
        {"kappa", [&](const json& v, std::string_view k) { kappa = positive(v, k); }},
        {"gamma", [&](const json& v, std::string_view k) { gamma = non_negative(v, k); }},
        {"delta_c", [&](const json& v, std::string_view k) { delta_c = number(v, k); }},
        {"branch",
         [&](const json& v, std::string_view k) {
             const auto s = text(v, k);
             if (s == "upper") branch = Branch::Upper;
             else if (s == "lower") branch = Branch::Lower;
             else field_error(k, "expected \"upper\" or \"lower\"");
         }},
        {"protocol",
         [&](const json& v, std::string_view k) {
             const auto s = text(v, k);
             if (s == "pulsed") c.protocol = ProtocolKind::Pulsed;
             else if (s == "stark") c.protocol = ProtocolKind::Stark;
             else field_error(k, "expected \"pulsed\" or \"stark\"");
         }},
        {"omega0", [&](const json& v, std::string_view k) { omega0 = non_negative(v, k); }},
        {"tau_per_kappa", [&](const json& v, std::string_view k) { c.tau_per_kappa = positive(v, k); }},
        {"t0_per_tau", [&](const json& v, std::string_view k) { c.t0_per_tau = non_negative(v, k); }},
        {"delta_max", [&](const json& v, std::string_view k) { delta_max = number(v, k); }},
        {"lead_per_kappa", [&](const json& v, std::string_view k) { c.lead_per_kappa = non_negative(v, k); }},
        {"plateau_per_kappa", [&](const json& v, std::string_view k) { c.plateau_per_kappa = non_negative(v, k); }},
        {"ramp_per_kappa", [&](const json& v, std::string_view k) { c.ramp_per_kappa = non_negative(v, k); }},
        {"sweep_axis",
         [&](const json& v, std::string_view k) {
             const auto s = text(v, k);
             if (s == "amplitude") c.sweep_axis = SweepAxis::DriveAmplitude;
             else if (s == "width") c.sweep_axis = SweepAxis::PulseWidth;
             else if (s == "stark_amplitude") c.sweep_axis = SweepAxis::StarkAmplitude;
             else field_error(k, "expected \"amplitude\", \"width\" or \"stark_amplitude\"");
         }},
        {"sweep_from", [&](const json& v, std::string_view k) { sweep_from = non_negative(v, k); }},
        {"sweep_to", [&](const json& v, std::string_view k) { sweep_to = positive(v, k); }},
        {"sweep_steps", [&](const json& v, std::string_view k) { c.sweep_steps = static_cast<int>(integer(v, k, 2)); }},
        {"n_traj", [&](const json& v, std::string_view k) { c.n_traj = static_cast<std::size_t>(integer(v, k, 1)); }},
        {"base_seed",
         [&](const json& v, std::string_view k) {
             if (!v.is_number_unsigned()) field_error(k, "expected a non-negative integer");
             c.base_seed = v.get<std::uint64_t>();
         }},
        {"n_max", [&](const json& v, std::string_view k) { c.n_max = static_cast<int>(integer(v, k, 1)); }},
        {"atol", [&](const json& v, std::string_view k) { c.atol = positive(v, k); }},
        {"t_final_ns", [&](const json& v, std::string_view k) { c.t_final = positive(v, k); }},
        {"dt_max_ns", [&](const json& v, std::string_view k) { c.dt_max = positive(v, k); }},
        {"jump_tol_ns", [&](const json& v, std::string_view k) { c.jump_tol = positive(v, k); }},
        {"oracle_points", [&](const json& v, std::string_view k) { c.oracle_points = static_cast<int>(integer(v, k, 2)); }},
        {"oracle_sigmas", [&](const json& v, std::string_view k) { c.oracle_sigmas = positive(v, k); }},
    };

    for (const auto& [key, value] : doc.items()) {
        const auto it = handlers.find(key);
        if (it == handlers.end()) field_error(key, "unknown key");
        if (value.is_object() || value.is_array()) field_error(key, "nested values are not allowed");
        it->second(value, key);
    }

    if (!g) field_error("g", "required");
    if (!kappa) field_error("kappa", "required");
    if (!gamma) field_error("gamma", "required");
    if (delta_c && branch) field_error("delta_c", "give either delta_c or branch, not both");

    c.system.g = c.to_angular(*g);
    c.system.kappa = c.to_angular(*kappa);
    c.system.gamma = c.to_angular(*gamma);
    c.branch = branch.value_or(c.protocol == ProtocolKind::Pulsed ? Branch::Upper : Branch::Lower);
    if (delta_c) {
        c.system.delta_c = c.to_angular(*delta_c);
    } else {
        c.system.delta_c = c.branch == Branch::Upper ? -c.system.g : c.system.g;
    }
    if (omega0) c.omega0 = c.to_angular(*omega0);
    c.delta_max = delta_max ? c.to_angular(*delta_max) : c.system.g;
    c.sweep_from = sweep_from;
    c.sweep_to = sweep_to;
    if (sweep_from && sweep_to && !(*sweep_from < *sweep_to)) field_error("sweep_from", "must be < sweep_to");
    if (c.protocol == ProtocolKind::Stark && c.plateau_per_kappa < c.ramp_per_kappa) {
        field_error("plateau_per_kappa", "must be >= ramp_per_kappa");
    }
    if (c.sweep_axis) {
        const bool stark_axis = *c.sweep_axis == SweepAxis::StarkAmplitude;
        if (stark_axis != (c.protocol == ProtocolKind::Stark)) {
            field_error("sweep_axis", "does not match the protocol");
        }
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

PointSetup point_setup(const ExperimentConfig& config) {
    if (!config.omega0) field_error("omega0", "required for a single operating point");
    const SweepAxis axis =
        config.protocol == ProtocolKind::Stark ? SweepAxis::StarkAmplitude : SweepAxis::DriveAmplitude;
    return point_setup(config, axis, *config.omega0);
}

PointSetup point_setup(const ExperimentConfig& config, SweepAxis axis, double value) {
    const bool stark_axis = axis == SweepAxis::StarkAmplitude;
    if (stark_axis != (config.protocol == ProtocolKind::Stark)) {
        throw ValidationError("sweep axis '" + std::string(to_string(axis)) + "' needs protocol \"" +
                              (stark_axis ? "stark" : "pulsed") + "\"");
    }
    PointSetup p;
    p.space = FockSpace(config.n_max);
    p.params = config.system;
    const double kappa = config.system.kappa;

    if (config.protocol == ProtocolKind::Pulsed) {
        GaussianPulse pulse;
        pulse.tau = config.tau_per_kappa / kappa;
        if (axis == SweepAxis::PulseWidth) {
            if (!config.omega0) field_error("omega0", "required for a width sweep");
            pulse.tau = value;
            pulse.omega0 = *config.omega0;
        } else {
            pulse.omega0 = value;
        }
        pulse.t0 = config.t0_per_tau * pulse.tau;
        p.protocol = pulse;
        p.schedule = ConstantDetuning{0.0};
        validate(p.protocol);
        p.window = pulsed_window(p.params, pulse, p.schedule);
    } else {
        const ConstantDrive drive{value};
        SmoothedTrapezoid s;
        s.delta_max = config.delta_max;
        s.t_ramp = config.ramp_per_kappa / kappa;
        s.t_on = (config.lead_per_kappa + config.ramp_per_kappa) / kappa;
        s.t_off = s.t_on + config.plateau_per_kappa / kappa;
        p.protocol = drive;
        p.schedule = s;
        validate(p.protocol);
        validate(p.schedule);
        p.window = stark_window(p.params, drive, s);
    }
    if (config.t_final) p.window.t_final = *config.t_final;
    if (config.dt_max) p.window.dt_max = *config.dt_max;
    if (config.jump_tol) p.window.jump_tol = *config.jump_tol;
    p.window.validate();
    p.params.validate();
    return p;
}

std::vector<double> sweep_grid(const ExperimentConfig& config, SweepAxis axis) {
    if (config.sweep_axis && *config.sweep_axis != axis) {
        field_error("sweep_axis", "config asks for '" + std::string(to_string(*config.sweep_axis)) +
                                      "' but the command sweeps '" + std::string(to_string(axis)) + "'");
    }
    const double kappa = config.system.kappa;
    double from = 0.0;
    double to = 0.0;
    switch (axis) {
        case SweepAxis::DriveAmplitude: {
            const double omega_pi = std::sqrt(std::numbers::pi / 2.0) * kappa / config.tau_per_kappa;
            from = config.sweep_from ? config.to_angular(*config.sweep_from) : 0.0;
            to = config.sweep_to ? config.to_angular(*config.sweep_to) : 4.0 * omega_pi;
            break;
        }
        case SweepAxis::StarkAmplitude:
            from = config.sweep_from ? config.to_angular(*config.sweep_from) : 0.0;
            to = config.sweep_to ? config.to_angular(*config.sweep_to) : 4.0 * kappa;
            break;
        case SweepAxis::PulseWidth:
            from = config.sweep_from.value_or(0.01) / kappa;
            to = config.sweep_to.value_or(3.0) / kappa;
            if (!(from > 0.0)) field_error("sweep_from", "pulse width must be > 0");
            break;
    }
    if (!(from < to)) field_error("sweep_from", "must be < sweep_to");
    std::vector<double> grid(static_cast<std::size_t>(config.sweep_steps));
    const int last = config.sweep_steps - 1;
    for (int k = 0; k <= last; ++k) grid[static_cast<std::size_t>(k)] = from + (to - from) * k / last;
    grid.back() = to;
    return grid;
}

double display_value(const ExperimentConfig& config, SweepAxis axis, double physical) {
    return axis == SweepAxis::PulseWidth ? physical * config.system.kappa : config.from_angular(physical);
}

std::uint64_t config_fingerprint(const ExperimentConfig& c) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    auto mix = [&hash](std::uint64_t word) {
        for (int b = 0; b < 8; ++b) {
            hash ^= (word >> (8 * b)) & 0xffU;
            hash *= 0x100000001b3ULL;
        }
    };
    auto mix_double = [&mix](double x) { mix(std::bit_cast<std::uint64_t>(x)); };
    auto mix_optional = [&](const std::optional<double>& x) {
        mix(x.has_value());
        if (x) mix_double(*x);
    };

    for (double x : {c.system.g, c.system.kappa, c.system.gamma, c.system.delta_c}) mix_double(x);
    mix(static_cast<std::uint64_t>(c.protocol));
    mix_optional(c.omega0);
    for (double x : {c.tau_per_kappa, c.t0_per_tau, c.delta_max, c.lead_per_kappa, c.plateau_per_kappa,
                     c.ramp_per_kappa, c.atol}) {
        mix_double(x);
    }
    // Sweep bounds in physical units so the unit flag alone does not change the hash.
    mix(c.sweep_axis.has_value() ? static_cast<std::uint64_t>(*c.sweep_axis) + 1 : 0);
    auto physical_bound = [&](const std::optional<double>& x) -> std::optional<double> {
        if (!x) return x;
        if (c.sweep_axis == SweepAxis::PulseWidth) return *x;
        return c.to_angular(*x);
    };
    mix_optional(physical_bound(c.sweep_from));
    mix_optional(physical_bound(c.sweep_to));
    mix(static_cast<std::uint64_t>(c.sweep_steps));
    mix(static_cast<std::uint64_t>(c.n_max));
    mix_optional(c.t_final);
    mix_optional(c.dt_max);
    mix_optional(c.jump_tol);
    return hash;
}

}  // namespace blockade
