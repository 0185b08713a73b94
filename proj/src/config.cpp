// Copyright 2026 The catrep Authors
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

#include "catrep/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "catrep/error.hpp"
#include "json.hpp"

namespace catrep {

using json = nlohmann::ordered_json;

std::vector<double> linear_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop)) {
        throw UsageError("grid needs finite bounds and a positive step");
    }
    std::vector<double> out;
    if (stop < start) {
        return out;
    }
    long n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    if (n > 10000000) {
        throw UsageError("grid has more than 1e7 points");
    }
    for (long i = 0; i <= n; ++i) {
        out.push_back(start + static_cast<double>(i) * step);
    }
    return out;
}

const char *to_string(OutputFormat f) {
    return f == OutputFormat::csv ? "csv" : "jsonl";
}

OutputFormat output_format_from_string(const std::string &name) {
    if (name == "csv") {
        return OutputFormat::csv;
    }
    if (name == "jsonl") {
        return OutputFormat::jsonl;
    }
    throw UsageError("unknown output format '" + name + "' (expected csv or jsonl)");
}

namespace {

json to_json(const Config &c) {
    json j;
    j["chain"] = {{"l_tot_km", c.chain.l_tot_km},
                  {"l0_km", c.chain.l0_km},
                  {"l_att_km", c.chain.l_att_km},
                  {"t0_s", c.chain.t0_s},
                  {"eta_local", c.chain.eta_local},
                  {"local_applications", c.chain.local_applications}};
    j["code"] = {{"m", c.code.m}, {"alpha", c.code.alpha}};
    j["usd"] = {{"mode", to_string(c.usd.mode)},
                {"q", c.usd.q},
                {"probes", to_string(c.usd.probes)},
                {"alpha", c.usd.alpha},
                {"eta", c.usd.eta}};
    j["cavity"] = {{"g", c.cavity.params.g},
                   {"kappa", c.cavity.params.kappa},
                   {"gamma", c.cavity.params.gamma},
                   {"kappa_r", c.cavity.params.kappa_r},
                   {"delta", c.cavity.delta}};
    j["validate"] = {{"m", c.validate.m},
                     {"alpha", c.validate.alpha},
                     {"eta", c.validate.eta},
                     {"tol_f0", c.validate.tol_f0},
                     {"tol_weights", c.validate.tol_weights},
                     {"tol_syndrome", c.validate.tol_syndrome},
                     {"tol_bell_order", c.validate.tol_bell_order},
                     {"bell_m", c.validate.bell_m},
                     {"bell_alpha", c.validate.bell_alpha},
                     {"bell_eta", c.validate.bell_eta}};
    j["output"] = {{"format", to_string(c.output.format)}};
    j["truncation"] = {{"tail_tol", c.truncation.tail_tol}, {"hard_limit", c.truncation.hard_limit}};
    return j;
}

Config from_json(const json &j) {
    Config c;
    const auto &ch = j.at("chain");
    c.chain.l_tot_km = ch.at("l_tot_km").get<double>();
    c.chain.l0_km = ch.at("l0_km").get<std::vector<double>>();
    c.chain.l_att_km = ch.at("l_att_km").get<double>();
    c.chain.t0_s = ch.at("t0_s").get<double>();
    c.chain.eta_local = ch.at("eta_local").get<std::vector<double>>();
    c.chain.local_applications = ch.at("local_applications").get<double>();
    c.code.m = j.at("code").at("m").get<std::vector<int>>();
    c.code.alpha = j.at("code").at("alpha").get<std::vector<double>>();
    const auto &u = j.at("usd");
    c.usd.mode = usd_mode_from_string(u.at("mode").get<std::string>());
    c.usd.q = u.at("q").get<int>();
    c.usd.probes = probe_variant_from_string(u.at("probes").get<std::string>());
    c.usd.alpha = u.at("alpha").get<std::vector<double>>();
    c.usd.eta = u.at("eta").get<double>();
    const auto &cv = j.at("cavity");
    c.cavity.params.g = cv.at("g").get<double>();
    c.cavity.params.kappa = cv.at("kappa").get<double>();
    c.cavity.params.gamma = cv.at("gamma").get<double>();
    c.cavity.params.kappa_r = cv.at("kappa_r").get<double>();
    c.cavity.delta = cv.at("delta").get<std::vector<double>>();
    const auto &v = j.at("validate");
    c.validate.m = v.at("m").get<std::vector<int>>();
    c.validate.alpha = v.at("alpha").get<std::vector<double>>();
    c.validate.eta = v.at("eta").get<std::vector<double>>();
    c.validate.tol_f0 = v.at("tol_f0").get<double>();
    c.validate.tol_weights = v.at("tol_weights").get<double>();
    c.validate.tol_syndrome = v.at("tol_syndrome").get<double>();
    c.validate.tol_bell_order = v.at("tol_bell_order").get<double>();
    c.validate.bell_m = v.at("bell_m").get<int>();
    c.validate.bell_alpha = v.at("bell_alpha").get<double>();
    c.validate.bell_eta = v.at("bell_eta").get<std::vector<double>>();
    c.output.format = output_format_from_string(j.at("output").at("format").get<std::string>());
    c.truncation.tail_tol = j.at("truncation").at("tail_tol").get<double>();
    c.truncation.hard_limit = j.at("truncation").at("hard_limit").get<int>();
    return c;
}

// A grid value: list of numbers or {"start", "stop", "step"}.
json expand_grid(const json &value, bool integral, const std::string &where) {
    json out = json::array();
    if (value.is_number()) {
        out.push_back(value);
    } else if (value.is_array()) {
        for (const auto &x : value) {
            if (!x.is_number()) {
                throw UsageError(where + ": grid entries must be numbers");
            }
            out.push_back(x);
        }
    } else if (value.is_object()) {
        for (auto it = value.begin(); it != value.end(); ++it) {
            if (it.key() != "start" && it.key() != "stop" && it.key() != "step") {
                throw UsageError(where + ": unknown range key '" + it.key() + "'");
            }
        }
        if (!value.contains("start") || !value.contains("stop") || !value.contains("step")) {
            throw UsageError(where + ": range needs start, stop and step");
        }
        for (double x : linear_grid(value.at("start").get<double>(), value.at("stop").get<double>(),
                                    value.at("step").get<double>())) {
            out.push_back(x);
        }
    } else {
        throw UsageError(where + ": expected a list or a range object");
    }
    if (integral) {
        for (auto &x : out) {
            double d = x.get<double>();
            if (d != std::floor(d)) {
                throw UsageError(where + ": entries must be integers");
            }
            x = static_cast<int>(d);
        }
    }
    return out;
}

// Type of the default decides how a user value is read.
void assign(json &slot, const json &value, const std::string &where) {
    if (slot.is_array()) {
        // Depth grids are the only integer lists.
        bool integral = where.size() >= 2 && where.compare(where.size() - 2, 2, ".m") == 0;
        slot = expand_grid(value, integral, where);
    } else if (slot.is_number_integer()) {
        if (!value.is_number() || value.get<double>() != std::floor(value.get<double>())) {
            throw UsageError(where + ": expected an integer");
        }
        slot = static_cast<int>(value.get<double>());
    } else if (slot.is_number()) {
        if (!value.is_number()) {
            throw UsageError(where + ": expected a number");
        }
        slot = value.get<double>();
    } else if (slot.is_string()) {
        if (!value.is_string()) {
            throw UsageError(where + ": expected a string");
        }
        slot = value;
    }
}

json &locate(json &root, const std::string &section, const std::string &key) {
    if (!root.contains(section)) {
        throw UsageError("unknown config section '" + section + "'");
    }
    json &s = root[section];
    if (!s.contains(key)) {
        throw UsageError("unknown config key '" + section + "." + key + "'");
    }
    return s[key];
}

Config finish(const json &j) {
    try {
        Config c = from_json(j);
        c.check();
        return c;
    } catch (const json::exception &e) {
        throw UsageError(std::string("config: ") + e.what());
    }
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        out.push_back(cur);
    }
    if (!s.empty() && s.back() == sep) {
        out.emplace_back();
    }
    return out;
}

double parse_number(const std::string &text, const std::string &where) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw UsageError(where + ": cannot read '" + text + "' as a number");
    }
    return v;
}

void check_positive(double v, const char *name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw UsageError(std::string(name) + " must be positive and finite");
    }
}

}  // namespace

void Config::check() const {
    check_positive(chain.l_tot_km, "chain.l_tot_km");
    check_positive(chain.l_att_km, "chain.l_att_km");
    check_positive(chain.t0_s, "chain.t0_s");
    if (!(chain.local_applications >= 0.0)) {
        throw UsageError("chain.local_applications must be non-negative");
    }
    for (double x : chain.l0_km) {
        check_positive(x, "chain.l0_km entries");
    }
    for (double x : chain.eta_local) {
        if (!(x > 0.0 && x <= 1.0)) {
            throw UsageError("chain.eta_local entries must lie in (0, 1]");
        }
    }
    for (int m : code.m) {
        if (m < 1 || m > 12) {
            throw UsageError("code.m entries must lie in [1, 12]");
        }
    }
    for (double a : code.alpha) {
        check_positive(a, "code.alpha entries");
    }
    for (double a : usd.alpha) {
        check_positive(a, "usd.alpha entries");
    }
    if (!(usd.eta > 0.0 && usd.eta <= 1.0)) {
        throw UsageError("usd.eta must lie in (0, 1]");
    }
    if (usd.q < 0) {
        throw UsageError("usd.q must be non-negative");
    }
    cavity.params.validate();
    for (int m : validate.m) {
        if (m < 1 || m > 3) {
            throw UsageError("validate.m entries must lie in [1, 3]");
        }
    }
    if (validate.bell_m < 1 || validate.bell_m > 3) {
        throw UsageError("validate.bell_m must lie in [1, 3]");
    }
    for (double a : validate.alpha) {
        check_positive(a, "validate.alpha entries");
    }
    check_positive(validate.bell_alpha, "validate.bell_alpha");
    for (const auto *grid : {&validate.eta, &validate.bell_eta}) {
        for (double e : *grid) {
            if (!(e > 0.0 && e <= 1.0)) {
                throw UsageError("validation transmissions must lie in (0, 1]");
            }
        }
    }
    for (double t : {validate.tol_f0, validate.tol_weights, validate.tol_syndrome, validate.tol_bell_order}) {
        if (!(t >= 0.0)) {
            throw UsageError("validation tolerances must be non-negative");
        }
    }
    if (!(truncation.tail_tol > 0.0 && truncation.tail_tol < 1.0) || truncation.hard_limit < 1) {
        throw UsageError("truncation needs 0 < tail_tol < 1 and hard_limit >= 1");
    }
}

Config parse_config(const std::string &json_text, const Config &base) {
    json user;
    try {
        user = json::parse(json_text);
    } catch (const json::exception &e) {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!user.is_object()) {
        throw UsageError("config must be a JSON object");
    }
    json j = to_json(base);
    for (auto sec = user.begin(); sec != user.end(); ++sec) {
        if (!j.contains(sec.key())) {
            throw UsageError("unknown config section '" + sec.key() + "'");
        }
        if (!sec.value().is_object()) {
            throw UsageError("config section '" + sec.key() + "' must be an object");
        }
        for (auto kv = sec.value().begin(); kv != sec.value().end(); ++kv) {
            assign(locate(j, sec.key(), kv.key()), kv.value(), sec.key() + "." + kv.key());
        }
    }
    return finish(j);
}

Config load_config_file(const std::string &path, const Config &base) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open config file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), base);
}

void apply_override(Config &config, const std::string &key, const std::string &value) {
    auto dot = key.find('.');
    if (dot == std::string::npos) {
        throw UsageError("override key '" + key + "' must look like section.field");
    }
    json j = to_json(config);
    json &slot = locate(j, key.substr(0, dot), key.substr(dot + 1));
    json parsed;
    if (slot.is_string()) {
        parsed = value;
    } else if (slot.is_array() && value.find(':') != std::string::npos) {
        auto parts = split(value, ':');
        if (parts.size() != 3) {
            throw UsageError(key + ": range must be start:stop:step");
        }
        parsed = {{"start", parse_number(parts[0], key)},
                  {"stop", parse_number(parts[1], key)},
                  {"step", parse_number(parts[2], key)}};
    } else if (slot.is_array()) {
        parsed = json::array();
        for (const auto &p : split(value, ',')) {
            parsed.push_back(parse_number(p, key));
        }
    } else {
        parsed = parse_number(value, key);
    }
    assign(slot, parsed, key);
    config = finish(j);
}

std::string config_to_json(const Config &config) {
    return to_json(config).dump(2);
}

}  // namespace catrep
