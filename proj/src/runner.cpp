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

#include "catrep/runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "catrep/catcode.hpp"
#include "catrep/error.hpp"
#include "catrep/numeric.hpp"
#include "catrep/protocol_oracle.hpp"
#include "json.hpp"

namespace catrep {

const char *version_string() {
    return "0.1.0";
}

namespace {

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string csv_cell(const Cell &c) {
    struct {
        std::string operator()(std::monostate) const {
            return "";
        }
        std::string operator()(double v) const {
            return format_double(v);
        }
        std::string operator()(long v) const {
            return std::to_string(v);
        }
        std::string operator()(bool v) const {
            return v ? "true" : "false";
        }
        std::string operator()(const std::string &v) const {
            return v;
        }
    } visit;
    return std::visit(visit, c);
}

std::string json_cell(const Cell &c) {
    if (std::holds_alternative<std::monostate>(c)) {
        return "null";
    }
    if (const double *d = std::get_if<double>(&c)) {
        return std::isfinite(*d) ? format_double(*d) : "null";
    }
    if (const std::string *s = std::get_if<std::string>(&c)) {
        return nlohmann::json(*s).dump();
    }
    return csv_cell(c);
}

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

void require_nonempty(bool empty, const char *what) {
    if (empty) {
        throw UsageError(std::string("empty grid: ") + what);
    }
}

std::vector<Cell> point_cells(const SweepPoint &p) {
    return {static_cast<long>(p.m), p.alpha,       p.l0_km,        p.eta_local,         p.n_e,
            p.eta_segment,          p.f0,          p.p0,           p.f_tot,             p.p_tot,
            p.r_per_second,         p.r_per_channel_use, p.plob_bound, p.beats_plob};
}

const std::vector<std::string> kSweepHeader{"m",     "alpha", "l0_km",        "eta_local",         "n_e",
                                            "eta_segment", "F0", "P0",        "F_tot",             "P_tot",
                                            "R_per_second", "R_per_channel_use", "plob_bound", "beats_plob"};

}  // namespace

std::string Table::render(OutputFormat format) const {
    std::ostringstream out;
    if (format == OutputFormat::csv) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            out << (i ? "," : "") << header[i];
        }
        out << "\n";
        for (const auto &row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << (i ? "," : "") << csv_cell(row[i]);
            }
            out << "\n";
        }
        return out.str();
    }
    for (const auto &row : rows) {
        out << "{";
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << nlohmann::json(header[i]).dump() << ":" << json_cell(row[i]);
        }
        out << "}\n";
    }
    return out.str();
}

SweepPoint evaluate_point(const Config &config, int m, double alpha, double l0_km, double eta_local) {
    const auto &ch = config.chain;
    SegmentParams seg{l0_km, ch.l_att_km, eta_local, ch.local_applications};
    ChainParams chain = ChainParams::from_spacing(ch.l_tot_km, l0_km, ch.t0_s);
    CatCodeSpec spec{m, alpha, seg.eta_segment()};

    SweepPoint p;
    p.m = m;
    p.alpha = alpha;
    p.l0_km = l0_km;
    p.eta_local = eta_local;
    p.n_e = chain.n_e;
    p.eta_segment = spec.eta;

    LossWeights w = loss_weights(spec);
    for (int q = 0; q < spec.order(); ++q) {
        p.f0 += w.p[q];
    }
    double error = chain_error_from_uncorrectable(w.uncorrectable, chain.n_e);
    p.f_tot = 1.0 - error;
    p.p0 = optimal_usd_probability(spec, config.usd.mode, config.usd.q);
    p.p_tot = chain_success(p.p0, chain.n_e);
    KeyRate key = secret_key_rate_from_error(error, p.p_tot, ch.t0_s);
    p.r_per_second = key.per_second;
    p.r_per_channel_use = key.per_channel_use;
    p.plob_bound = plob_bound(ch.l_tot_km, ch.l_att_km).bits_per_use;
    p.beats_plob = p.r_per_channel_use > p.plob_bound;
    return p;
}

std::vector<SweepPoint> sweep_points(const Config &config, int threads) {
    auto ms = sorted_unique(config.code.m);
    auto alphas = sorted_unique(config.code.alpha);
    auto l0s = sorted_unique(config.chain.l0_km);
    auto etas = sorted_unique(config.chain.eta_local);
    require_nonempty(ms.empty(), "code.m");
    require_nonempty(alphas.empty(), "code.alpha");
    require_nonempty(l0s.empty(), "chain.l0_km");
    require_nonempty(etas.empty(), "chain.eta_local");
    // Reject bad spacings before doing any work.
    for (double l0 : l0s) {
        ChainParams::from_spacing(config.chain.l_tot_km, l0, config.chain.t0_s);
    }

    struct Key {
        int m;
        double alpha, l0, eta;
    };
    std::vector<Key> keys;
    for (int m : ms) {
        for (double a : alphas) {
            for (double l0 : l0s) {
                for (double e : etas) {
                    keys.push_back({m, a, l0, e});
                }
            }
        }
    }
    std::vector<SweepPoint> out(keys.size());
    parallel_for(keys.size(), threads, [&](std::size_t i) {
        out[i] = evaluate_point(config, keys[i].m, keys[i].alpha, keys[i].l0, keys[i].eta);
    });
    return out;
}

Table sweep_table(const Config &config, int threads) {
    Table t;
    t.header = kSweepHeader;
    for (const auto &p : sweep_points(config, threads)) {
        t.rows.push_back(point_cells(p));
    }
    return t;
}

Table keyrate_table(const Config &config) {
    const auto &c = config;
    if (c.code.m.size() != 1 || c.code.alpha.size() != 1 || c.chain.l0_km.size() != 1 ||
        c.chain.eta_local.size() != 1) {
        throw UsageError("keyrate needs exactly one value each for m, alpha, l0 and eta_local");
    }
    SweepPoint p = evaluate_point(c, c.code.m[0], c.code.alpha[0], c.chain.l0_km[0], c.chain.eta_local[0]);
    Table t;
    t.header = kSweepHeader;
    t.header.push_back("key_fraction_lower_bound");
    t.header.push_back("key_fraction_exact_average");
    std::vector<Cell> row = point_cells(p);
    row.push_back(key_fraction_from_error(1.0 - p.f_tot));
    if (p.n_e <= 8) {
        LossWeights w = loss_weights(CatCodeSpec{p.m, p.alpha, p.eta_segment});
        auto terms = chain_distribution(w, static_cast<int>(p.n_e));
        row.push_back(secret_key_rate_exact(terms, p.p_tot, c.chain.t0_s).key_fraction);
    } else {
        row.push_back(std::monostate{});
    }
    t.rows.push_back(std::move(row));
    return t;
}

Table cavity_table(const Config &config) {
    require_nonempty(config.cavity.delta.empty(), "cavity.delta");
    Table t;
    t.header = {"delta", "phase_ideal", "phase_full", "modulus_full", "modulus_empty"};
    for (double d : config.cavity.delta) {
        ReflectionRow r = reflection_row(d, config.cavity.params);
        t.rows.push_back({r.delta, r.phase_ideal, r.phase_full, r.modulus_full, r.modulus_empty});
    }
    return t;
}

Table usd_table(const Config &config, int threads) {
    const auto &u = config.usd;
    require_nonempty(u.alpha.empty(), "usd.alpha");
    if (u.q > 1) {
        throw UsageError("the 1-loss discriminator table needs usd.q in {0, 1}");
    }
    Table t;
    t.header = {"alpha",        "optimal",      "linear_optics",      "closed_form",
                "p_cd_given_0", "p_ab_given_1", "posterior_error_cd", "posterior_error_ab"};
    t.rows.resize(u.alpha.size());
    const bool closed = u.q == 0 && u.eta == 1.0 && u.probes == ProbeVariant::cat;
    parallel_for(u.alpha.size(), threads, [&](std::size_t i) {
        double a = u.alpha[i];
        LinearOpticsReport lo = linear_optics_usd(a, u.eta, u.q, u.probes);
        Cell cf = closed ? Cell(linear_optics_usd_closed_form(a)) : Cell(std::monostate{});
        t.rows[i] = {a,
                     optimal_usd_probability(CatCodeSpec{1, a, u.eta}, u.q),
                     lo.success,
                     cf,
                     lo.p_cd_given_0,
                     lo.p_ab_given_1,
                     lo.posterior_error_cd,
                     lo.posterior_error_ab};
    });
    return t;
}

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck &c) { return c.passed(); });
}

std::string ValidationReport::render() const {
    std::ostringstream out;
    for (const auto &c : checks) {
        out << c.name << " max_deviation=" << format_double(c.max_deviation)
            << " tolerance=" << format_double(c.tolerance) << " " << (c.passed() ? "PASS" : "FAIL") << "\n";
    }
    out << (passed() ? "all checks passed" : "validation FAILED") << "\n";
    return out.str();
}

ValidationReport run_validation(const Config &config, int threads) {
    const auto &v = config.validate;
    if (v.m.empty() || v.alpha.empty() || v.eta.empty()) {
        throw UsageError("empty validation grid");
    }
    const TruncationPolicy &policy = config.truncation;

    struct Point {
        int m;
        double alpha, eta;
    };
    std::vector<Point> points;
    for (int m : v.m) {
        for (double a : v.alpha) {
            for (double e : v.eta) {
                points.push_back({m, a, e});
            }
        }
    }
    std::vector<double> f0_dev(points.size());
    std::vector<double> w_dev(points.size());
    parallel_for(points.size(), threads, [&](std::size_t i) {
        CatCodeSpec spec{points[i].m, points[i].alpha, points[i].eta};
        LossWeights w = loss_weights(spec);
        UnitReport r = simulate_unit(spec, policy);
        f0_dev[i] = std::abs(segment_fidelity(spec) - r.f0);
        double d = 0.0;
        for (std::size_t q = 0; q < w.p.size(); ++q) {
            d = std::max({d, std::abs(w.p[q] - r.weights[q]), std::abs(w.p[q] - r.kraus_weights[q])});
        }
        w_dev[i] = d;
    });

    // Injected losses a^q for every q < 2M must land on remainder q mod M.
    struct Injection {
        int m;
        double alpha;
        int q;
        SyndromeVariant variant;
    };
    std::vector<Injection> inj;
    for (int m : sorted_unique(v.m)) {
        for (double a : v.alpha) {
            for (int q = 0; q < (2 << m); ++q) {
                inj.push_back({m, a, q, SyndromeVariant::direct});
                inj.push_back({m, a, q, SyndromeVariant::pi_minus_phi});
            }
        }
    }
    std::vector<double> syn_dev(inj.size());
    parallel_for(inj.size(), threads, [&](std::size_t i) {
        const auto &x = inj[i];
        CatCodeSpec spec{x.m, x.alpha, 1.0};
        HybridDensity s = injected_loss_state(spec, x.q, policy);
        double hit = 0.0;
        for (const auto &b : syndrome_cascade(s, x.m, x.variant)) {
            if (b.remainder == x.q % spec.order()) {
                hit += b.probability;
            }
        }
        syn_dev[i] = std::abs(1.0 - hit);
    });

    std::vector<double> bell_dev(v.bell_eta.size());
    parallel_for(v.bell_eta.size(), threads, [&](std::size_t i) {
        OrderEquivalence e = bell_order_equivalence(v.bell_m, v.bell_alpha, v.bell_eta[i], policy);
        bell_dev[i] = std::max(e.max_trace_distance, e.max_probability_gap);
    });

    auto max_of = [](const std::vector<double> &x) { return x.empty() ? 0.0 : *std::max_element(x.begin(), x.end()); };
    ValidationReport report;
    report.checks.push_back({"f0", max_of(f0_dev), v.tol_f0});
    report.checks.push_back({"loss_weights", max_of(w_dev), v.tol_weights});
    report.checks.push_back({"syndrome_exactness", max_of(syn_dev), v.tol_syndrome});
    if (!v.bell_eta.empty()) {
        report.checks.push_back({"bell_order", max_of(bell_dev), v.tol_bell_order});
    }
    return report;
}

std::string run_metadata(const Config &config, const std::string &command, int threads) {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &utc);
    nlohmann::ordered_json j;
    j["command"] = command;
    j["version"] = version_string();
    j["timestamp_utc"] = stamp;
    j["threads"] = threads;
    j["config"] = nlohmann::ordered_json::parse(config_to_json(config));
    return j.dump(2) + "\n";
}

}  // namespace catrep
