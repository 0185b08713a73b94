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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "catrep/error.hpp"

using namespace catrep;

namespace {

std::vector<std::string> split_lines(const std::string &s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) {
        out.push_back(line);
    }
    return out;
}

std::vector<std::string> split_fields(const std::string &line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string f;
    while (std::getline(in, f, ',')) {
        out.push_back(f);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

}  // namespace

TEST(LinearGrid, ValuesAreNotAccumulated) {
    auto g = linear_grid(0.05, 16.0, 0.05);
    ASSERT_EQ(g.size(), 320u);
    EXPECT_EQ(g[199], 0.05 + 199 * 0.05);
    EXPECT_NEAR(g.back(), 16.0, 1e-12);
    EXPECT_TRUE(linear_grid(1.0, 0.0, 0.1).empty());
    EXPECT_THROW(linear_grid(0.0, 1.0, 0.0), UsageError);
}

TEST(Config, DefaultsDescribeTheReferenceSetup) {
    Config c;
    EXPECT_EQ(c.chain.l_tot_km, 1000.0);
    EXPECT_EQ(c.chain.l0_km.size(), 6u);
    EXPECT_EQ(c.chain.l_att_km, 22.0);
    EXPECT_EQ(c.code.m, (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(c.usd.mode, UsdMode::weighted_average);
    EXPECT_NO_THROW(c.check());
}

TEST(Config, JsonSectionsAndRanges) {
    Config c = parse_config(R"({
        "chain": {"l_tot_km": 100, "l0_km": [1, 10]},
        "code": {"m": [2], "alpha": {"start": 1, "stop": 2, "step": 0.5}},
        "usd": {"mode": "per_q", "q": 1},
        "output": {"format": "jsonl"}
    })");
    EXPECT_EQ(c.chain.l_tot_km, 100.0);
    EXPECT_EQ(c.chain.l0_km, (std::vector<double>{1.0, 10.0}));
    EXPECT_EQ(c.code.m, (std::vector<int>{2}));
    EXPECT_EQ(c.code.alpha, (std::vector<double>{1.0, 1.5, 2.0}));
    EXPECT_EQ(c.usd.mode, UsdMode::per_q);
    EXPECT_EQ(c.usd.q, 1);
    EXPECT_EQ(c.output.format, OutputFormat::jsonl);
    // Untouched fields keep their defaults.
    EXPECT_EQ(c.chain.l_att_km, 22.0);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(parse_config(R"({"chain": {"length": 3}})"), UsageError);
    EXPECT_THROW(parse_config(R"({"nope": {}})"), UsageError);
    EXPECT_THROW(parse_config(R"({"code": {"m": [1.5]}})"), UsageError);
    EXPECT_THROW(parse_config(R"({"chain": {"eta_local": [1.2]}})"), UsageError);
    EXPECT_THROW(parse_config(R"({"usd": {"mode": "fastest"}})"), UsageError);
    EXPECT_THROW(parse_config("{not json"), UsageError);
    EXPECT_THROW(parse_config(R"({"validate": {"m": [4]}})"), UsageError);
}

TEST(Config, OverridesAcceptListsRangesAndNames) {
    Config c;
    apply_override(c, "code.alpha", "0.5,1,2");
    EXPECT_EQ(c.code.alpha, (std::vector<double>{0.5, 1.0, 2.0}));
    apply_override(c, "chain.l0_km", "1:3:1");
    EXPECT_EQ(c.chain.l0_km, (std::vector<double>{1.0, 2.0, 3.0}));
    apply_override(c, "chain.t0_s", "2e-6");
    EXPECT_EQ(c.chain.t0_s, 2e-6);
    apply_override(c, "usd.mode", "worst_case");
    EXPECT_EQ(c.usd.mode, UsdMode::worst_case);
    apply_override(c, "code.m", "3");
    EXPECT_EQ(c.code.m, (std::vector<int>{3}));
    EXPECT_THROW(apply_override(c, "code.alpha", "a,b"), UsageError);
    EXPECT_THROW(apply_override(c, "alpha", "1"), UsageError);
    EXPECT_THROW(apply_override(c, "code.beta", "1"), UsageError);
}

TEST(Config, JsonEchoRoundTrips) {
    Config c;
    apply_override(c, "code.alpha", "0.25,3");
    apply_override(c, "cavity.g", "5");
    Config back = parse_config(config_to_json(c));
    EXPECT_EQ(config_to_json(back), config_to_json(c));
}

TEST(Table, CsvAndJsonLines) {
    Table t;
    t.header = {"a", "b", "c", "d"};
    t.rows.push_back({0.1, 3L, true, std::monostate{}});
    EXPECT_EQ(t.render(OutputFormat::csv), "a,b,c,d\n0.1,3,true,\n");
    EXPECT_EQ(t.render(OutputFormat::jsonl), "{\"a\":0.1,\"b\":3,\"c\":true,\"d\":null}\n");
}

TEST(Sweep, RepeaterlessRowHasChainEqualToSegment) {
    Config c;
    apply_override(c, "code.m", "1");
    apply_override(c, "code.alpha", "1.5");
    apply_override(c, "chain.l0_km", "1000");
    auto pts = sweep_points(c);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(pts[0].n_e, 1);
    EXPECT_NEAR(pts[0].f_tot, pts[0].f0, 1e-15);
    EXPECT_NEAR(pts[0].p_tot, pts[0].p0, 1e-15);
}

TEST(Sweep, RowsAreOrderedAndBounded) {
    Config c;
    apply_override(c, "code.alpha", "3,1,2,1");
    apply_override(c, "chain.l0_km", "10,1");
    apply_override(c, "code.m", "2,1");
    auto pts = sweep_points(c, 3);
    ASSERT_EQ(pts.size(), 2u * 3u * 2u);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        auto key = [](const SweepPoint &p) { return std::make_tuple(p.m, p.alpha, p.l0_km, p.eta_local); };
        EXPECT_LT(key(pts[i - 1]), key(pts[i]));
    }
    for (const auto &p : pts) {
        for (double v : {p.f0, p.p0, p.f_tot, p.p_tot, p.eta_segment}) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
        EXPECT_GE(p.r_per_second, 0.0);
        if (p.f_tot <= 0.5) {
            EXPECT_EQ(p.r_per_channel_use, 0.0);
        }
    }
}

TEST(Sweep, ThreadCountDoesNotChangeOutput) {
    Config c;
    apply_override(c, "code.alpha", "0.5:6:0.5");
    EXPECT_EQ(sweep_table(c, 1).render(OutputFormat::csv), sweep_table(c, 4).render(OutputFormat::csv));
}

TEST(Sweep, RejectsNonDividingSpacing) {
    Config c;
    apply_override(c, "chain.l0_km", "3");
    try {
        sweep_points(c);
        FAIL() << "expected rejection";
    } catch (const UsageError &e) {
        EXPECT_NE(std::string(e.what()).find("L0=3"), std::string::npos);
    }
}

// Golden snapshot of a reduced grid, compared to 1e-12 relative so that a
// different libm does not break it while any real change does.
TEST(Sweep, MatchesGoldenSnapshot) {
    Config c = load_config_file(CATREP_TEST_DATA "/golden_config.json");
    std::ifstream in(CATREP_TEST_DATA "/sweep_golden.csv");
    ASSERT_TRUE(in);
    std::stringstream golden;
    golden << in.rdbuf();
    auto want = split_lines(golden.str());
    auto got = split_lines(sweep_table(c, 2).render(OutputFormat::csv));
    ASSERT_EQ(got.size(), want.size());
    EXPECT_EQ(got[0], want[0]);
    for (std::size_t i = 1; i < got.size(); ++i) {
        auto g = split_fields(got[i]);
        auto w = split_fields(want[i]);
        ASSERT_EQ(g.size(), w.size()) << i;
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (g[j] == w[j]) {
                continue;
            }
            double a = std::stod(g[j]);
            double b = std::stod(w[j]);
            EXPECT_NEAR(a, b, 1e-12 * std::max(std::abs(a), std::abs(b)) + 1e-300) << "row " << i << " col " << j;
        }
    }
}

TEST(Keyrate, SinglePointWithBothFractions) {
    Config c;
    apply_override(c, "code.m", "2");
    apply_override(c, "code.alpha", "2");
    apply_override(c, "chain.l0_km", "250");
    Table t = keyrate_table(c);
    ASSERT_EQ(t.rows.size(), 1u);
    double lower = std::get<double>(t.rows[0][14]);
    double exact = std::get<double>(t.rows[0][15]);
    EXPECT_GE(exact + 1e-12, lower);
    apply_override(c, "chain.l0_km", "1");
    EXPECT_TRUE(std::holds_alternative<std::monostate>(keyrate_table(c).rows[0][15]));
    apply_override(c, "code.m", "1,2");
    EXPECT_THROW(keyrate_table(c), UsageError);
}

TEST(Cavity, TableEdges) {
    Config c;
    Table t = cavity_table(c);
    ASSERT_EQ(t.rows.size(), 101u);
    EXPECT_EQ(t.rows[50][0], Cell(0.0));
    EXPECT_NEAR(std::get<double>(t.rows[50][1]), M_PI, 1e-15);
}

TEST(Usd, TableColumns) {
    Config c;
    apply_override(c, "usd.alpha", "0.5,1");
    Table t = usd_table(c);
    ASSERT_EQ(t.rows.size(), 2u);
    double opt = std::get<double>(t.rows[1][1]);
    double lo = std::get<double>(t.rows[1][2]);
    double cf = std::get<double>(t.rows[1][3]);
    EXPECT_LE(lo, opt);
    EXPECT_NEAR(lo, cf, 1e-9);
}

TEST(Validation, SmallGridPasses) {
    Config c;
    apply_override(c, "validate.m", "1,2");
    apply_override(c, "validate.alpha", "1");
    apply_override(c, "validate.eta", "0.95");
    ValidationReport r = run_validation(c, 2);
    EXPECT_TRUE(r.passed()) << r.render();
    EXPECT_EQ(r.checks.size(), 4u);
}

TEST(Validation, CorruptedToleranceFails) {
    Config c;
    apply_override(c, "validate.m", "1");
    apply_override(c, "validate.alpha", "1");
    apply_override(c, "validate.eta", "0.9");
    apply_override(c, "validate.tol_f0", "1e-20");
    ValidationReport r = run_validation(c);
    EXPECT_FALSE(r.passed());
    EXPECT_NE(r.render().find("f0"), std::string::npos);
}

TEST(Validation, EmptyGridIsAUsageError) {
    Config c = parse_config(R"({"validate": {"alpha": []}})");
    try {
        run_validation(c);
        FAIL() << "expected rejection";
    } catch (const UsageError &e) {
        EXPECT_EQ(std::string(e.what()), "empty validation grid");
    }
}

TEST(Metadata, CarriesCommandAndConfig) {
    std::string meta = run_metadata(Config{}, "sweep", 2);
    EXPECT_NE(meta.find("\"command\": \"sweep\""), std::string::npos);
    EXPECT_NE(meta.find("timestamp_utc"), std::string::npos);
    EXPECT_NE(meta.find("\"l_att_km\""), std::string::npos);
}
