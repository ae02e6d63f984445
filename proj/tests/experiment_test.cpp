// Copyright 2026 The sptel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sptel/errors.hpp"
#include "sptel/experiment.hpp"

using namespace sptel;
using nlohmann::json;

namespace {

json small_teleport() {
    return json::parse(R"({
      "schema_version": 1, "name": "t", "protocol": "teleport", "seed": 5,
      "graph": "diamond", "paths": ["p1", "p2"], "inputs": ["0", "+", "polar:1.0,0.5"], "shots": 0,
      "sweep": {"parameter": "strength", "targets": [{"zz": [3, 5, 0.0]}], "values": [0.0, 0.3]},
      "output": {"csv": "t.csv"}
    })");
}

std::string where_of(const json& cfg) {
    try {
        validate_config(cfg);
    } catch (const ConfigError& e) {
        return e.where();
    }
    return "";
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Config, ValueLists) {
    EXPECT_EQ(parse_value_list("0:1:0.25"), (std::vector<double>{0, 0.25, 0.5, 0.75, 1.0}));
    EXPECT_EQ(parse_value_list("0.1,0.2"), (std::vector<double>{0.1, 0.2}));
    EXPECT_EQ(parse_value_list("-0.45:0.45:0.05").size(), 19u);
    EXPECT_THROW(parse_value_list("0:1:0"), std::invalid_argument);
    EXPECT_THROW(parse_value_list("a,b"), std::invalid_argument);
}

TEST(Config, ErrorJsonRoundTrip) {
    for (const char* s : {"zz:3,5,0.3", "x1q:7,X,0.4", "depol2q:0.02"}) {
        const ErrorSpec e = parse_error_spec(s);
        EXPECT_EQ(to_string(error_from_json(error_to_json(e))), s);
    }
    EXPECT_THROW(error_from_json(json::parse(R"({"zz": [1, 2]})"), "/errors/0"), ConfigError);
    EXPECT_THROW(error_from_json(json::parse(R"({"x1q": [1, "Q", 0.1]})")), ConfigError);
}

TEST(Config, DiagnosticsNameTheField) {
    EXPECT_EQ(where_of(small_teleport()), "");
    json c = small_teleport();
    c.erase("seed");
    EXPECT_EQ(where_of(c), "/seed");
    c = small_teleport();
    c["schema_version"] = 2;
    EXPECT_EQ(where_of(c), "/schema_version");
    c = small_teleport();
    c["sweep"]["values"][1] = "x";
    EXPECT_EQ(where_of(c), "/sweep/values/1");
    c = small_teleport();
    c["paths"] = {"p1", "p9"};
    EXPECT_EQ(where_of(c).rfind("/paths", 0), 0u);
    c = small_teleport();
    c["hamiltonian"] = "hy";
    EXPECT_EQ(where_of(c), "/hamiltonian");
    c = small_teleport();
    c["output"]["format"] = "xlsx";
    EXPECT_EQ(where_of(c), "/output/format");
    c = small_teleport();
    c["protocol"] = "magic";
    EXPECT_EQ(where_of(c), "/protocol");
    try {
        parse_config_text("{\n  \"a\": 1,\n  \"b\": }");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.where().rfind("line 3", 0), 0u) << e.where();
    }
}

TEST(Experiment, TeleportRowsInSweepOrder) {
    const ExperimentResult r = run_experiment(small_teleport());
    ASSERT_EQ(r.rows.size(), 4u);
    const auto col = [&](const std::string& name) {
        return static_cast<std::size_t>(std::find(r.header.begin(), r.header.end(), name) - r.header.begin());
    };
    ASSERT_LT(col("fidelity"), r.header.size());
    EXPECT_EQ(r.rows[0][col("value")], "0");
    EXPECT_EQ(r.rows[0][col("path")], "p1");
    EXPECT_EQ(r.rows[1][col("path")], "p2");
    EXPECT_EQ(r.rows[2][col("value")], "0.3");
    EXPECT_EQ(std::stod(r.rows[0][col("fidelity")]), 1.0);
    EXPECT_EQ(std::stod(r.rows[2][col("fidelity")]), 1.0);  // p1 is immune to 3-5 crosstalk
    EXPECT_LT(std::stod(r.rows[3][col("fidelity")]), 1.0);
    EXPECT_EQ(r.manifest["protocol"], "teleport");
    EXPECT_EQ(r.manifest["sweep_points"], 2);
    EXPECT_EQ(r.manifest["config_hash"].get<std::string>().rfind("fnv1a64:", 0), 0u);
}

TEST(Experiment, DeterministicAcrossThreadCounts) {
    json c = small_teleport();
    c["shots"] = 300;
    c["inputs"] = {{"random", 3}, {"sampling", "bloch"}};
    const std::string a = to_csv(run_experiment(c, {1}));
    const std::string b = to_csv(run_experiment(c, {3}));
    EXPECT_EQ(a, b);
    c["seed"] = 6;
    EXPECT_NE(a, to_csv(run_experiment(c, {1})));
}

TEST(Experiment, EmptySweepGivesHeaderOnly) {
    json c = small_teleport();
    c["sweep"]["values"] = json::array();
    const ExperimentResult r = run_experiment(c);
    EXPECT_TRUE(r.rows.empty());
    const std::string csv = to_csv(r);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1);
}

TEST(Experiment, CapacityRefusal) {
    json c = small_teleport();
    c["graph"] = "chain:17";
    c["paths"] = {"chain"};
    c["sweep"]["targets"] = {{{"zz", {1, 2, 0.0}}}};
    EXPECT_THROW(run_experiment(c), CapacityError);
}

TEST(Experiment, CsvQuoting) {
    ExperimentResult r;
    r.header = {"a", "b"};
    r.rows = {{"x,y", "say \"hi\""}};
    EXPECT_EQ(to_csv(r), "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n");
}

TEST(Experiment, WritesCsvAndManifest) {
    const auto dir = std::filesystem::temp_directory_path() / "sptel_experiment_test";
    std::filesystem::remove_all(dir);
    const ExperimentResult r = run_experiment(small_teleport());
    const auto [csv, manifest] = write_outputs(r, dir / "out" / "t.csv");
    EXPECT_EQ(read_file(csv), to_csv(r));
    const json m = json::parse(read_file(manifest));
    EXPECT_EQ(m["rows"], 4);
    EXPECT_EQ(m["csv"], csv.string());
    EXPECT_TRUE(m.contains("kernel_backend"));
    std::filesystem::remove_all(dir);
}

TEST(Experiment, Hash) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
}

TEST(Catalog, MatchesBundledConfigs) {
    const auto& cat = list_builtin_experiments();
    ASSERT_EQ(cat.size(), 9u);
    for (const auto& b : cat) {
        EXPECT_NO_THROW(validate_config(b.config)) << b.name;
        const auto file = std::filesystem::path(SPTEL_SOURCE_DIR) / "experiments" / (b.name + ".json");
        ASSERT_TRUE(std::filesystem::exists(file)) << file;
        EXPECT_EQ(load_config(file), b.config) << b.name;
    }
}

TEST(Catalog, QuickBuiltinsRun) {
    for (const auto& b : list_builtin_experiments()) {
        if (b.name != "fig3_diamond" && b.name != "spectra_chain_diamond" && b.name != "calibration_demo") continue;
        const ExperimentResult r = run_experiment(b.config);
        EXPECT_FALSE(r.rows.empty()) << b.name;
        EXPECT_EQ(to_csv(r), to_csv(run_experiment(b.config))) << b.name;
    }
}
