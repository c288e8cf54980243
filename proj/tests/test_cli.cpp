// Copyright 2026 The scarf-rotor Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <scarf/cli.hpp>

using scarf::io::json;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "scarf-rotor");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = scarf::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
    const auto dir = fs::temp_directory_path() /
                     ("scarf-cli-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

} // namespace

TEST_CASE("spectrum subcommand") {
    const auto r = run({"spectrum", "--t-max", "2"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    REQUIRE(j["levels"].size() == 3);
    CHECK(j["levels"][0]["energy"] == 0.0);
    CHECK(j["levels"][1]["energy"] == 2.0);
    CHECK(j["levels"][2]["energy"] == 6.0);
    CHECK(j["levels"][2]["degeneracy"] == 5);
    CHECK(j["levels"][0]["frequency"].is_null());

    const auto csv = run({"spectrum", "--t-max", "3", "--b-rot", "2", "--format", "csv"});
    CHECK(csv.out == "t,energy,degeneracy,frequency\n0,0,1,\n1,4,3,4\n2,12,5,8\n3,24,7,12\n");

    const auto bad = run({"spectrum", "--t-max", "-1"});
    CHECK(bad.code != 0);
}

TEST_CASE("decompose subcommand") {
    const auto r = run({"decompose", "--t", "2", "--m", "1", "--b", "0.45", "--convention", "paper"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["coefficients"].size() == 2);
    CHECK(std::abs(j["coefficients"]["1"].get<double>() + 0.45) < 1e-10);
    CHECK(std::abs(j["coefficients"]["2"].get<double>() - 2.0 / 3.0) < 1e-10);

    const auto single = json::parse(run({"decompose", "--t", "1", "--m", "1", "--b", "0.45"}).out);
    CHECK(single["coefficients"].size() == 1);
    CHECK(single["coefficients"].contains("1"));

    const auto free = json::parse(run({"decompose", "--t", "2", "--m", "1", "--b", "0"}).out);
    CHECK(std::abs(free["coefficients"]["1"].get<double>()) < 1e-10);
    CHECK(std::abs(free["coefficients"]["2"].get<double>()) > 0.1);
}

TEST_CASE("invalid parameters name the violated inequality") {
    const auto r = run({"decompose", "--t", "1", "--m", "0", "--b", "1.0"});
    CHECK(r.code == scarf::cli::kInvalidParameters);
    CHECK(r.err.find("|M| - b + 1 > 0") != std::string::npos);
    CHECK(r.out.empty());

    const auto low = run({"dipole", "--t", "1", "--m", "1", "--b=-2.5"});
    CHECK(low.code == scarf::cli::kInvalidParameters);
    CHECK(low.err.find("|M| + b + 1 > 0") != std::string::npos);

    CHECK(run({"decompose", "--m", "1"}).code != 0);
    CHECK(run({"decompose", "--t", "1", "--m", "2"}).code != 0);
    CHECK(run({"decompose", "--t", "1", "--convention", "other"}).code != 0);
    CHECK(run({}).code != 0);
}

TEST_CASE("dipole subcommand") {
    const auto j = json::parse(run({"dipole", "--t", "0", "--m", "0", "--b", "0.45"}).out);
    CHECK(std::abs(j["d_e"].get<double>() - 0.45) < 1e-10);
    CHECK(j["measure"] == "absorbed");
    const auto z = json::parse(run({"dipole", "--t", "2", "--m", "1", "--b", "0"}).out);
    CHECK(std::abs(z["d_e"].get<double>()) < 1e-12);
    const auto lit = json::parse(
        run({"dipole", "--t", "0", "--m", "0", "--b", "0.45", "--edm-measure", "literal"}).out);
    CHECK(lit["measure"] == "literal");
}

TEST_CASE("state and parity subcommands") {
    const auto s = json::parse(run({"state", "--t", "3", "--m", "-1", "--b", "0.45"}).out);
    CHECK(s["n"] == 2);
    CHECK(s["epsilon"] == 12.0);
    CHECK(s["dirichlet_compatible"] == true);
    const auto p = json::parse(run({"parity", "--t", "0", "--m", "0", "--b", "0.45"}).out);
    CHECK(p["even_fraction"].get<double>() > 0.0);
    CHECK(p["odd_fraction"].get<double>() > 0.0);
}

TEST_CASE("verify subcommands") {
    const auto iso = run({"verify", "isospectral", "--m", "1", "--b", "0,0.45", "--levels", "5"});
    CHECK(iso.code == 0);
    const auto j = json::parse(iso.out);
    CHECK(j["pass"] == true);
    for (const auto &s : j["spread"]) {
        CHECK(s.get<double>() < 1e-6);
    }

    CHECK(run({"verify", "residual", "--b", "0,0.45"}).code == 0);
    CHECK(run({"verify", "residual", "--t", "2", "--m", "1", "--b", "0.45"}).code == 0);
    CHECK(run({"verify", "ortho", "--m", "2", "--b", "0.7"}).code == 0);
    CHECK(run({"verify", "similarity", "--t", "2", "--m", "1", "--b", "0.45"}).code == 0);
    CHECK(run({"verify", "eigen", "--m", "1", "--b", "0.45", "--levels", "3", "--basis-size", "24"})
              .code == 0);

    const auto fail = run({"verify", "eigen", "--m", "1", "--b", "0.45", "--levels", "3",
                           "--basis-size", "24", "--tol-eigen", "1e-30"});
    CHECK(fail.code == scarf::cli::kCheckFailed);
    CHECK(fail.err.find("FAIL rel_error[b=0.45][level 1]") != std::string::npos);
    CHECK(json::parse(fail.out)["pass"] == false);

    CHECK(run({"verify"}).code != 0);
    CHECK(run({"verify", "eigen", "--m", "0", "--b", "0.8"}).code == scarf::cli::kInvalidParameters);
}

TEST_CASE("output is deterministic") {
    const std::vector<std::string> args{"density", "--t", "2", "--m", "1", "--b", "0.45",
                                        "--ntheta", "12", "--nphi", "3"};
    CHECK(run(args).out == run(args).out);
}

TEST_CASE("files, manifests and config") {
    const auto dir = scratch_dir();
    const auto csv = (dir / "d.csv").string();
    const auto r = run({"density", "--t", "2", "--m", "1", "--b", "0.45", "--ntheta", "20",
                        "--nphi", "4", "--format", "csv", "--out", csv});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const std::string data = slurp(csv);
    CHECK(data.rfind("theta,phi,density\n", 0) == 0);
    CHECK(scarf::io::density_csv(scarf::io::parse_density_csv(data)) == data);
    const auto m = json::parse(slurp(scarf::io::manifest_path(csv)));
    CHECK(m["command"] == "density");
    CHECK(m["metadata"]["asymmetry"].get<double>() > 0.01);
    CHECK(m["timestamp"].get<std::string>().size() == 20);

    const auto js = (dir / "d.json").string();
    REQUIRE(run({"decompose", "--t", "2", "--m", "1", "--b", "0.45", "--out", js}).code == 0);
    const auto dj = json::parse(slurp(js));
    CHECK(dj["manifest"] == "d.json.manifest.json");
    CHECK(fs::exists(scarf::io::manifest_path(js)));

    const auto cfg = (dir / "run.ini").string();
    std::ofstream(cfg) << "# pinned settings\norder = 40\nconvention = normalized\n";
    const auto c = json::parse(run({"decompose", "--t", "2", "--m", "1", "--b", "0.45",
                                    "--config", cfg}).out);
    CHECK(c["quadrature_order"] == 40);
    CHECK(c["convention"] == "normalized");
    const auto o = json::parse(run({"decompose", "--t", "2", "--m", "1", "--b", "0.45",
                                    "--config", cfg, "--order", "30"}).out);
    CHECK(o["quadrature_order"] == 30);
    CHECK(o["convention"] == "normalized");
    fs::remove_all(dir);
}
