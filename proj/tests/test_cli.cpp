#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "fortrend/dataset.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

const std::string kCli = FORTREND_CLI_PATH;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "fortrend_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run(const std::string& args) {
    fs::path out = work_dir() / "stdout.txt";
    fs::path err = work_dir() / "stderr.txt";
    std::string cmd = kCli + " " + args + " >" + out.string() + " 2>" +
                      err.string();
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

} // namespace

TEST_CASE("fit on the bundled sample emits a five-variant JSON report") {
    RunResult r = run("fit");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("variants").size() == 5);
    for (const auto& vj : j.at("variants")) {
        REQUIRE(vj.contains("fit"));
        CHECK(vj.at("fit").at("for_model").at("alphas")[0].get<double>() ==
              doctest::Approx(2.0));
    }
    CHECK(r.err.find("composite ranking:") != std::string::npos);
}

TEST_CASE("fit writes report, residuals and summary-table files") {
    fs::path report = work_dir() / "report.json";
    fs::path resid = work_dir() / "residuals.csv";
    fs::path table = work_dir() / "table.csv";
    RunResult r = run("fit --out " + report.string() + " --residuals-csv " +
                      resid.string() + " --table-csv " + table.string());
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(slurp(report)).contains("ranking"));
    CHECK(slurp(resid).rfind("year,observed", 0) == 0);
    std::string t = slurp(table);
    CHECK(t.rfind("variant,alpha1", 0) == 0);
    CHECK(std::count(t.begin(), t.end(), '\n') == 6); // header + 5 variants
}

TEST_CASE("single-variant selection is honored") {
    RunResult r = run("fit --models B");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    REQUIRE(j.at("variants").size() == 1);
    CHECK(j.at("variants")[0].at("variant") == "B");
}

TEST_CASE("malformed CSV input exits 1 and reports the line") {
    fs::path bad = work_dir() / "bad.csv";
    spit(bad,
         "name,year,velocity_mps,range_m,mass_kg,rate_per_min\n"
         "Ok,1500,100,50,0.01,1\n"
         "Broken,1600,abc,50,0.01,1\n");
    RunResult r = run("fit --data " + bad.string());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find(":3") != std::string::npos);
}

TEST_CASE("degenerate data exits 2") {
    fs::path degen = work_dir() / "degen.csv";
    std::ostringstream csv;
    csv << "name,year,velocity_mps,range_m,mass_kg,rate_per_min\n";
    for (int i = 0; i < 12; ++i)
        csv << "r" << i << ',' << 1300 + 60 * i << ",100," << (10 + i) << ','
            << (10 + i) * (10 + i) << ",5\n"; // mass = range^2, collinear
    spit(degen, csv.str());
    RunResult r = run("fit --models B --data " + degen.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error:") != std::string::npos);

    fs::path tiny = work_dir() / "tiny.csv";
    spit(tiny,
         "name,year,velocity_mps,range_m,mass_kg,rate_per_min\n"
         "a,1300,100,50,0.01,1\nb,1400,120,60,0.02,2\n");
    CHECK(run("fit --models B --data " + tiny.string()).exit_code == 2);
}

TEST_CASE("forecast reproduces the study's headline numbers") {
    fs::path scen = work_dir() / "scenario.json";
    spit(scen, R"({"name":"study-2050","multipliers":)"
               R"({"velocity_mps":1.1,"range_m":1.7,"mass_kg":1.8}})");
    RunResult r = run(
        "forecast --reference-model paper-eq4-eq5 --horizon 2050 "
        "--max-observed 6.18 --scenario " +
        scen.string());
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("predicted_log10_for").get<double>() ==
          doctest::Approx(6.975075).epsilon(1e-9));
    CHECK(j.at("gap").get<double>() == doctest::Approx(0.795075).epsilon(1e-9));
    CHECK(j.at("scenario_total").get<double>() ==
          doctest::Approx(0.780057).epsilon(1e-5));
    CHECK(j.at("scenario_increments").size() == 4);
    CHECK(j.at("scenario_increments")[0].at("increment").get<double>() ==
          doctest::Approx(0.0827854).epsilon(1e-5));
    CHECK(j.at("coverage_ratio").get<double>() ==
          doctest::Approx(0.780057 / 0.795075).epsilon(1e-4));
    // 2-dp display on stderr
    CHECK(r.err.find("6.18") != std::string::npos);
    CHECK(r.err.find("0.78") != std::string::npos);
}

TEST_CASE("forecast without --max-observed uses the data's best record") {
    RunResult r = run("forecast --reference-model paper-eq4-eq5 --horizon 2050");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("best_record") == "M27 assault rifle");
    CHECK(j.at("max_observed_log10_for").get<double>() ==
          doctest::Approx(6.042).epsilon(2e-4));
}

TEST_CASE("forecast can reload models from a saved fit report") {
    fs::path report = work_dir() / "refit.json";
    REQUIRE(run("fit --out " + report.string()).exit_code == 0);
    RunResult r = run("forecast --fit " + report.string() +
                      " --fit-variant B --horizon 2050");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("predicted_log10_for").get<double>() > 0.0);
}

TEST_CASE("portfolio prints increments without extrapolating") {
    fs::path scen = work_dir() / "scenario2.json";
    spit(scen, R"({"name":"s","multipliers":{"velocity_mps":10.0}})");
    RunResult r = run("portfolio --reference-model paper-eq4-eq5 --scenario " +
                      scen.string());
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("total").get<double>() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("backtest on the sample records the training-data shortfall") {
    RunResult r = run("backtest --models B");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    REQUIRE(j.at("backtest").size() == 1);
    CHECK(j.at("backtest")[0].contains("error"));
}

TEST_CASE("backtest succeeds on a synthetic history") {
    fs::path synth = work_dir() / "synthetic.csv";
    REQUIRE(run("synth --n 120 --seed 5 --out " + synth.string()).exit_code == 0);
    RunResult r = run("backtest --models B --data " + synth.string());
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    REQUIRE(j.at("backtest")[0].contains("mape_avg"));
    CHECK(j.at("backtest")[0].at("mape_avg").get<double>() <= 1e-8);
    CHECK(j.at("backtest")[0].at("windows").size() == 3);
}

TEST_CASE("synth is deterministic and writes a truth sidecar") {
    fs::path a = work_dir() / "synth_a.csv";
    fs::path b = work_dir() / "synth_b.csv";
    REQUIRE(run("synth --n 40 --sigma 0.1 --seed 7 --out " + a.string())
                .exit_code == 0);
    REQUIRE(run("synth --n 40 --sigma 0.1 --seed 7 --out " + b.string())
                .exit_code == 0);
    CHECK(slurp(a) == slurp(b));
    json truth = json::parse(slurp(work_dir() / "synth_a.truth.json"));
    CHECK(truth.at("seed").get<int>() == 7);
    CHECK(truth.at("truth_temporal").at("variant") == "B");
    // the CSV loads back under the standard schema
    fortrend::Dataset d =
        fortrend::load_csv(a.string(), fortrend::AttributeSchema::small_arms());
    CHECK(d.size() == 40);
}

TEST_CASE("plot writes SVGs plus CSVs, curve hitting the forecast value") {
    fs::path prefix = work_dir() / "chart";
    RunResult r = run("plot --reference-model paper-eq4-eq5 --horizon 2050 "
                      "--out " +
                      prefix.string());
    REQUIRE(r.exit_code == 0);
    for (const char* suffix :
         {"_energy.csv", "_energy.svg", "_for_points.csv", "_for_curve.csv",
          "_for.svg"}) {
        INFO(suffix);
        CHECK(fs::exists(prefix.string() + suffix));
    }
    // Longbow datum in the energy CSV
    std::string energy = slurp(prefix.string() + "_energy.csv");
    CHECK(energy.find("1180,112.99035") != std::string::npos);
    // last curve row reaches the 2050 forecast
    std::string curve = slurp(prefix.string() + "_for_curve.csv");
    auto last_nl = curve.find_last_of('\n', curve.size() - 2);
    std::string last = curve.substr(last_nl + 1);
    CHECK(last.rfind("2050,", 0) == 0);
    CHECK(std::stod(last.substr(5)) == doctest::Approx(6.975075).epsilon(1e-9));
    std::string svg = slurp(prefix.string() + "_for.svg");
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
    RunResult a = run("fit");
    RunResult b = run("fit");
    CHECK(a.out == b.out);
    fs::path scen = work_dir() / "scenario.json";
    RunResult fa = run("forecast --reference-model paper-eq4-eq5 "
                       "--max-observed 6.18 --scenario " +
                       scen.string());
    RunResult fb = run("forecast --reference-model paper-eq4-eq5 "
                       "--max-observed 6.18 --scenario " +
                       scen.string());
    CHECK(fa.out == fb.out);
}

TEST_CASE("bad flags and unknown reference models fail cleanly") {
    CHECK(run("fit --bic-mode bogus").exit_code == 1);
    CHECK(run("forecast --reference-model nope").exit_code == 1);
    CHECK(run("fit --models Q").exit_code == 1);
    CHECK(run("fit --data " + (work_dir() / "missing.csv").string())
              .exit_code == 1);
}
