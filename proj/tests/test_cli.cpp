#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

int run_counter = 0;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

RunResult run_cli(const std::string& args) {
    std::string tag = "/tmp/mqm_cli_test_" + std::to_string(run_counter++);
    std::string cmd = std::string(MQM_CLI_PATH) + " " + args + " > " + tag +
                      ".out 2> " + tag + ".err";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(tag + ".out");
    r.err = slurp(tag + ".err");
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream s(text);
    std::string line;
    while (std::getline(s, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream s(line);
    std::string field;
    while (std::getline(s, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

// rows keyed by column name, using the header line
std::vector<std::vector<std::pair<std::string, std::string>>> parse_csv(
    const std::string& text) {
    auto lines = lines_of(text);
    REQUIRE(!lines.empty());
    auto header = split_csv(lines[0]);
    std::vector<std::vector<std::pair<std::string, std::string>>> rows;
    for (size_t i = 1; i < lines.size(); ++i) {
        auto fields = split_csv(lines[i]);
        REQUIRE(fields.size() == header.size());
        std::vector<std::pair<std::string, std::string>> row;
        for (size_t j = 0; j < header.size(); ++j) row.emplace_back(header[j], fields[j]);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string cell(const std::vector<std::pair<std::string, std::string>>& row,
                 const std::string& key) {
    for (const auto& [k, v] : row)
        if (k == key) return v;
    FAIL("missing column ", key);
    return "";
}

}  // namespace

TEST_CASE("spectrum: Landau default sweep") {
    RunResult r = run_cli("spectrum");
    REQUIRE(r.exit_code == 0);
    auto lines = lines_of(r.out);
    CHECK(lines[0] == "scenario,n,l,root_index,frequency,energy,method");
    CHECK(lines.size() == 21);  // header + 4 n-values x 5 l-values
    bool found = false;
    for (const auto& l : lines)
        if (l == "landau,0,0,0,2,1,closed_form") found = true;
    CHECK(found);
}

TEST_CASE("spectrum: Coulomb n=1 frequencies 2, 2/3, 2/5") {
    RunResult r = run_cli(
        "spectrum --scenario coulomb --alpha 1 --n-min 1 --n-max 1 --l-min 0 "
        "--l-max 2");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 3);
    const double expect[] = {2.0, 2.0 / 3.0, 2.0 / 5.0};
    for (int l = 0; l < 3; ++l) {
        CHECK(cell(rows[l], "l") == std::to_string(l));
        CHECK(std::stod(cell(rows[l], "frequency")) ==
              doctest::Approx(expect[l]).epsilon(1e-9));
    }
    CHECK(std::stod(cell(rows[0], "energy")) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("config errors exit with code 2 and a machine-readable record") {
    RunResult empty = run_cli("spectrum --l-min 2 --l-max 1");
    CHECK(empty.exit_code == 2);
    auto err = nlohmann::json::parse(empty.err);
    CHECK(err["code"] == 2);
    CHECK(err["error"].get<std::string>().find("l range") != std::string::npos);

    CHECK(run_cli("spectrum --scenario bogus").exit_code == 2);
    CHECK(run_cli("spectrum --format yaml").exit_code == 2);
    CHECK(run_cli("scan").exit_code == 2);  // scan needs a potential scenario
    CHECK(run_cli("spectrum --config /nonexistent.conf").exit_code == 2);
    CHECK(run_cli("spectrum --no-such-flag").exit_code == 2);
}

TEST_CASE("fields-check: b=0 zeroes every residual") {
    RunResult r = run_cli("fields-check --b 0");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 8);
    for (const auto& row : rows) {
        std::string name = cell(row, "check");
        if (name == "faraday_order" || name == "moment_dot_order") continue;
        CHECK(cell(row, "value") == "0");
    }
}

TEST_CASE("fields-check: default run is clean with order two") {
    RunResult r = run_cli("fields-check");
    REQUIRE(r.exit_code == 0);
    for (const auto& row : parse_csv(r.out)) {
        std::string name = cell(row, "check");
        double v = std::stod(cell(row, "value"));
        if (name == "faraday_order" || name == "moment_dot_order")
            CHECK(v == doctest::Approx(2.0).epsilon(0.1));
        else
            CHECK(std::abs(v) < 1e-8);
    }
}

TEST_CASE("verify: Landau sweep passes") {
    RunResult r = run_cli(
        "verify --n-min 0 --n-max 1 --l-min 0 --l-max 1 --grid-cells 1500");
    CHECK(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
        CHECK(cell(row, "pass") == "true");
        CHECK(cell(row, "status") == "ok");
        CHECK(std::stod(cell(row, "rel_diff")) < 1e-3);
        CHECK(std::stod(cell(row, "overlap_with_numeric")) > 0.999);
    }
}

TEST_CASE("verify: deliberately wrong varpi fails the row") {
    RunResult r = run_cli(
        "verify --scenario coulomb --alpha 1 --n-min 1 --n-max 1 --l-min 0 "
        "--l-max 0 --varpi 1.5 --grid-cells 1500");
    CHECK(r.exit_code == 1);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(cell(rows[0], "pass") == "false");
    CHECK(std::stod(cell(rows[0], "overlap_with_numeric")) < 0.999);
}

TEST_CASE("verify: hard wall carries the approximation columns") {
    RunResult r = run_cli(
        "verify --scenario hardwall --rho0 1 --n-min 4 --n-max 6 --l-min 0 "
        "--l-max 0 --grid-cells 1500");
    CHECK(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 3);
    double prev = 1e9;
    for (const auto& row : rows) {
        double aerr = std::stod(cell(row, "approx_rel_err"));
        CHECK(aerr < prev);
        CHECK(cell(row, "approx_err_decreasing") == "true");
        prev = aerr;
    }
}

TEST_CASE("scan: Coulomb closed-form deviation below 1e-10") {
    RunResult r = run_cli(
        "scan --scenario coulomb --alpha 1 --n-min 1 --n-max 1 --l-min 0 --l-max 3");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() >= 4);
    for (const auto& row : rows) {
        CHECK(cell(row, "warning") == "0");
        CHECK(std::stod(cell(row, "closed_form_dev")) < 1e-10);
        CHECK(std::abs(std::stod(cell(row, "residual"))) < 1e-10);
    }
}

TEST_CASE("scan: linear n=1 root is cbrt(3/2)") {
    RunResult r = run_cli(
        "scan --scenario linear --eta 1 --n-min 1 --n-max 1 --l-min 0 --l-max 0");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(std::stod(cell(rows[0], "frequency")) ==
          doctest::Approx(std::cbrt(1.5)).epsilon(1e-9));
    // scan n=2 self-consistency: at least one root, small residual
    RunResult r2 = run_cli(
        "scan --scenario coulomb --alpha 1 --n-min 2 --n-max 2 --l-min 0 --l-max 0");
    REQUIRE(r2.exit_code == 0);
    auto rows2 = parse_csv(r2.out);
    CHECK(!rows2.empty());
    CHECK(cell(rows2[0], "warning") == "0");
    CHECK(std::abs(std::stod(cell(rows2[0], "residual"))) < 1e-10);
}

TEST_CASE("config file with flag overrides") {
    std::string path = "/tmp/mqm_cli_test.conf";
    {
        std::ofstream f(path);
        f << "# sample run\n"
          << "[core]\n"
          << "scenario = hardwall\n"
          << "rho0 = 1.0\n"
          << "[cli]\n"
          << "n_max = 1\n"
          << "l_min = 0\n"
          << "l_max = 1\n";
    }
    RunResult r = run_cli("spectrum --config " + path + " --l-max 0");
    REQUIRE(r.exit_code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);  // n in {0,1}, l = 0 after the flag override
    CHECK(std::stod(cell(rows[0], "energy")) == doctest::Approx(3.0).epsilon(1e-9));

    {
        std::ofstream f(path);
        f << "no_such_key = 1\n";
    }
    CHECK(run_cli("spectrum --config " + path).exit_code == 2);
}

TEST_CASE("json format carries meta and rows") {
    RunResult r = run_cli("spectrum --format json --n-max 0 --l-min 0 --l-max 0");
    REQUIRE(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["meta"]["scenario"] == "landau");
    CHECK(doc["meta"]["command"] == "spectrum");
    REQUIRE(doc["rows"].size() == 1);
    CHECK(doc["rows"][0]["energy"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("repeated runs are byte-identical") {
    std::string a = "/tmp/mqm_cli_det_a", b = "/tmp/mqm_cli_det_b";
    for (std::string fmt : {std::string("csv"), std::string("json")}) {
        REQUIRE(run_cli("spectrum --format " + fmt + " --out " + a).exit_code == 0);
        REQUIRE(run_cli("spectrum --format " + fmt + " --out " + b).exit_code == 0);
        CHECK(slurp(a) == slurp(b));
        CHECK(!slurp(a).empty());
    }
}
