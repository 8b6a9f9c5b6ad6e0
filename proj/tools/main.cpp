// Command-line front end. Talks to the core library exclusively through the
// C API so that the shared-library surface stays exercised end to end.
#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <mqm/mqm.h>

using ojson = nlohmann::ordered_json;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RunError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// Flat key=value file with [section] headers; sections are organizational
// only, keys are globally unique. '#' and ';' start comments.
std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError("malformed section header at line " +
                                  std::to_string(lineno));
            continue;
        }
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key=value at line " + std::to_string(lineno));
        std::string key = trim(s.substr(0, eq));
        std::replace(key.begin(), key.end(), '-', '_');
        if (key.empty())
            throw ConfigError("empty key at line " + std::to_string(lineno));
        kv[key] = trim(s.substr(eq + 1));
    }
    return kv;
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': not a number: '" + v + "'");
    }
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        int i = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return i;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': not an integer: '" + v + "'");
    }
}

struct RunConfig {
    std::string scenario = "landau";
    double m = 1.0, Mq = 1.0, b = 1.0;
    std::optional<double> alpha, eta;
    double rho0 = 0.0;
    std::optional<int> n_min, n_max;
    int l_min = -2, l_max = 2;
    double tol = 1e-3;
    double varpi = 0.0;  // 0 = resolve automatically
    double h = 1e-3;
    int grid_cells = 0;  // 0 = library default
    std::string out;     // empty = stdout
    std::string format = "csv";
};

void apply_file(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, val] : kv) {
        if (key == "scenario") cfg.scenario = val;
        else if (key == "m") cfg.m = parse_double(key, val);
        else if (key == "M") cfg.Mq = parse_double(key, val);
        else if (key == "b") cfg.b = parse_double(key, val);
        else if (key == "alpha") cfg.alpha = parse_double(key, val);
        else if (key == "eta") cfg.eta = parse_double(key, val);
        else if (key == "rho0") cfg.rho0 = parse_double(key, val);
        else if (key == "n_min") cfg.n_min = parse_int(key, val);
        else if (key == "n_max") cfg.n_max = parse_int(key, val);
        else if (key == "l_min") cfg.l_min = parse_int(key, val);
        else if (key == "l_max") cfg.l_max = parse_int(key, val);
        else if (key == "tol") cfg.tol = parse_double(key, val);
        else if (key == "varpi") cfg.varpi = parse_double(key, val);
        else if (key == "h") cfg.h = parse_double(key, val);
        else if (key == "grid_cells") cfg.grid_cells = parse_int(key, val);
        else if (key == "out") cfg.out = val;
        else if (key == "format") cfg.format = val;
        else throw ConfigError("unknown config key: " + key);
    }
}

struct FlagVals {
    std::string config, scenario, out, format;
    double m = 0, Mq = 0, b = 0, alpha = 0, eta = 0, rho0 = 0, tol = 0, varpi = 0,
           h = 0;
    int n_min = 0, n_max = 0, l_min = 0, l_max = 0, grid_cells = 0;
};

void add_common_flags(CLI::App* cmd, FlagVals& v) {
    cmd->add_option("--config", v.config, "config file (key=value with [sections])");
    cmd->add_option("--scenario", v.scenario, "landau|hardwall|coulomb|linear");
    cmd->add_option("--m", v.m, "mass");
    cmd->add_option("--M", v.Mq, "quadrupole magnitude");
    cmd->add_option("--b", v.b, "field gradient constant");
    cmd->add_option("--alpha", v.alpha, "inverse-radial potential strength");
    cmd->add_option("--eta", v.eta, "linear potential strength");
    cmd->add_option("--rho0", v.rho0, "hard-wall radius");
    cmd->add_option("--n-min", v.n_min, "lowest radial quantum number");
    cmd->add_option("--n-max", v.n_max, "highest radial quantum number");
    cmd->add_option("--l-min", v.l_min, "lowest angular quantum number");
    cmd->add_option("--l-max", v.l_max, "highest angular quantum number");
    cmd->add_option("--out", v.out, "output path (default: stdout)");
    cmd->add_option("--format", v.format, "csv|json");
    cmd->add_option("--tol", v.tol, "verification tolerance on rel_diff");
}

void apply_flags(RunConfig& cfg, CLI::App* sub, const FlagVals& v) {
    auto used = [&](const char* name) { return sub->count(name) > 0; };
    if (used("--scenario")) cfg.scenario = v.scenario;
    if (used("--m")) cfg.m = v.m;
    if (used("--M")) cfg.Mq = v.Mq;
    if (used("--b")) cfg.b = v.b;
    if (used("--alpha")) cfg.alpha = v.alpha;
    if (used("--eta")) cfg.eta = v.eta;
    if (used("--rho0")) cfg.rho0 = v.rho0;
    if (used("--n-min")) cfg.n_min = v.n_min;
    if (used("--n-max")) cfg.n_max = v.n_max;
    if (used("--l-min")) cfg.l_min = v.l_min;
    if (used("--l-max")) cfg.l_max = v.l_max;
    if (used("--out")) cfg.out = v.out;
    if (used("--format")) cfg.format = v.format;
    if (used("--tol")) cfg.tol = v.tol;
    if (sub->get_option_no_throw("--varpi") && used("--varpi")) cfg.varpi = v.varpi;
    if (sub->get_option_no_throw("--fd-step") && used("--fd-step")) cfg.h = v.h;
    if (sub->get_option_no_throw("--grid-cells") && used("--grid-cells"))
        cfg.grid_cells = v.grid_cells;
}

mqm_scenario scenario_tag(const std::string& name) {
    if (name == "landau") return MQM_SCENARIO_LANDAU;
    if (name == "hardwall") return MQM_SCENARIO_HARDWALL;
    if (name == "coulomb") return MQM_SCENARIO_COULOMB;
    if (name == "linear") return MQM_SCENARIO_LINEAR;
    throw ConfigError("unknown scenario: " + name);
}

bool is_potential(const std::string& name) {
    return name == "coulomb" || name == "linear";
}

const char* method_name(const std::string& scenario) {
    if (scenario == "landau") return "closed_form";
    if (scenario == "hardwall") return "exact_root";
    return "closed_form";
}

struct SystemHandle {
    mqm_system* sys = nullptr;
    SystemHandle() : sys(mqm_system_create()) {
        if (!sys) throw RunError("failed to allocate system handle");
    }
    ~SystemHandle() { mqm_system_destroy(sys); }
    SystemHandle(const SystemHandle&) = delete;
    SystemHandle& operator=(const SystemHandle&) = delete;
    operator mqm_system*() const { return sys; }
};

void require_ok(mqm_status st, mqm_system* sys, const std::string& what) {
    if (st != MQM_OK)
        throw RunError(what + ": " + mqm_status_name(st) + ": " +
                       mqm_system_last_error(sys));
}

void configure_system(SystemHandle& h, const RunConfig& cfg) {
    require_ok(mqm_system_configure(h, scenario_tag(cfg.scenario), cfg.m, cfg.Mq,
                                    cfg.b),
               h, "configure");
    if (cfg.alpha) require_ok(mqm_system_set_alpha(h, *cfg.alpha), h, "set alpha");
    if (cfg.eta) require_ok(mqm_system_set_eta(h, *cfg.eta), h, "set eta");
    if (cfg.rho0 > 0.0) require_ok(mqm_system_set_rho0(h, cfg.rho0), h, "set rho0");
}

void resolve_ranges(RunConfig& cfg) {
    int n_lo = is_potential(cfg.scenario) ? 1 : 0;
    if (!cfg.n_min) cfg.n_min = n_lo;
    if (!cfg.n_max) cfg.n_max = 3;
}

void check_sweep_config(SystemHandle& h, const RunConfig& cfg) {
    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("format must be csv or json");
    if (!(cfg.tol > 0.0)) throw ConfigError("tol must be > 0");
    if (*cfg.n_min > *cfg.n_max) throw ConfigError("empty n range");
    if (cfg.l_min > cfg.l_max) throw ConfigError("empty l range");
    char buf[512];
    int violations = mqm_system_validate(h, *cfg.n_min, cfg.l_min, buf, sizeof buf);
    if (violations != 0)
        throw ConfigError(std::string("inadmissible configuration: ") + buf);
}

ojson meta_of(const RunConfig& cfg, const std::string& command) {
    ojson m;
    m["command"] = command;
    m["scenario"] = cfg.scenario;
    m["m"] = cfg.m;
    m["M"] = cfg.Mq;
    m["b"] = cfg.b;
    m["alpha"] = cfg.alpha ? ojson(*cfg.alpha) : ojson(nullptr);
    m["eta"] = cfg.eta ? ojson(*cfg.eta) : ojson(nullptr);
    m["rho0"] = cfg.rho0;
    m["n_min"] = *cfg.n_min;
    m["n_max"] = *cfg.n_max;
    m["l_min"] = cfg.l_min;
    m["l_max"] = cfg.l_max;
    m["tol"] = cfg.tol;
    m["varpi"] = cfg.varpi;
    m["h"] = cfg.h;
    m["grid_cells"] = cfg.grid_cells;
    m["format"] = cfg.format;
    return m;
}

std::string render_csv(const std::vector<std::string>& header, const ojson& rows) {
    std::ostringstream out;
    for (size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < header.size(); ++i) {
            if (i) out << ",";
            const auto& v = row.at(header[i]);
            if (v.is_null()) continue;
            if (v.is_string()) out << v.get<std::string>();
            else if (v.is_boolean()) out << (v.get<bool>() ? "true" : "false");
            else if (v.is_number_integer()) out << v.get<long long>();
            else out << fmt17(v.get<double>());
        }
        out << "\n";
    }
    return out.str();
}

void emit(const RunConfig& cfg, const std::string& command,
          const std::vector<std::string>& header, const ojson& rows) {
    std::string payload;
    if (cfg.format == "json") {
        ojson doc;
        doc["meta"] = meta_of(cfg, command);
        doc["rows"] = rows;
        payload = doc.dump(2);
        payload += "\n";
    } else {
        payload = render_csv(header, rows);
    }
    if (cfg.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw RunError("cannot open output file: " + cfg.out);
        f << payload;
    }
}

int cmd_spectrum(const RunConfig& cfg) {
    SystemHandle h;
    configure_system(h, cfg);
    check_sweep_config(h, cfg);

    const std::vector<std::string> header = {
        "scenario", "n", "l", "root_index", "frequency", "energy", "method"};
    ojson rows = ojson::array();
    for (int n = *cfg.n_min; n <= *cfg.n_max; ++n)
        for (int l = cfg.l_min; l <= cfg.l_max; ++l) {
            if (is_potential(cfg.scenario)) {
                double roots[32];
                int count = 0;
                require_ok(mqm_allowed_frequencies(h, n, l, roots, 32, &count), h,
                           "frequency scan");
                count = std::min(count, 32);
                for (int i = 0; i < count; ++i) {
                    double e = 0.0, w = 0.0;
                    require_ok(mqm_energy(h, n, l, roots[i], &e, &w), h, "energy");
                    ojson row;
                    row["scenario"] = cfg.scenario;
                    row["n"] = n;
                    row["l"] = l;
                    row["root_index"] = i;
                    row["frequency"] = w;
                    row["energy"] = e;
                    row["method"] = method_name(cfg.scenario);
                    rows.push_back(std::move(row));
                }
            } else {
                double e = 0.0, w = 0.0;
                require_ok(mqm_energy(h, n, l, 0.0, &e, &w), h, "energy");
                ojson row;
                row["scenario"] = cfg.scenario;
                row["n"] = n;
                row["l"] = l;
                row["root_index"] = 0;
                row["frequency"] = w;
                row["energy"] = e;
                row["method"] = method_name(cfg.scenario);
                rows.push_back(std::move(row));
            }
        }
    emit(cfg, "spectrum", header, rows);
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    SystemHandle h;
    configure_system(h, cfg);
    check_sweep_config(h, cfg);

    const bool hardwall = cfg.scenario == "hardwall";
    std::vector<std::string> header = {
        "scenario", "n", "l", "frequency", "energy_analytic", "energy_numeric",
        "abs_diff", "rel_diff", "method", "overlap_with_numeric"};
    if (hardwall) {
        header.push_back("energy_approx");
        header.push_back("approx_rel_err");
        header.push_back("approx_err_decreasing");
    }
    header.push_back("status");
    header.push_back("pass");

    bool all_pass = true;
    ojson rows = ojson::array();
    std::map<int, double> prev_approx_err;  // per l column
    for (int n = *cfg.n_min; n <= *cfg.n_max; ++n)
        for (int l = cfg.l_min; l <= cfg.l_max; ++l) {
            ojson row;
            row["scenario"] = cfg.scenario;
            row["n"] = n;
            row["l"] = l;
            double ea = 0.0, en = 0.0, freq = 0.0, ov = 0.0;
            mqm_status st = mqm_verify_level(h, n, l, cfg.varpi, cfg.grid_cells,
                                             &ea, &en, &freq, &ov);
            if (st != MQM_OK) {
                row["frequency"] = nullptr;
                row["energy_analytic"] = nullptr;
                row["energy_numeric"] = nullptr;
                row["abs_diff"] = nullptr;
                row["rel_diff"] = nullptr;
                row["method"] = method_name(cfg.scenario);
                row["overlap_with_numeric"] = nullptr;
                if (hardwall) {
                    row["energy_approx"] = nullptr;
                    row["approx_rel_err"] = nullptr;
                    row["approx_err_decreasing"] = nullptr;
                }
                row["status"] = mqm_status_name(st);
                row["pass"] = false;
                all_pass = false;
                rows.push_back(std::move(row));
                continue;
            }
            double abs_diff = std::abs(ea - en);
            double rel_diff = abs_diff / std::max(std::abs(ea), 1e-300);
            bool pass = rel_diff < cfg.tol && ov >= 0.999;
            row["frequency"] = freq;
            row["energy_analytic"] = ea;
            row["energy_numeric"] = en;
            row["abs_diff"] = abs_diff;
            row["rel_diff"] = rel_diff;
            row["method"] = method_name(cfg.scenario);
            row["overlap_with_numeric"] = ov;
            if (hardwall) {
                double approx = 0.0;
                require_ok(mqm_hardwall_energy_approx(h, n, l, &approx), h,
                           "hard-wall approximation");
                double aerr = std::abs(approx - ea) / std::max(std::abs(ea), 1e-300);
                row["energy_approx"] = approx;
                row["approx_rel_err"] = aerr;
                // trendline: does the large-n approximation sharpen within
                // this l column? informational, not a pass gate
                auto it = prev_approx_err.find(l);
                row["approx_err_decreasing"] =
                    it == prev_approx_err.end() || aerr < it->second;
                prev_approx_err[l] = aerr;
            }
            row["status"] = "ok";
            row["pass"] = pass;
            if (!pass) all_pass = false;
            rows.push_back(std::move(row));
        }
    emit(cfg, "verify", header, rows);
    return all_pass ? 0 : 1;
}

int cmd_fields_check(const RunConfig& cfg) {
    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("format must be csv or json");
    if (!(cfg.h > 0.0)) throw ConfigError("h must be > 0");
    if (!(cfg.Mq > 0.0)) throw ConfigError("M must be > 0");
    if (cfg.b < 0.0 || !std::isfinite(cfg.b)) throw ConfigError("b must be >= 0");

    SystemHandle h;
    require_ok(mqm_system_configure(h, MQM_SCENARIO_LANDAU, cfg.m, cfg.Mq, cfg.b),
               h, "configure");

    const std::vector<std::string> header = {"check", "h", "value"};
    ojson rows = ojson::array();
    auto push = [&](const char* name, double step, double value) {
        ojson row;
        row["check"] = name;
        row["h"] = step;
        row["value"] = value;
        rows.push_back(std::move(row));
    };
    for (double step : {cfg.h, cfg.h / 2.0}) {
        double far = 0.0, mdb = 0.0, spread = 0.0;
        require_ok(mqm_fields_residuals(h, step, &far, &mdb, &spread), h,
                   "field residuals");
        push("max_faraday", step, far);
        push("max_moment_dot_b", step, mdb);
        push("uniformity_spread", step, spread);
    }
    double pf = 0.0, pm = 0.0;
    require_ok(mqm_fields_probe_orders(h, cfg.h, &pf, &pm), h, "probe orders");
    push("faraday_order", cfg.h, pf);
    push("moment_dot_order", cfg.h, pm);

    emit(cfg, "fields-check", header, rows);
    return 0;
}

int cmd_scan(const RunConfig& cfg) {
    if (!is_potential(cfg.scenario))
        throw ConfigError("scan requires a scalar-potential scenario");
    if (*cfg.n_min < 1) throw ConfigError("scan requires n >= 1");
    SystemHandle h;
    configure_system(h, cfg);
    check_sweep_config(h, cfg);

    const std::vector<std::string> header = {
        "scenario", "n",           "l",          "root_index",      "frequency",
        "residual", "closed_form", "closed_form_dev", "warning"};
    ojson rows = ojson::array();
    for (int n = *cfg.n_min; n <= *cfg.n_max; ++n)
        for (int l = cfg.l_min; l <= cfg.l_max; ++l) {
            double roots[32];
            int count = 0;
            require_ok(mqm_allowed_frequencies(h, n, l, roots, 32, &count), h,
                       "frequency scan");
            count = std::min(count, 32);
            double cf = 0.0;
            if (n == 1)
                require_ok(mqm_allowed_frequency_n1(h, l, &cf), h, "closed form");
            if (count == 0) {
                ojson row;
                row["scenario"] = cfg.scenario;
                row["n"] = n;
                row["l"] = l;
                row["root_index"] = -1;
                row["frequency"] = nullptr;
                row["residual"] = nullptr;
                row["closed_form"] = n == 1 ? ojson(cf) : ojson(nullptr);
                row["closed_form_dev"] = nullptr;
                row["warning"] = 1;
                rows.push_back(std::move(row));
                continue;
            }
            for (int i = 0; i < count; ++i) {
                double res = 0.0;
                require_ok(mqm_truncation_residual(h, n, l, roots[i], &res), h,
                           "truncation residual");
                ojson row;
                row["scenario"] = cfg.scenario;
                row["n"] = n;
                row["l"] = l;
                row["root_index"] = i;
                row["frequency"] = roots[i];
                row["residual"] = res;
                if (n == 1) {
                    row["closed_form"] = cf;
                    row["closed_form_dev"] = std::abs(roots[i] - cf) / cf;
                } else {
                    row["closed_form"] = nullptr;
                    row["closed_form_dev"] = nullptr;
                }
                row["warning"] = 0;
                rows.push_back(std::move(row));
            }
        }
    emit(cfg, "scan", header, rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"magnetic-quadrupole Landau-analogue spectra"};
    app.require_subcommand(1);

    FlagVals v;
    CLI::App* spectrum = app.add_subcommand("spectrum", "analytic energy tables");
    CLI::App* verify = app.add_subcommand("verify", "analytic vs numerical sweep");
    CLI::App* fields = app.add_subcommand("fields-check", "field identity residuals");
    CLI::App* scan = app.add_subcommand("scan", "allowed-frequency roots");
    for (CLI::App* sub : {spectrum, verify, fields, scan}) add_common_flags(sub, v);
    verify->add_option("--varpi", v.varpi,
                       "fixed trial frequency for potential scenarios (0 = auto)");
    verify->add_option("--grid-cells", v.grid_cells, "eigensolver grid cells");
    fields->add_option("--fd-step", v.h, "finite-difference step h");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::ostringstream msg;
        msg << e.what();
        ojson err{{"error", msg.str()}, {"code", 2}};
        std::cerr << err.dump() << "\n";
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        RunConfig cfg;
        if (sub->count("--config") > 0) apply_file(cfg, read_config_file(v.config));
        apply_flags(cfg, sub, v);
        resolve_ranges(cfg);
        if (sub == spectrum) return cmd_spectrum(cfg);
        if (sub == verify) return cmd_verify(cfg);
        if (sub == fields) return cmd_fields_check(cfg);
        return cmd_scan(cfg);
    } catch (const ConfigError& e) {
        ojson err{{"error", e.what()}, {"code", 2}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        ojson err{{"error", e.what()}, {"code", 1}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
