#include "cgpoly/report.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cgpoly {

using nlohmann::json;

void RunConfig::validate() const {
    if (experiment.empty()) throw std::invalid_argument("config: experiment name required");
    if (!seed.has_value()) throw std::invalid_argument("config: seed is mandatory");
    if (n < 2) throw std::invalid_argument("config: n must be >= 2");
    if (t < 1) throw std::invalid_argument("config: t must be >= 1");
    if (replicas < 1) throw std::invalid_argument("config: replicas must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("config: alpha must lie in (0,1)");
    if (!(tol > 0.0 && tol < 1.0))
        throw std::invalid_argument("config: tol must lie in (0,1)");
    if (format != "csv" && format != "json")
        throw std::invalid_argument("config: format must be csv or json");
    parse_env_spec(dist);
}

bool ExperimentReport::passed() const {
    for (const auto& t : tests)
        if (!t.result.pass) return false;
    return true;
}

void ExperimentReport::add_estimate(const std::string& name, double value) {
    estimates.push_back({name, value, 0.0, false});
}

void ExperimentReport::add_estimate(const std::string& name, double value,
                                    double se) {
    estimates.push_back({name, value, se, true});
}

void ExperimentReport::add_test(const std::string& name, const TestResult& r) {
    tests.push_back({name, r});
}

namespace {

std::string fmt_double(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

std::string report_to_csv(const ExperimentReport& rep) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    for (std::size_t c = 0; c < rep.row_columns.size(); ++c)
        os << (c ? "," : "") << rep.row_columns[c];
    os << "\n";
    for (const auto& row : rep.rows) {
        if (row.size() != rep.row_columns.size())
            throw std::runtime_error("csv: row width != header width");
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << fmt_double(row[c]);
        os << "\n";
    }
    return os.str();
}

std::string report_to_json(const ExperimentReport& rep) {
    json j;
    j["experiment"] = rep.experiment;
    j["version"] = rep.version;
    j["wall_seconds"] = rep.wall_seconds;
    json jc;
    jc["experiment"] = rep.config.experiment;
    jc["dist"] = rep.config.dist;
    jc["n"] = rep.config.n;
    jc["t"] = rep.config.t;
    jc["alpha"] = rep.config.alpha;
    jc["replicas"] = rep.config.replicas;
    jc["seed"] = rep.config.seed.value_or(0);
    jc["tol"] = rep.config.tol;
    jc["format"] = rep.config.format;
    jc["out"] = rep.config.out_path;
    j["config"] = jc;
    j["estimates"] = json::array();
    for (const auto& e : rep.estimates) {
        json je;
        je["name"] = e.name;
        je["value"] = e.value;
        if (e.has_se) je["se"] = e.se;
        j["estimates"].push_back(je);
    }
    j["tests"] = json::array();
    for (const auto& t : rep.tests) {
        json jt;
        jt["name"] = t.name;
        jt["statistic"] = t.result.statistic;
        jt["critical_value"] = t.result.critical_value;
        jt["level"] = t.result.level;
        jt["pass"] = t.result.pass;
        j["tests"].push_back(jt);
    }
    j["row_columns"] = rep.row_columns;
    j["rows"] = rep.rows;
    return j.dump(2) + "\n";
}

ExperimentReport report_from_json(const std::string& text) {
    const json j = json::parse(text);
    ExperimentReport rep;
    rep.experiment = j.at("experiment").get<std::string>();
    rep.version = j.at("version").get<std::string>();
    rep.wall_seconds = j.at("wall_seconds").get<double>();
    const json& jc = j.at("config");
    rep.config.experiment = jc.at("experiment").get<std::string>();
    rep.config.dist = jc.at("dist").get<std::string>();
    rep.config.n = jc.at("n").get<int>();
    rep.config.t = jc.at("t").get<int>();
    rep.config.alpha = jc.at("alpha").get<double>();
    rep.config.replicas = jc.at("replicas").get<int>();
    rep.config.seed = jc.at("seed").get<std::uint64_t>();
    rep.config.tol = jc.at("tol").get<double>();
    rep.config.format = jc.at("format").get<std::string>();
    rep.config.out_path = jc.at("out").get<std::string>();
    for (const auto& je : j.at("estimates")) {
        Estimate e;
        e.name = je.at("name").get<std::string>();
        e.value = je.at("value").get<double>();
        if (je.contains("se")) {
            e.se = je.at("se").get<double>();
            e.has_se = true;
        }
        rep.estimates.push_back(e);
    }
    for (const auto& jt : j.at("tests")) {
        NamedTest t;
        t.name = jt.at("name").get<std::string>();
        t.result.statistic = jt.at("statistic").get<double>();
        t.result.critical_value = jt.at("critical_value").get<double>();
        t.result.level = jt.at("level").get<double>();
        t.result.pass = jt.at("pass").get<bool>();
        rep.tests.push_back(t);
    }
    rep.row_columns = j.at("row_columns").get<std::vector<std::string>>();
    rep.rows = j.at("rows").get<std::vector<std::vector<double>>>();
    return rep;
}

void emit_report(const ExperimentReport& rep, const std::string& format,
                 const std::string& path) {
    const std::string payload =
        format == "csv" ? report_to_csv(rep) : report_to_json(rep);
    if (path.empty() || path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << payload;
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace cgpoly
