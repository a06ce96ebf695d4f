#include "run_config.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace pbessel::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

double parse_double(const std::string& key, const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + s + "'");
    }
    return v;
}

std::string json_to_text(const std::string& key, const nlohmann::json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_number(v.get<double>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_array()) {
        std::string out;
        for (const auto& item : v) {
            if (!out.empty()) out += ",";
            out += json_to_text(key, item);
        }
        return out;
    }
    throw ConfigError("config: key '" + key + "' has an unsupported value type");
}

std::string quote_csv(const std::string& cell) {
    if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

RunConfig::RunConfig(std::string subcommand, const std::vector<Param>& params)
    : subcommand_(std::move(subcommand)), params_(params) {}

void RunConfig::resolve(const std::map<std::string, std::string>& flags, const nlohmann::json& file) {
    if (!file.is_object()) throw ConfigError("config: the config file must hold a JSON object");
    for (const auto& [key, value] : file.items()) {
        bool known = key == "subcommand";
        for (const Param& p : params_) known = known || p.key == key;
        if (!known) throw ConfigError("config: unknown key '" + key + "' for " + subcommand_);
    }
    if (file.contains("subcommand") && file["subcommand"] != subcommand_) {
        throw ConfigError("config: file is for subcommand '" + json_to_text("subcommand", file["subcommand"]) + "'");
    }
    for (const Param& p : params_) {
        std::string v = p.fallback;
        if (auto it = flags.find(p.key); it != flags.end()) {
            v = it->second;
        } else if (file.contains(p.key)) {
            v = json_to_text(p.key, file[p.key]);
        }
        v = trim(v);
        if (v.empty()) throw ConfigError("config: missing key '" + p.key + "'");
        values_[p.key] = v;
    }
}

std::string RunConfig::text(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("config: missing key '" + key + "'");
    return it->second;
}

double RunConfig::number(const std::string& key) const { return parse_double(key, text(key)); }

long RunConfig::integer(const std::string& key, long min_value) const {
    const double v = number(key);
    if (v != std::floor(v) || std::abs(v) > 1e15) {
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + text(key) + "'");
    }
    if (v < static_cast<double>(min_value)) {
        throw ConfigError("config: key '" + key + "' must be at least " + std::to_string(min_value));
    }
    return static_cast<long>(v);
}

std::vector<double> RunConfig::numbers(const std::string& key) const {
    std::vector<double> out;
    for (const std::string& s : split(text(key), ',')) out.push_back(parse_double(key, s));
    return out;
}

std::vector<std::string> RunConfig::words(const std::string& key) const { return split(text(key), ','); }

std::vector<double> RunConfig::range(const std::string& key) const {
    const std::vector<std::string> parts = split(text(key), ':');
    if (parts.size() == 1) return {parse_double(key, parts[0])};
    if (parts.size() != 3) throw ConfigError("config: key '" + key + "' expects 'start:stop:count'");
    const double a = parse_double(key, parts[0]);
    const double b = parse_double(key, parts[1]);
    const double n = parse_double(key, parts[2]);
    if (n < 2 || n != std::floor(n) || n > 1000) {
        throw ConfigError("config: key '" + key + "' needs an integer count between 2 and 1000");
    }
    std::vector<double> out;
    for (int i = 0; i < static_cast<int>(n); ++i) out.push_back(a + (b - a) * i / (n - 1));
    return out;
}

nlohmann::json RunConfig::resolved() const {
    nlohmann::json out = nlohmann::json::object();
    out["subcommand"] = subcommand_;
    for (const auto& [key, v] : values_) {
        std::size_t used = 0;
        double d = 0.0;
        try {
            d = std::stod(v, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == v.size() && std::isfinite(d)) {
            if (d == std::floor(d) && std::abs(d) < 1e15) {
                out[key] = static_cast<long long>(d);
            } else {
                out[key] = d;
            }
        } else {
            out[key] = v;
        }
    }
    return out;
}

nlohmann::json load_config_file(const std::string& path) {
    if (path.empty()) return nlohmann::json::object();
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open config file '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON in '") + path + "': " + e.what());
    }
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::row(const std::vector<std::string>& cells) { rows_.push_back(cells); }

void CsvWriter::save(const std::filesystem::path& path, const nlohmann::json& config,
                     const std::string& timestamp) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw OutputError("io: cannot write " + path.string());
    out << "# schema_version: " << kSchemaVersion << "\r\n";
    out << "# generated_at: " << timestamp << "\r\n";
    out << "# config: " << config.dump() << "\r\n";
    const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << quote_csv(cells[i]);
        out << "\r\n";
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    if (!out) throw OutputError("io: write failed for " + path.string());
}

bool RunResult::passed() const {
    for (const Check& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_artifacts(const std::filesystem::path& dir, const RunConfig& config, const RunResult& result) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw OutputError("io: cannot create " + dir.string() + ": " + ec.message());

    const std::string stamp = utc_timestamp();
    const nlohmann::json resolved = config.resolved();
    result.csv.save(dir / result.csv_name, resolved, stamp);

    nlohmann::json report;
    report["schema_version"] = kSchemaVersion;
    report["generated_at"] = stamp;
    report["subcommand"] = config.subcommand();
    report["config"] = resolved;
    report["status"] = result.passed() ? "ok" : "quality-failure";
    report["summary"] = result.summary;
    report["checks"] = nlohmann::json::array();
    for (const Check& c : result.checks) {
        nlohmann::json j;
        j["name"] = c.name;
        // JSON has no infinity; divergent values are reported as null.
        j["value"] = std::isfinite(c.value) ? nlohmann::json(c.value) : nlohmann::json();
        j["tolerance"] = c.tolerance;
        j["passed"] = c.passed;
        report["checks"].push_back(j);
    }
    report["artifacts"] = {result.csv_name, "report.json"};

    std::ofstream out(dir / "report.json", std::ios::binary);
    if (!out) throw OutputError("io: cannot write " + (dir / "report.json").string());
    out << report.dump(2) << "\n";
    if (!out) throw OutputError("io: write failed for report.json");
}

} // namespace pbessel::cli
