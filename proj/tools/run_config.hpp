#pragma once

#include <json.hpp>

#include <filesystem>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbessel::cli {

/// Invalid or incomplete configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Artifact could not be written; maps to exit code 4.
class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One configurable key of a subcommand. An empty default marks a required key.
struct Param {
    std::string key;
    std::string fallback;
    std::string help;
};

/// The resolved configuration of one run: command-line flags over config-file
/// values over defaults, kept as strings until a typed getter validates them.
class RunConfig {
public:
    RunConfig(std::string subcommand, const std::vector<Param>& params);

    const std::string& subcommand() const noexcept { return subcommand_; }

    /// Merges flag values (given flags only) and the config file object.
    void resolve(const std::map<std::string, std::string>& flags, const nlohmann::json& file);

    std::string text(const std::string& key) const;
    double number(const std::string& key) const;
    long integer(const std::string& key, long min_value = std::numeric_limits<long>::min()) const;
    std::vector<double> numbers(const std::string& key) const;
    std::vector<std::string> words(const std::string& key) const;
    /// "a:b:n" gives n evenly spaced values from a to b; a plain number gives one.
    std::vector<double> range(const std::string& key) const;

    /// Every key with its resolved value, numbers kept as JSON numbers.
    nlohmann::json resolved() const;

private:
    std::string subcommand_;
    std::vector<Param> params_;
    std::map<std::string, std::string> values_;
};

/// Reads a JSON object from a UTF-8 file; a missing path gives an empty object.
nlohmann::json load_config_file(const std::string& path);

/// Twelve significant digits, the form used in every CSV cell.
std::string format_number(double v);

/// RFC-4180 CSV with leading '#' metadata lines (schema version, timestamp, config).
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    void row(const std::vector<std::string>& cells);

    /// Writes metadata, header and rows; throws OutputError on failure.
    void save(const std::filesystem::path& path, const nlohmann::json& config, const std::string& timestamp) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

inline constexpr int kSchemaVersion = 1;

/// A named pass/fail check of the run, reported in the JSON artifact.
struct Check {
    std::string name;
    double value;
    double tolerance;
    bool passed;
};

/// Everything a subcommand produces.
struct RunResult {
    std::string csv_name;
    CsvWriter csv{{}};
    nlohmann::json summary = nlohmann::json::object();
    std::vector<Check> checks;

    bool passed() const;
};

/// UTC timestamp in ISO 8601.
std::string utc_timestamp();

/// Writes `<dir>/<csv_name>` and `<dir>/report.json`.
void write_artifacts(const std::filesystem::path& dir, const RunConfig& config, const RunResult& result);

} // namespace pbessel::cli
