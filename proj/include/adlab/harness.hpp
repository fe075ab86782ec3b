#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace adlab {

inline constexpr const char* kVersion = "0.1.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key=value configuration. Lines are `key = value`; '#' starts a
// comment; keys and values round-trip losslessly.
class KvConfig {
 public:
  KvConfig() = default;
  static KvConfig parse(const std::string& text);
  static KvConfig load(const std::filesystem::path& path);
  std::string serialize() const;

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  void set(const std::string& key, const std::string& value) {
    values_[key] = value;
  }

  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

// One output curve. Cells are optional: a missing cell (window not full yet,
// no angle yet) serializes as an empty field; a NaN that reaches
// serialization is a numeric failure.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;

  std::string serialize() const;  // throws NumericFailure on NaN/inf cells
};

struct ExperimentOutput {
  // file stem -> table; written as <stem>.csv
  std::map<std::string, CsvTable> csvs;
  // extra manifest entries beyond the config echo
  std::map<std::string, std::string> manifest_extra;
};

// Runs one experiment kind. Every kind is a thin composition of library
// calls; all numeric logic lives in the modules.
ExperimentOutput run_experiment(const std::string& kind, const KvConfig& cfg,
                                std::uint64_t seed);

extern const std::vector<std::string> kExperimentKinds;

// Writes CSVs + manifest into out_dir. Returns the manifest path.
std::filesystem::path write_output(const std::string& kind,
                                   const KvConfig& cfg, std::uint64_t seed,
                                   const ExperimentOutput& out,
                                   const std::filesystem::path& out_dir);

// Generates plot.py next to the manifest; throws ConfigError if the
// manifest or any CSV it names is missing.
std::filesystem::path emit_plot_script(
    const std::filesystem::path& manifest_path);

// Concurrency cap for independent sub-runs (AUTODROP_LAB_THREADS).
unsigned max_threads();

}  // namespace adlab
