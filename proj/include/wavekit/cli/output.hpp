#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace wavekit::cli {

// 17 significant digits, enough to round-trip any double.
std::string fmt(double v);

std::string sha256_hex(const std::string& bytes);

// RFC 4180: quote fields holding a comma, quote, CR or LF; double embedded quotes.
std::string csv_field(const std::string& s);

struct FileRecord {
    std::string name;  // relative to the run directory
    std::string sha256;
    std::size_t bytes = 0;
};

// Run directory that remembers every file it writes.
class OutputDir {
public:
    explicit OutputDir(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }
    const std::vector<FileRecord>& files() const { return files_; }

    void write_text(const std::string& name, const std::string& content);
    // Whitespace-separated columns with a '#' header line.
    void write_dat(const std::string& name, const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows);
    void write_csv(const std::string& name, const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows);
    void write_json(const std::string& name, const nlohmann::json& j);

    // Writes manifest.json (not listed in itself) and returns its content.
    nlohmann::json write_manifest(const nlohmann::json& config, const nlohmann::json& results, double wall_clock_s);

private:
    std::filesystem::path root_;
    std::vector<FileRecord> files_;
};

// WAVEKIT_OUT, when set, replaces the configured directory.
std::filesystem::path resolve_output_dir(const std::string& configured);

// Re-reads every listed file and compares checksums.
bool verify_manifest(const std::filesystem::path& run_dir);

}  // namespace wavekit::cli
