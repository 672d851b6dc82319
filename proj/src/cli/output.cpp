#include "wavekit/cli/output.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace wavekit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sha256_hex(const std::string& bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + '"';
}

OutputDir::OutputDir(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

void OutputDir::write_text(const std::string& name, const std::string& content) {
    const fs::path p = root_ / name;
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
    out << content;
    out.close();
    if (!out) throw std::runtime_error("write failed for '" + p.string() + "'");
    files_.push_back({name, sha256_hex(content), content.size()});
}

void OutputDir::write_dat(const std::string& name, const std::vector<std::string>& header,
                          const std::vector<std::vector<double>>& rows) {
    std::string s = "#";
    for (const auto& h : header) s += " " + h;
    s += '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) s += ' ';
            s += fmt(r[i]);
        }
        s += '\n';
    }
    write_text(name, s);
}

void OutputDir::write_csv(const std::string& name, const std::vector<std::string>& header,
                          const std::vector<std::vector<std::string>>& rows) {
    std::string s;
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) s += ',';
            s += csv_field(fields[i]);
        }
        s += "\r\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
    write_text(name, s);
}

void OutputDir::write_json(const std::string& name, const json& j) { write_text(name, j.dump(2) + "\n"); }

json OutputDir::write_manifest(const json& config, const json& results, double wall_clock_s) {
    json m;
    m["artifact"] = "wavekit";
    m["version"] = WAVEKIT_VERSION;
    m["config_hash"] = sha256_hex(config.dump());
    m["wall_clock_seconds"] = wall_clock_s;
    m["results"] = results;
    json files = json::array();
    for (const auto& f : files_) files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    m["files"] = files;
    std::ofstream out(root_ / "manifest.json", std::ios::binary);
    out << m.dump(2) << "\n";
    if (!out) throw std::runtime_error("cannot write manifest");
    return m;
}

fs::path resolve_output_dir(const std::string& configured) {
    if (const char* env = std::getenv("WAVEKIT_OUT"); env && *env) return fs::path(env);
    return fs::path(configured);
}

bool verify_manifest(const fs::path& run_dir) {
    std::ifstream in(run_dir / "manifest.json");
    if (!in) return false;
    const json m = json::parse(in);
    for (const auto& f : m.at("files")) {
        std::ifstream file(run_dir / f.at("name").get<std::string>(), std::ios::binary);
        if (!file) return false;
        const std::string bytes((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
        if (sha256_hex(bytes) != f.at("sha256").get<std::string>()) return false;
    }
    return true;
}

}  // namespace wavekit::cli
