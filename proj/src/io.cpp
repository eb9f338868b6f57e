#include "mobskew/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mobskew/errors.hpp"

namespace mobskew {

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("fnv1a64_file: cannot open " + path.string());
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[1 << 16];
    while (f.read(buf, sizeof buf) || f.gcount() > 0) {
        std::streamsize got = f.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ull;
        }
        if (got < static_cast<std::streamsize>(sizeof buf)) break;
    }
    return h;
}

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("write_text_file: cannot open " + path.string());
    f.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!f) throw std::runtime_error("write_text_file: write failed for " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("read_text_file: cannot open " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string orbit_csv(const std::vector<std::array<double, 2>>& orbit) {
    std::string out = "n,x,y\n";
    for (std::size_t n = 0; n < orbit.size(); ++n)
        out += std::to_string(n) + "," + g17(orbit[n][0]) + "," + g17(orbit[n][1]) + "\n";
    return out;
}

std::string averages_csv(const std::vector<std::pair<std::uint64_t, Cplx>>& averages) {
    std::string out = "N,re_avg,im_avg\n";
    for (const auto& [N, v] : averages)
        out += std::to_string(N) + "," + g17(v.real()) + "," + g17(v.imag()) + "\n";
    return out;
}

std::string series_csv(const CorrelationSeries& series) {
    std::string out = "N,re_S,im_S,abs_S,abs_S_over_N\n";
    for (const auto& [N, S] : series.entries) {
        double a = std::abs(S);
        out += std::to_string(N) + "," + g17(S.real()) + "," + g17(S.imag()) + "," + g17(a) +
               "," + g17(a / static_cast<double>(N)) + "\n";
    }
    return out;
}

CorrelationSeries series_from_csv(const std::string& body) {
    std::istringstream in(body);
    std::string line;
    if (!std::getline(in, line)) throw config_error("series_from_csv: empty input");
    CorrelationSeries s;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (cells.size() < 3) throw config_error("series_from_csv: bad row: " + line);
        s.entries.emplace_back(std::stoull(cells[0]),
                               Cplx(std::stod(cells[1]), std::stod(cells[2])));
    }
    return s;
}

std::string decay_fit_json(const DecayFit& fit) {
    nlohmann::ordered_json j;
    j["a_hat"] = fit.a_hat;
    j["scale"] = fit.scale;
    j["residual_rms"] = fit.residual_rms;
    j["n_min"] = fit.n_min;
    j["n_max"] = fit.n_max;
    j["model"] = fit.model;
    if (!fit.notes.empty()) j["notes"] = fit.notes;
    return j.dump(2) + "\n";
}

namespace {

char hexdigit(unsigned v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }

std::string hex64(std::uint64_t v) {
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = hexdigit(v & 0xf);
        v >>= 4;
    }
    return s;
}

std::uint64_t parse_hex64(const std::string& s) {
    return std::strtoull(s.c_str(), nullptr, 16);
}

} // namespace

void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
    nlohmann::ordered_json j;
    j["tool_version"] = m.tool_version;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : m.config) cfg[k] = v;
    j["config"] = cfg;
    nlohmann::ordered_json stages = nlohmann::ordered_json::array();
    for (const auto& [name, ms] : m.stages_ms)
        stages.push_back({{"stage", name}, {"wall_ms", ms}});
    j["stages"] = stages;
    j["cache"] = {{"hits", m.cache_hits}, {"misses", m.cache_misses}};
    j["precision_report"] = m.precision_report;
    nlohmann::ordered_json outs = nlohmann::ordered_json::array();
    for (const auto& e : m.outputs)
        outs.push_back({{"path", e.path}, {"fnv1a64", hex64(e.checksum)}});
    j["outputs"] = outs;
    for (const auto& [k, v] : m.extra) j[k] = v;
    write_text_file(path, j.dump(2) + "\n");
}

RunManifest read_manifest(const std::filesystem::path& path) {
    nlohmann::json j = nlohmann::json::parse(read_text_file(path));
    RunManifest m;
    m.tool_version = j.value("tool_version", "");
    if (j.contains("config"))
        for (auto it = j["config"].begin(); it != j["config"].end(); ++it)
            m.config.emplace_back(it.key(), it.value().get<std::string>());
    if (j.contains("stages"))
        for (const auto& s : j["stages"])
            m.stages_ms.emplace_back(s.value("stage", ""), s.value("wall_ms", 0.0));
    if (j.contains("cache")) {
        m.cache_hits = j["cache"].value("hits", 0ull);
        m.cache_misses = j["cache"].value("misses", 0ull);
    }
    m.precision_report = j.value("precision_report", "");
    if (j.contains("outputs"))
        for (const auto& o : j["outputs"])
            m.outputs.push_back({o.value("path", ""), parse_hex64(o.value("fnv1a64", "0"))});
    return m;
}

std::vector<std::string> verify_manifest(const std::filesystem::path& manifest_path) {
    RunManifest m = read_manifest(manifest_path);
    auto dir = manifest_path.parent_path();
    std::vector<std::string> bad;
    for (const auto& e : m.outputs) {
        auto p = dir / e.path;
        try {
            if (fnv1a64_file(p) != e.checksum) bad.push_back(e.path);
        } catch (const std::exception&) {
            bad.push_back(e.path);
        }
    }
    return bad;
}

} // namespace mobskew
