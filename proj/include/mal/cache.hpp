#pragma once
#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mal/homology.hpp"
#include "mal/vertex_set.hpp"

namespace mal {

// Persistent store of per-subset homology summaries, one JSON record per
// (complex hash, J). Writers go through a temp file + rename, so concurrent
// writers of the same record are safe and a torn write can never be read back.
// Records failing schema or checksum validation are treated as absent.
class HomologyCache {
public:
    static constexpr int schema_version = 1;

    explicit HomologyCache(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }

    const std::filesystem::path& directory() const { return dir_; }

    std::optional<HomologySummary> load(std::uint64_t complex_hash, VertexSet J) const {
        std::ifstream in(record_path(complex_hash, J));
        if (!in) {
            ++misses_;
            return std::nullopt;
        }
        nlohmann::ordered_json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception&) {
            ++misses_;
            return std::nullopt;
        }
        auto parsed = parse_record(doc, complex_hash, J);
        if (!parsed) {
            ++misses_;
            return std::nullopt;
        }
        ++hits_;
        return parsed;
    }

    void store(std::uint64_t complex_hash, VertexSet J, const HomologySummary& s) const {
        nlohmann::ordered_json doc;
        doc["schema"] = schema_version;
        doc["complex"] = hex(complex_hash);
        doc["subset"] = J.labels();
        doc["homology"] = groups_json(s.homology);
        doc["cohomology"] = groups_json(s.cohomology);
        doc["checksum"] = hex(payload_checksum(doc));
        const auto path = record_path(complex_hash, J);
        auto tmp = path;
        tmp += ".tmp" + std::to_string(::getpid());
        {
            std::ofstream out(tmp);
            out << doc.dump() << "\n";
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        if (ec) std::filesystem::remove(tmp, ec);
    }

    struct Stats {
        long files = 0;
        long long bytes = 0;
    };
    Stats stats() const {
        Stats s;
        if (!std::filesystem::exists(dir_)) return s;
        for (const auto& e : std::filesystem::directory_iterator(dir_)) {
            if (!e.is_regular_file() || e.path().extension() != ".json") continue;
            ++s.files;
            s.bytes += static_cast<long long>(e.file_size());
        }
        return s;
    }

    struct VerifyResult {
        long checked = 0;
        long corrupt = 0;
        std::vector<std::string> evicted;
    };
    // Re-validates every record; corrupt ones are evicted.
    VerifyResult verify() const {
        VerifyResult r;
        if (!std::filesystem::exists(dir_)) return r;
        for (const auto& e : std::filesystem::directory_iterator(dir_)) {
            if (!e.is_regular_file() || e.path().extension() != ".json") continue;
            ++r.checked;
            bool ok = false;
            std::ifstream in(e.path());
            nlohmann::ordered_json doc;
            try {
                in >> doc;
                ok = doc.contains("checksum") && doc.contains("schema") &&
                     doc["schema"] == schema_version;
                if (ok) {
                    nlohmann::ordered_json copy;
                    for (auto& [k, v] : doc.items())
                        if (k != "checksum") copy[k] = v;
                    ok = doc["checksum"] == hex(payload_checksum(copy));
                }
            } catch (const nlohmann::json::exception&) {
                ok = false;
            }
            if (!ok) {
                ++r.corrupt;
                r.evicted.push_back(e.path().filename().string());
                std::error_code ec;
                std::filesystem::remove(e.path(), ec);
            }
        }
        return r;
    }

    long clear() const {
        long n = 0;
        if (!std::filesystem::exists(dir_)) return n;
        for (const auto& e : std::filesystem::directory_iterator(dir_)) {
            if (!e.is_regular_file() || e.path().extension() != ".json") continue;
            std::error_code ec;
            if (std::filesystem::remove(e.path(), ec)) ++n;
        }
        return n;
    }

    long hits() const { return hits_.load(); }
    long misses() const { return misses_.load(); }

private:
    static std::string hex(std::uint64_t v) {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
        return buf;
    }

    std::filesystem::path record_path(std::uint64_t complex_hash, VertexSet J) const {
        return dir_ / (hex(complex_hash) + "-" + hex(J.raw()) + ".json");
    }

    static std::uint64_t payload_checksum(const nlohmann::ordered_json& doc) {
        nlohmann::ordered_json copy;
        for (auto& [k, v] : doc.items())
            if (k != "checksum") copy[k] = v;
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : copy.dump()) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    static nlohmann::ordered_json groups_json(const std::map<int, GroupSummary>& gs) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& [deg, g] : gs) {
            nlohmann::ordered_json e;
            e["degree"] = deg;
            e["rank"] = g.rank;
            auto t = nlohmann::ordered_json::array();
            for (const Int& d : g.torsion) t.push_back(d.str());
            e["torsion"] = t;
            arr.push_back(e);
        }
        return arr;
    }

    static std::optional<std::map<int, GroupSummary>> groups_from_json(
        const nlohmann::ordered_json& arr) {
        if (!arr.is_array()) return std::nullopt;
        std::map<int, GroupSummary> out;
        for (const auto& e : arr) {
            if (!e.contains("degree") || !e.contains("rank") || !e.contains("torsion"))
                return std::nullopt;
            GroupSummary g;
            g.rank = e["rank"].get<long>();
            for (const auto& t : e["torsion"]) g.torsion.push_back(Int(t.get<std::string>()));
            out[e["degree"].get<int>()] = g;
        }
        return out;
    }

    std::optional<HomologySummary> parse_record(const nlohmann::ordered_json& doc,
                                                std::uint64_t complex_hash, VertexSet J) const {
        if (!doc.contains("schema") || doc["schema"] != schema_version) return std::nullopt;
        if (!doc.contains("complex") || doc["complex"] != hex(complex_hash)) return std::nullopt;
        if (!doc.contains("subset") || doc["subset"] != nlohmann::ordered_json(J.labels()))
            return std::nullopt;
        if (!doc.contains("checksum") || !doc.contains("homology") || !doc.contains("cohomology"))
            return std::nullopt;
        nlohmann::ordered_json copy;
        for (auto& [k, v] : doc.items())
            if (k != "checksum") copy[k] = v;
        if (doc["checksum"] != hex(payload_checksum(copy))) return std::nullopt;
        auto hom = groups_from_json(doc["homology"]);
        auto coh = groups_from_json(doc["cohomology"]);
        if (!hom || !coh) return std::nullopt;
        HomologySummary s;
        s.homology = std::move(*hom);
        s.cohomology = std::move(*coh);
        return s;
    }

    std::filesystem::path dir_;
    mutable std::atomic<long> hits_{0}, misses_{0};
};

}  // namespace mal
