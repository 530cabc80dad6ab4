#pragma once

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "wg4/claims.hpp"
#include "wg4/errors.hpp"

#include "json.hpp"

namespace wg4 {

inline std::string sha256_hex(const void* data, std::size_t len) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int dlen = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data, len) != 1 ||
        EVP_DigestFinal_ex(ctx, digest, &dlen) != 1) {
        EVP_MD_CTX_free(ctx);
        throw resource_error("sha256_hex: digest computation failed");
    }
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * dlen);
    for (unsigned i = 0; i < dlen; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

inline std::string sha256_hex(const std::string& s) { return sha256_hex(s.data(), s.size()); }

inline std::string sha256_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw resource_error("sha256_file: cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return sha256_hex(bytes);
}

// Write-then-rename so readers never observe a half-written file.
inline void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw resource_error("write_file_atomic: cannot open " + tmp);
        f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!f) throw resource_error("write_file_atomic: short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw resource_error("write_file_atomic: rename to " + path + " failed");
}

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::string tool_version = "wg4 1.0.0";
    std::string started;
    std::string finished;
    std::string results_digest;
    std::vector<ClaimEntry> discrepancies;

    static std::string now_iso8601() {
        auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::tm tm{};
        gmtime_r(&t, &tm);
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        return buf;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["command"] = command;
        j["parameters"] = parameters;
        j["tool_version"] = tool_version;
        j["started"] = started;
        j["finished"] = finished;
        j["results_digest"] = results_digest;
        j["discrepancies"] = nlohmann::json::array();
        for (const auto& c : discrepancies) {
            j["discrepancies"].push_back({{"claim_id", c.claim_id},
                                          {"location", c.location},
                                          {"stated", c.stated},
                                          {"computed", c.computed},
                                          {"verdict", c.verdict}});
        }
        return j;
    }

    void write(const std::string& path) const { write_file_atomic(path, to_json().dump(2) + "\n"); }
};

}  // namespace wg4
