#pragma once

// Field invariants from a JSON file or a remote number-field database.
// Remote answers are cached on disk; a cached entry is never refetched.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include <httplib.h>
#include <json.hpp>

#include "orbcount/bigint.hpp"
#include "orbcount/errors.hpp"
#include "orbcount/invariants.hpp"

namespace orbcount {

inline constexpr const char* default_remote_template =
    "https://www.lmfdb.org/api/nf_fields/?degree={degree}&disc_abs={disc}&_format=json";

struct FetchOptions {
    std::string url_template = default_remote_template;
    std::filesystem::path cache_dir;  // empty: no cache
    double timeout_seconds = 10;
};

/// ORBCOUNT_REMOTE_URL, ORBCOUNT_CACHE_DIR, ORBCOUNT_TIMEOUT.
inline FetchOptions fetch_options_from_env() {
    FetchOptions o;
    if (const char* u = std::getenv("ORBCOUNT_REMOTE_URL"); u && *u) o.url_template = u;
    if (const char* c = std::getenv("ORBCOUNT_CACHE_DIR"); c && *c) o.cache_dir = c;
    if (const char* t = std::getenv("ORBCOUNT_TIMEOUT"); t && *t) o.timeout_seconds = std::stod(t);
    return o;
}

namespace detail {

inline std::string excerpt(const std::string& s, std::size_t n = 200) {
    return s.size() <= n ? s : s.substr(0, n) + "...";
}

inline BigInt json_bigint(const nlohmann::json& j, const std::string& what) {
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    if (j.is_number_unsigned()) return BigInt(j.get<unsigned long long>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        try {
            return BigInt(s);
        } catch (const std::exception&) {
        }
    }
    throw ParseError("field '" + what + "' is not an integer: " + excerpt(j.dump()));
}

inline double json_real(const nlohmann::json& j, const std::string& what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        try {
            return std::stod(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw ParseError("field '" + what + "' is not a number: " + excerpt(j.dump()));
}

inline std::string replace_all(std::string s, const std::string& key, const std::string& value) {
    for (std::size_t pos = s.find(key); pos != std::string::npos; pos = s.find(key, pos + value.size()))
        s.replace(pos, key.size(), value);
    return s;
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

/// {"disc": ..., "h": ..., "R": ...}; "hR" may replace h and R, "degree" is optional.
inline FieldInvariants invariants_from_json(const nlohmann::json& j, InvariantSource source) {
    if (!j.is_object()) throw ParseError("invariants must be a JSON object: " + detail::excerpt(j.dump()));
    if (!j.contains("disc")) throw ParseError("invariants lack 'disc': " + detail::excerpt(j.dump()));
    FieldInvariants inv;
    inv.source = source;
    inv.field_discriminant = detail::json_bigint(j.at("disc"), "disc");
    if (inv.field_discriminant == 0) throw ParseError("discriminant must be nonzero");
    if (j.contains("degree")) inv.degree = static_cast<int>(detail::json_bigint(j.at("degree"), "degree"));
    if (j.contains("h")) inv.class_number = detail::json_bigint(j.at("h"), "h");
    if (j.contains("R")) inv.regulator = detail::json_real(j.at("R"), "R");
    if (inv.class_number && inv.regulator) {
        inv.hr_product = inv.class_number->convert_to<double>() * *inv.regulator;
    } else if (j.contains("hR")) {
        inv.hr_product = detail::json_real(j.at("hR"), "hR");
    } else {
        throw ParseError("invariants need both 'h' and 'R', or 'hR': " + detail::excerpt(j.dump()));
    }
    if (!(inv.hr_product > 0)) throw ParseError("hR must be positive");
    return inv;
}

inline FieldInvariants load_invariants_file(const std::filesystem::path& path) {
    const std::string text = detail::read_text(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what() + " in " + detail::excerpt(text));
    }
    return invariants_from_json(j, InvariantSource::file);
}

namespace detail {

inline std::filesystem::path cache_path(const FetchOptions& opt, const BigInt& disc, int degree) {
    return opt.cache_dir / ("nf_" + std::to_string(degree) + "_" + disc.str() + ".json");
}

/// Extracts class number and regulator from a database reply.
inline FieldInvariants parse_remote_reply(const std::string& body, const BigInt& disc, int degree) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error&) {
        throw ParseError("remote reply is not JSON: " + excerpt(body));
    }
    const nlohmann::json* rec = &j;
    if (j.is_object() && j.contains("data")) {
        const auto& data = j.at("data");
        if (!data.is_array() || data.empty()) throw ParseError("remote reply has no field record: " + excerpt(body));
        rec = &data.at(0);
    }
    if (!rec->is_object() || !rec->contains("class_number") || !rec->contains("regulator"))
        throw ParseError("remote record lacks class_number/regulator: " + excerpt(rec->dump()));
    FieldInvariants inv;
    inv.source = InvariantSource::remote;
    inv.field_discriminant = disc;
    inv.degree = degree;
    inv.class_number = json_bigint(rec->at("class_number"), "class_number");
    inv.regulator = json_real(rec->at("regulator"), "regulator");
    inv.hr_product = inv.class_number->convert_to<double>() * *inv.regulator;
    return inv;
}

inline nlohmann::json cache_record(const FieldInvariants& inv) {
    nlohmann::json j;
    j["disc"] = inv.field_discriminant.str();
    j["degree"] = inv.degree;
    j["h"] = inv.class_number->str();
    j["R"] = *inv.regulator;
    return j;
}

}  // namespace detail

/// HTTP GET against the configured template ({degree}, {disc} substituted).
inline FieldInvariants fetch_invariants_remote(const BigInt& disc, int degree, const FetchOptions& opt) {
    if (!opt.cache_dir.empty()) {
        const auto path = detail::cache_path(opt, disc, degree);
        if (std::filesystem::exists(path)) {
            auto inv = load_invariants_file(path);
            inv.source = InvariantSource::remote;
            inv.degree = degree;
            return inv;
        }
    }
    std::string url = detail::replace_all(opt.url_template, "{degree}", std::to_string(degree));
    url = detail::replace_all(url, "{disc}", disc.str());
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ArgumentError("remote URL lacks a scheme: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    const std::string origin = url.substr(0, path_start);
    const std::string target = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client cli(origin);
    if (!cli.is_valid()) throw NetworkError("unsupported remote endpoint " + origin);
    const auto timeout = std::chrono::duration<double>(opt.timeout_seconds);
    cli.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    cli.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    cli.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    auto res = cli.Get(target);
    if (!res) throw NetworkError("GET " + url + " failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw NetworkError("GET " + url + " returned HTTP " + std::to_string(res->status) + ": " + detail::excerpt(res->body));
    FieldInvariants inv = detail::parse_remote_reply(res->body, disc, degree);

    if (!opt.cache_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(opt.cache_dir, ec);
        const auto path = detail::cache_path(opt, disc, degree);
        const auto tmp = path.string() + ".tmp" + std::to_string(::getpid());
        {
            std::ofstream out(tmp);
            out << detail::cache_record(inv).dump() << "\n";
        }
        std::filesystem::rename(tmp, path, ec);
        if (ec) throw IoError("cannot write cache entry " + path.string() + ": " + ec.message());
    }
    return inv;
}

}  // namespace orbcount
