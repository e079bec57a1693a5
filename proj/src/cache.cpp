#include "symsplit/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "symsplit/errors.hpp"
#include "symsplit/json_io.hpp"
#include "symsplit/version.hpp"

namespace symsplit {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        fail(ErrorCode::Inconsistent, "SHA-256 computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

const char* cache_status_name(CacheStatus s)
{
    switch (s) {
    case CacheStatus::Off: return "off";
    case CacheStatus::Missing: return "miss";
    case CacheStatus::Loaded: return "hit";
    case CacheStatus::Corrupt: return "corrupt";
    }
    return "?";
}

std::string FieldCache::key(const mpz_class& m, const Budgets& b)
{
    return sha256_hex(m.get_str() + "|" + kToolVersion + "|" + b.fingerprint());
}

fs::path FieldCache::path_for(const mpz_class& m, const Budgets& b) const
{
    std::string k = key(m, b);
    return dir_ / "v1" / k.substr(0, 2) / (k + ".json");
}

CacheStatus FieldCache::load(FieldContext& F, std::string& warning) const
{
    fs::path path = path_for(F.m(), F.budgets());
    std::error_code ec;
    if (!fs::exists(path, ec)) return CacheStatus::Missing;
    try {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        Json j = Json::parse(os.str());
        if (j.at("key").get<std::string>() != key(F.m(), F.budgets()) || j.at("m").get<std::string>() != F.m().get_str() ||
            j.at("tool_version").get<std::string>() != kToolVersion ||
            j.at("budgets").get<std::string>() != F.budgets().fingerprint())
            throw std::runtime_error("header does not match the requested field");
        const Json& payload = j.at("payload");
        if (sha256_hex(payload.dump()) != j.at("checksum").get<std::string>())
            throw std::runtime_error("checksum mismatch");
        F.set_units(units_from_json(*F.order(), payload.at("units")));
        if (!payload.at("class_group").is_null()) F.set_class_group(class_group_from_json(payload.at("class_group")));
        return CacheStatus::Loaded;
    } catch (const std::exception& e) {
        warning = "ignoring cache entry " + path.string() + ": " + e.what();
        return CacheStatus::Corrupt;
    }
}

bool FieldCache::store(FieldContext& F, std::string& warning) const
{
    if (!F.has_units()) return true;
    Json payload;
    payload["units"] = to_json(F.units());
    payload["class_group"] = F.has_class_group() ? to_json(F.class_group()) : Json(nullptr);
    Json j;
    j["schema"] = kSchemaVersion;
    j["key"] = key(F.m(), F.budgets());
    j["m"] = F.m().get_str();
    j["tool_version"] = kToolVersion;
    j["budgets"] = F.budgets().fingerprint();
    j["payload"] = payload;
    j["checksum"] = sha256_hex(payload.dump());

    fs::path path = path_for(F.m(), F.budgets());
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << j.dump() << '\n';
        if (!out) {
            warning = "cannot write cache entry " + path.string();
            return false;
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        warning = "cannot write cache entry " + path.string() + ": " + ec.message();
        return false;
    }
    return true;
}

fs::path default_cache_dir()
{
    if (const char* d = std::getenv("SYMSPLIT_CACHE_DIR"); d && *d) return d;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "symsplit";
    if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "symsplit";
    return fs::temp_directory_path() / "symsplit-cache";
}

} // namespace symsplit
