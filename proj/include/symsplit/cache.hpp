#pragma once

// On-disk cache of unit groups and class groups.
//
// An entry is addressed by SHA-256(m | tool version | budget fingerprint) and
// lives at <dir>/v1/<first two hex digits>/<key>.json. The file carries the
// payload together with the SHA-256 of its canonical serialization; a file
// that fails to parse or to match its checksum is ignored with a warning and
// overwritten by the recomputed data.

#include <filesystem>
#include <string>

#include "symsplit/algebra.hpp"

namespace symsplit {

std::string sha256_hex(const std::string& data);

enum class CacheStatus { Off, Missing, Loaded, Corrupt };
const char* cache_status_name(CacheStatus s);

class FieldCache {
public:
    explicit FieldCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    static std::string key(const mpz_class& m, const Budgets& b);
    std::filesystem::path path_for(const mpz_class& m, const Budgets& b) const;

    // Installs cached units and class group into F. On Corrupt, `warning`
    // explains why the entry was rejected.
    CacheStatus load(FieldContext& F, std::string& warning) const;
    // Writes whatever F has computed; returns false (with a warning) when
    // the directory is not writable.
    bool store(FieldContext& F, std::string& warning) const;

private:
    std::filesystem::path dir_;
};

// $SYMSPLIT_CACHE_DIR, else $XDG_CACHE_HOME/symsplit, else $HOME/.cache/symsplit.
std::filesystem::path default_cache_dir();

} // namespace symsplit
