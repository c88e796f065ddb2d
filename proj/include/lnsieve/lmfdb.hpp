#pragma once

// Getting newform data: user snapshot, disk cache, bundled data, or the
// public LMFDB REST API, in that order.

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "lnsieve/newform.hpp"

namespace lnsieve {

struct ClientOptions {
    std::string base_url = "https://www.lmfdb.org";
    int max_retries = 3;
    std::chrono::milliseconds min_interval{500};
    std::chrono::milliseconds backoff{1000};
    int timeout_s = 30;
    long p_max = 31;
    long page_limit = 100;
};

/// Minimal client for the two collections used here:
///   /api/mf_newforms/        classes by level, weight, character order
///   /api/mf_hecke_charpolys/ charpoly factorizations of a_p per orbit
/// Paginates through "next" links; retries 5xx and transport errors with
/// exponential backoff; spaces requests by min_interval.
class LmfdbClient {
public:
    explicit LmfdbClient(ClientOptions opts = {});

    /// Raw JSON of one GET; `path_and_query` starts with '/'.
    nlohmann::json get(const std::string& path_and_query);

    /// Builds the space at level 2q^2 with the quadratic character of
    /// conductor q, charpolys of a_p for p <= p_max, p not dividing 2q.
    NewformSpace fetch_space(long q);

    long requests_made() const { return requests_; }

private:
    ClientOptions opts_;
    std::chrono::steady_clock::time_point last_{};
    long requests_ = 0;
};

/// $LNSIEVE_CACHE_DIR, else $HOME/.cache/lnsieve.
std::filesystem::path default_cache_dir();
/// $LNSIEVE_DATA_DIR, else the data/ directory of the source tree.
std::filesystem::path default_data_dir();

std::string sha256_hex(const std::string& bytes);

/// Disk cache of validated spaces keyed by (level, character, p_max). Each
/// entry records the SHA-256 of its payload; a mismatch is a miss. Writers
/// take an exclusive lock and publish with rename, so a reader never sees a
/// partial entry.
class SpaceCache {
public:
    explicit SpaceCache(std::filesystem::path dir);

    std::filesystem::path entry_path(long q, long p_max) const;
    std::optional<LoadedSpace> load(long q, long p_max, const SnapshotOptions& opts = {}) const;
    void store(const NewformSpace& space, long p_max) const;

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

struct AcquireOptions {
    long q = 0;
    std::optional<std::filesystem::path> snapshot;
    bool offline = false;
    std::optional<std::filesystem::path> cache_dir;
    std::optional<std::filesystem::path> data_dir;
    SnapshotOptions snapshot_opts;
    ClientOptions client;
};

struct AcquiredSpace {
    NewformSpace space;
    std::vector<std::string> warnings;
    /// "snapshot", "cache", "bundled" or "network".
    std::string source;
};

/// Levels 2 * 89^2 and 2 * 97^2 are outside public coverage: for those q the
/// network is not tried and, lacking a snapshot or cache entry, this throws
/// DataUnavailable with a "coverage unavailable, provide snapshot" message.
AcquiredSpace acquire_space(const AcquireOptions& opts);

}  // namespace lnsieve
