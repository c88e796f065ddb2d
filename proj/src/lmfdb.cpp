#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "lnsieve/lmfdb.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <openssl/evp.h>

#include "lnsieve/errors.hpp"
#include "lnsieve/quadfield.hpp"

namespace lnsieve {

using nlohmann::json;

namespace {

bool covered_by_public_data(long q) { return q == 17 || q == 41; }

mpz_class coeff_from_json(const json& j) {
    if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<unsigned long long>()));
    if (j.is_string()) return mpz_class(j.get<std::string>());
    throw ValidationError("LMFDB: non-integer charpoly coefficient " + j.dump());
}

}  // namespace

LmfdbClient::LmfdbClient(ClientOptions opts) : opts_(std::move(opts)) {}

json LmfdbClient::get(const std::string& path_and_query) {
    httplib::Client cli(opts_.base_url);
    cli.set_connection_timeout(opts_.timeout_s);
    cli.set_read_timeout(opts_.timeout_s);
    cli.set_follow_location(true);
    std::string last_error;
    auto delay = opts_.backoff;
    for (int attempt = 0; attempt <= opts_.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(delay);
            delay *= 2;
        }
        const auto now = std::chrono::steady_clock::now();
        if (requests_ > 0 && now - last_ < opts_.min_interval)
            std::this_thread::sleep_for(opts_.min_interval - (now - last_));
        last_ = std::chrono::steady_clock::now();
        ++requests_;
        auto res = cli.Get(path_and_query);
        if (!res) {
            last_error = httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 500 || res->status == 429) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200)
            throw DataUnavailable("LMFDB " + path_and_query + ": HTTP " + std::to_string(res->status));
        try {
            return json::parse(res->body);
        } catch (const json::exception& e) {
            throw ValidationError("LMFDB " + path_and_query + ": malformed JSON: " + e.what());
        }
    }
    throw DataUnavailable("LMFDB " + opts_.base_url + path_and_query + " failed after " +
                          std::to_string(opts_.max_retries + 1) + " attempts: " + last_error);
}

namespace {

// Collects "data" over all pages.
json get_all(LmfdbClient& cli, std::string path) {
    json rows = json::array();
    for (int page = 0; page < 1000 && !path.empty(); ++page) {
        const json doc = cli.get(path);
        if (!doc.contains("data") || !doc["data"].is_array())
            throw ValidationError("LMFDB " + path + ": response has no 'data' array");
        for (const auto& r : doc["data"]) rows.push_back(r);
        path.clear();
        if (doc.contains("next") && doc["next"].is_string()) path = doc["next"].get<std::string>();
    }
    return rows;
}

}  // namespace

NewformSpace LmfdbClient::fetch_space(long q) {
    require_supported_q(q);
    const long level = 2 * q * q;
    NewformSpace sp;
    sp.q = q;
    sp.level = level;
    const json forms = get_all(*this, "/api/mf_newforms/?level=i" + std::to_string(level) +
                                          "&weight=i2&char_order=i2&_format=json&_limit=" +
                                          std::to_string(opts_.page_limit));
    for (const auto& row : forms) {
        if (row.value("char_conductor", 0L) != q) continue;
        NewformClass c;
        c.label = row.at("label").get<std::string>();
        c.dim = row.at("dim").get<long>();
        c.level = level;
        c.char_modulus = q;
        const long long code = row.at("hecke_orbit_code").get<long long>();
        const json polys = get_all(*this, "/api/mf_hecke_charpolys/?hecke_orbit_code=i" + std::to_string(code) +
                                              "&_format=json&_limit=" + std::to_string(opts_.page_limit));
        for (const auto& pr : polys) {
            const long p = pr.at("p").get<long>();
            if (p > opts_.p_max || p == 2 || p == q) continue;
            IntPoly C{1};
            for (const auto& fac : pr.at("charpoly_factorization")) {
                std::vector<mpz_class> coeffs;
                for (const auto& x : fac.at(0)) coeffs.push_back(coeff_from_json(x));
                const IntPoly F(std::move(coeffs));
                for (long e = fac.at(1).get<long>(); e > 0; --e) C = C * F;
            }
            if (C.degree() != c.dim || !C.is_monic())
                throw ValidationError("LMFDB: charpoly of a_" + std::to_string(p) + " for " + c.label +
                                      " has degree " + std::to_string(C.degree()) + ", expected " +
                                      std::to_string(c.dim));
            CoeffData d;
            d.charpoly = std::move(C);
            c.ap.emplace(p, std::move(d));
        }
        sp.total_dim += c.dim;
        sp.classes.push_back(std::move(c));
    }
    if (sp.classes.empty())
        throw DataUnavailable("LMFDB returned no newforms at level " + std::to_string(level) +
                              " with the quadratic character of conductor " + std::to_string(q));
    std::sort(sp.classes.begin(), sp.classes.end(), [](const auto& a, const auto& b) { return a.label < b.label; });
    return sp;
}

// --- cache ----------------------------------------------------------------------

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("LNSIEVE_CACHE_DIR"); env && *env) return env;
    if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "lnsieve";
    return std::filesystem::temp_directory_path() / "lnsieve-cache";
}

std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("LNSIEVE_DATA_DIR"); env && *env) return env;
#ifdef LNSIEVE_DATA_DIR
    return LNSIEVE_DATA_DIR;
#else
    return "data";
#endif
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

SpaceCache::SpaceCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path SpaceCache::entry_path(long q, long p_max) const {
    return dir_ / ("space_L" + std::to_string(2 * q * q) + "_chi" + std::to_string(q) + "_p" + std::to_string(p_max) + ".json");
}

std::optional<LoadedSpace> SpaceCache::load(long q, long p_max, const SnapshotOptions& opts) const {
    std::ifstream in(entry_path(q, p_max));
    if (!in) return std::nullopt;
    json doc;
    try {
        in >> doc;
        const std::string payload = doc.at("payload").get<std::string>();
        if (sha256_hex(payload) != doc.at("sha256").get<std::string>()) return std::nullopt;
        return parse_snapshot(json::parse(payload), opts);
    } catch (const json::exception&) {
        return std::nullopt;
    } catch (const ValidationError&) {
        return std::nullopt;
    }
}

namespace {

class FileLock {
public:
    explicit FileLock(const std::filesystem::path& path) {
        fd_ = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
        if (fd_ < 0) throw Error("cannot open lock file " + path.string());
        if (::flock(fd_, LOCK_EX) != 0) {
            ::close(fd_);
            throw Error("cannot lock " + path.string());
        }
    }
    ~FileLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_ = -1;
};

}  // namespace

void SpaceCache::store(const NewformSpace& space, long p_max) const {
    std::filesystem::create_directories(dir_);
    FileLock lock(dir_ / ".lock");
    const std::string payload = to_json(space).dump();
    const json entry{{"level", space.level},
                     {"char_conductor", space.q},
                     {"p_max", p_max},
                     {"sha256", sha256_hex(payload)},
                     {"payload", payload}};
    write_file_atomic(entry_path(space.q, p_max), entry.dump() + "\n");
}

// --- acquisition ----------------------------------------------------------------

AcquiredSpace acquire_space(const AcquireOptions& opts) {
    require_supported_q(opts.q);
    auto finish = [&](LoadedSpace&& l, const char* source) {
        if (l.space.q != opts.q)
            throw ValidationError("data is for q=" + std::to_string(l.space.q) + ", requested q=" + std::to_string(opts.q));
        return AcquiredSpace{std::move(l.space), std::move(l.warnings), source};
    };
    if (opts.snapshot) return finish(read_snapshot(*opts.snapshot, opts.snapshot_opts), "snapshot");

    const SpaceCache cache(opts.cache_dir ? *opts.cache_dir : default_cache_dir());
    if (auto hit = cache.load(opts.q, opts.client.p_max, opts.snapshot_opts)) return finish(std::move(*hit), "cache");

    const auto bundled = (opts.data_dir ? *opts.data_dir : default_data_dir()) / ("newforms_q" + std::to_string(opts.q) + ".json");
    if (std::filesystem::exists(bundled)) {
        AcquiredSpace a = finish(read_snapshot(bundled, opts.snapshot_opts), "bundled");
        cache.store(a.space, opts.client.p_max);
        return a;
    }
    if (!covered_by_public_data(opts.q))
        throw DataUnavailable("coverage unavailable, provide snapshot: level " + std::to_string(2 * opts.q * opts.q) +
                              " (q=" + std::to_string(opts.q) +
                              ") is not covered by the public database; pass --snapshot PATH");
    if (opts.offline)
        throw DataUnavailable("offline mode: no snapshot or cache entry for q=" + std::to_string(opts.q) + " in " +
                              cache.dir().string());
    LmfdbClient client(opts.client);
    NewformSpace sp = client.fetch_space(opts.q);
    // Round-trip through the validator so network data gets the same checks.
    AcquiredSpace a = finish(parse_snapshot(to_json(sp), opts.snapshot_opts), "network");
    cache.store(a.space, opts.client.p_max);
    return a;
}

}  // namespace lnsieve
