#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>

#include "lnsieve/errors.hpp"
#include "lnsieve/lmfdb.hpp"

using namespace lnsieve;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    const fs::path d = fs::temp_directory_path() / ("lnsieve_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

// A fake of the two collections: two pages of newforms, one orbit whose
// charpoly request fails once with 503.
struct MockLmfdb {
    httplib::Server srv;
    std::thread th;
    int port = 0;
    std::atomic<int> hits{0};
    std::atomic<int> failures_left{1};
    bool always_fail = false;

    MockLmfdb() {
        srv.Get("/api/mf_newforms/", [this](const httplib::Request& req, httplib::Response& res) {
            ++hits;
            json doc;
            if (!req.has_param("_offset")) {
                doc["data"] = {{{"label", "578.2.a.x"}, {"dim", 2}, {"char_conductor", 17}, {"hecke_orbit_code", 1}},
                               {{"label", "578.2.b.z"}, {"dim", 4}, {"char_conductor", 1}, {"hecke_orbit_code", 9}}};
                doc["next"] = "/api/mf_newforms/?level=i578&_offset=2";
            } else {
                doc["data"] = {{{"label", "578.2.a.y"}, {"dim", 1}, {"char_conductor", 17}, {"hecke_orbit_code", 2}}};
            }
            res.set_content(doc.dump(), "application/json");
        });
        srv.Get("/api/mf_hecke_charpolys/", [this](const httplib::Request& req, httplib::Response& res) {
            ++hits;
            if (always_fail || failures_left.fetch_sub(1) > 0) {
                res.status = 503;
                return;
            }
            json doc;
            if (req.get_param_value("hecke_orbit_code") == "i1") {
                doc["data"] = {{{"p", 3}, {"charpoly_factorization", {{{-2, 0, 1}, 1}}}},
                               {{"p", 5}, {"charpoly_factorization", {{{1, 1}, 2}}}},
                               {{"p", 17}, {"charpoly_factorization", {{{0, 1}, 2}}}},
                               {{"p", 97}, {"charpoly_factorization", {{{0, 1}, 2}}}}};
            } else {
                doc["data"] = {{{"p", 3}, {"charpoly_factorization", {{{"2", 1}, 1}}}}};
            }
            res.set_content(doc.dump(), "application/json");
        });
        srv.Get("/missing", [this](const httplib::Request&, httplib::Response& res) {
            ++hits;
            res.status = 404;
        });
        port = srv.bind_to_any_port("127.0.0.1");
        th = std::thread([this] { srv.listen_after_bind(); });
        srv.wait_until_ready();
    }
    ~MockLmfdb() {
        srv.stop();
        th.join();
    }

    ClientOptions client() const {
        ClientOptions o;
        o.base_url = "http://127.0.0.1:" + std::to_string(port);
        o.min_interval = std::chrono::milliseconds(1);
        o.backoff = std::chrono::milliseconds(1);
        o.timeout_s = 5;
        return o;
    }
};

}  // namespace

TEST_CASE("sha256 test vectors") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("client paginates, retries and filters") {
    MockLmfdb mock;
    LmfdbClient cli(mock.client());
    const NewformSpace sp = cli.fetch_space(17);
    REQUIRE(sp.classes.size() == 2);
    CHECK(sp.level == 578);
    CHECK(sp.total_dim == 3);
    const NewformClass* x = sp.find("578.2.a.x");
    REQUIRE(x);
    CHECK(x->ap.size() == 2);  // p = 17 and p > p_max dropped
    CHECK(*x->at(3).charpoly == IntPoly{-2, 0, 1});
    CHECK(*x->at(5).charpoly == IntPoly{1, 2, 1});
    CHECK(*sp.find("578.2.a.y")->at(3).charpoly == IntPoly{2, 1});
    CHECK(sp.find("578.2.b.z") == nullptr);
    CHECK(cli.requests_made() == 5);  // 2 pages + 503 + 2 charpoly pages
}

TEST_CASE("client gives up") {
    MockLmfdb mock;
    mock.always_fail = true;
    ClientOptions o = mock.client();
    o.max_retries = 2;
    LmfdbClient cli(o);
    CHECK_THROWS_AS(cli.get("/api/mf_hecke_charpolys/?hecke_orbit_code=i1"), DataUnavailable);
    CHECK(cli.requests_made() == 3);
    LmfdbClient cli2(mock.client());
    const int before = mock.hits;
    CHECK_THROWS_AS(cli2.get("/missing"), DataUnavailable);
    CHECK(mock.hits == before + 1);

    ClientOptions dead;
    dead.base_url = "http://127.0.0.1:1";
    dead.max_retries = 1;
    dead.backoff = std::chrono::milliseconds(1);
    dead.timeout_s = 1;
    LmfdbClient cli3(dead);
    CHECK_THROWS_AS(cli3.get("/api/mf_newforms/"), DataUnavailable);
}

TEST_CASE("acquisition: network, then cache; corruption is a miss") {
    MockLmfdb mock;
    const fs::path cache = fresh_dir("cache"), empty = fresh_dir("empty");
    AcquireOptions a;
    a.q = 17;
    a.cache_dir = cache;
    a.data_dir = empty;
    a.client = mock.client();
    const AcquiredSpace first = acquire_space(a);
    CHECK(first.source == "network");
    CHECK(first.warnings.size() == 1);  // summary differs from the published one
    const int hits = mock.hits;
    const AcquiredSpace second = acquire_space(a);
    CHECK(second.source == "cache");
    CHECK(mock.hits == hits);
    CHECK(to_json(second.space) == to_json(first.space));

    const fs::path entry = SpaceCache(cache).entry_path(17, a.client.p_max);
    CHECK(entry.filename() == "space_L578_chi17_p31.json");
    json doc;
    std::ifstream(entry) >> doc;
    std::string payload = doc["payload"];
    payload[payload.find("578.2.a.x")] = '9';
    doc["payload"] = payload;
    std::ofstream(entry) << doc.dump();
    CHECK_FALSE(SpaceCache(cache).load(17, a.client.p_max).has_value());
    a.offline = true;
    CHECK_THROWS_AS(acquire_space(a), DataUnavailable);
    a.offline = false;
    CHECK(acquire_space(a).source == "network");
    std::ofstream(entry) << "{ truncated";
    CHECK_FALSE(SpaceCache(cache).load(17, a.client.p_max).has_value());
    fs::remove_all(cache);
    fs::remove_all(empty);
}

TEST_CASE("acquisition: bundled data populates the cache") {
    const fs::path cache = fresh_dir("bundled");
    AcquireOptions a;
    a.q = 41;
    a.cache_dir = cache;
    a.data_dir = LNSIEVE_TEST_DATA_DIR;
    a.offline = true;
    CHECK(acquire_space(a).source == "bundled");
    const AcquiredSpace b = acquire_space(a);
    CHECK(b.source == "cache");
    CHECK(b.space.classes.size() == 18);
    fs::remove_all(cache);
}

TEST_CASE("acquisition: uncovered levels need a snapshot") {
    MockLmfdb mock;
    const fs::path cache = fresh_dir("cov"), empty = fresh_dir("cov_empty");
    for (long q : {89L, 97L}) {
        AcquireOptions a;
        a.q = q;
        a.cache_dir = cache;
        a.data_dir = empty;
        a.client = mock.client();
        try {
            acquire_space(a);
            FAIL("expected DataUnavailable");
        } catch (const DataUnavailable& e) {
            CHECK(std::string(e.what()).find("coverage unavailable, provide snapshot") != std::string::npos);
        }
    }
    CHECK(mock.hits == 0);
    AcquireOptions bad;
    bad.q = 13;
    CHECK_THROWS_AS(acquire_space(bad), UnsupportedField);
    AcquireOptions wrong;
    wrong.q = 41;
    wrong.snapshot = fs::path(LNSIEVE_TEST_DATA_DIR) / "newforms_q17.json";
    CHECK_THROWS_AS(acquire_space(wrong), ValidationError);
    fs::remove_all(cache);
    fs::remove_all(empty);
}

TEST_CASE("concurrent cache writers leave a valid entry") {
    const fs::path cache = fresh_dir("race");
    const NewformSpace sp = read_snapshot(fs::path(LNSIEVE_TEST_DATA_DIR) / "newforms_q17.json").space;
    std::vector<std::thread> ts;
    for (int i = 0; i < 8; ++i) ts.emplace_back([&] { SpaceCache(cache).store(sp, 31); });
    for (auto& t : ts) t.join();
    const auto hit = SpaceCache(cache).load(17, 31);
    REQUIRE(hit.has_value());
    CHECK(to_json(hit->space) == to_json(sp));
    for (const auto& e : fs::directory_iterator(cache))
        CHECK((e.path().filename() == ".lock" || e.path().extension() == ".json"));
    fs::remove_all(cache);
}
