#include "lnsieve/outcome.hpp"

#include <fstream>

#include "lnsieve/errors.hpp"

namespace lnsieve {

using nlohmann::json;

json load_expected_outcomes(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataUnavailable("cannot open expected-outcome fixture " + path);
    try {
        json doc = json::parse(in);
        if (doc.value("version", 0) != 1) throw ValidationError("unsupported fixture version in " + path);
        return doc;
    } catch (const json::exception& e) {
        throw ValidationError("malformed fixture " + path + ": " + e.what());
    }
}

Grade grade_outcome(const json& fixture, const SieveReport& sieve, const MultiFreyReport* multi,
                    const ObstructionReport* obstruction) {
    Grade g;
    auto fail = [&](const std::string& m) {
        g.ok = false;
        g.mismatches.push_back(m);
    };
    const std::string key = std::to_string(sieve.q);
    if (!fixture.contains("outcomes") || !fixture["outcomes"].contains(key)) {
        fail("no expected outcome for q=" + key);
        return g;
    }
    const json& e = fixture["outcomes"][key];
    auto expect_count = [&](const char* field, long actual) {
        if (e.contains(field) && e[field].get<long>() != actual)
            fail(std::string(field) + ": expected " + std::to_string(e[field].get<long>()) + ", got " +
                 std::to_string(actual));
    };
    expect_count("classes", static_cast<long>(sieve.records.size()));
    expect_count("eliminated", sieve.count(EliminationStatus::eliminated));
    expect_count("survives_zero", sieve.count(EliminationStatus::survives_zero));
    expect_count("survives_large", sieve.count(EliminationStatus::survives_large));
    if (e.contains("max_eliminating_factor_below")) {
        const long bound = e["max_eliminating_factor_below"].get<long>();
        for (const auto& r : sieve.records)
            if (r.status == EliminationStatus::eliminated && r.largest_small_factor() >= bound)
                fail(r.label + " eliminated with prime factor " + std::to_string(r.largest_small_factor()) +
                     " >= " + std::to_string(bound));
    }
    if (e.value("multi_frey_contradiction", false) && (!multi || !multi->contradiction))
        fail("multi-Frey step did not reach a contradiction");
    if (e.value("obstruction", false) && (!obstruction || !obstruction->ok()))
        fail("obstructing class not identified or does not match the known solution");
    return g;
}

}  // namespace lnsieve
