#pragma once

// Galois conjugacy classes of weight-2 newforms of level 2q^2 with the
// quadratic character of conductor q, as ingested coefficient data.

#include <complex>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "lnsieve/poly.hpp"

namespace lnsieve {

/// Coefficient data for a_p(f): the characteristic polynomial over Q of a_p
/// (monic, degree dim) and/or its dim complex embeddings with an absolute
/// error bound.
struct CoeffData {
    std::optional<IntPoly> charpoly;
    std::vector<std::complex<double>> embeddings;
    double err = 0.0;

    bool has_exact() const { return charpoly.has_value(); }
    bool has_numeric() const { return !embeddings.empty(); }
};

struct NewformClass {
    std::string label;
    long level = 0;
    long char_modulus = 0;
    long dim = 0;
    std::map<long, CoeffData> ap;

    const CoeffData& at(long p) const;
};

struct SpaceSummary {
    long q = 0;
    long total_dim = 0;
    long class_count = 0;
    /// class size -> multiplicity
    std::map<long, long> sizes;

    static SpaceSummary of(long q, long total_dim, const std::vector<NewformClass>& classes);
    bool consistent() const;
    std::string str() const;
    friend bool operator==(const SpaceSummary&, const SpaceSummary&) = default;
};

/// Newform data summaries for the four fields (q = 41 read as (8,4), see README).
SpaceSummary published_summary(long q);

struct NewformSpace {
    long q = 0;
    long level = 0;
    long total_dim = 0;
    std::vector<NewformClass> classes;

    SpaceSummary summary() const { return SpaceSummary::of(q, total_dim, classes); }
    const NewformClass* find(const std::string& label) const;
};

/// The splitting character: the Legendre symbol (p | q). Throws for p = q.
int epsilon(long p, long q);

/// Monic integer polynomial whose roots are the conjugates of t_{f,P}:
/// the charpoly of a_p for split p, the charpoly of a_p^2 + 2p for inert p.
/// Throws DataUnavailable when no exact data is stored at p.
IntPoly t_value_charpoly(const NewformClass& f, long p, long q);

/// Norm_{K_f/Q} prod_{a in A} (a - t_{f,P}), exactly from the charpoly when
/// present, else from the embeddings (throws PrecisionError unless the
/// accumulated error bound is below 0.5).
mpz_class product_norm(const NewformClass& f, long p, long q, const std::set<long>& A);
mpz_class product_norm_exact(const NewformClass& f, long p, long q, const std::set<long>& A);
mpz_class product_norm_numeric(const NewformClass& f, long p, long q, const std::set<long>& A);

// --- snapshot files ---------------------------------------------------------------

enum class SummaryCheck { warn, error, ignore };

struct SnapshotOptions {
    SummaryCheck summary_check = SummaryCheck::warn;
    /// Relative residual allowed when checking embeddings against charpolys.
    double embedding_tolerance = 1e-6;
};

struct LoadedSpace {
    NewformSpace space;
    std::vector<std::string> warnings;
};

LoadedSpace parse_snapshot(const nlohmann::json& doc, const SnapshotOptions& opts = {});
nlohmann::json to_json(const NewformSpace& space);

LoadedSpace read_snapshot(const std::filesystem::path& path, const SnapshotOptions& opts = {});
/// Atomic: writes a temporary file next to `path`, then renames.
void write_snapshot(const NewformSpace& space, const std::filesystem::path& path);

/// Writes `content` to `path` through a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Deligne bound |a_p| <= 2 sqrt(p) on every stored embedding. Returns the
/// violations as readable strings.
std::vector<std::string> ramanujan_violations(const NewformSpace& space, long p_max, double tol = 1e-6);

}  // namespace lnsieve
