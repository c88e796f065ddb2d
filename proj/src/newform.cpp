#include "lnsieve/newform.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "lnsieve/errors.hpp"
#include "lnsieve/quadfield.hpp"

namespace lnsieve {

using nlohmann::json;

const CoeffData& NewformClass::at(long p) const {
    auto it = ap.find(p);
    if (it == ap.end())
        throw DataUnavailable("no coefficient data for a_" + std::to_string(p) + " of " + label);
    return it->second;
}

SpaceSummary SpaceSummary::of(long q, long total_dim, const std::vector<NewformClass>& classes) {
    SpaceSummary s;
    s.q = q;
    s.total_dim = total_dim;
    s.class_count = static_cast<long>(classes.size());
    for (const auto& c : classes) ++s.sizes[c.dim];
    return s;
}

bool SpaceSummary::consistent() const {
    long dim = 0, count = 0;
    for (const auto& [size, mult] : sizes) {
        dim += size * mult;
        count += mult;
    }
    return dim == total_dim && count == class_count;
}

std::string SpaceSummary::str() const {
    std::ostringstream os;
    os << "q=" << q << " dim " << total_dim << ", " << class_count << " classes:";
    for (const auto& [size, mult] : sizes) os << " (" << size << "," << mult << ")";
    return os.str();
}

SpaceSummary published_summary(long q) {
    SpaceSummary s;
    s.q = q;
    switch (q) {
    case 17:
        s.total_dim = 22;
        s.class_count = 6;
        s.sizes = {{2, 3}, {4, 1}, {6, 2}};
        break;
    case 41:
        s.total_dim = 136;
        s.class_count = 18;
        // Printed as "(4,8)"; only (8,4) is consistent with 18 classes.
        s.sizes = {{2, 4}, {4, 5}, {6, 2}, {8, 4}, {16, 1}, {24, 2}};
        break;
    case 89:
        s.total_dim = 652;
        s.class_count = 26;
        s.sizes = {{2, 4},  {4, 2},  {6, 4},  {8, 3},  {12, 2}, {24, 3},
                   {30, 1}, {40, 2}, {50, 1}, {60, 1}, {80, 1}, {96, 2}};
        break;
    case 97:
        s.total_dim = 774;
        s.class_count = 29;
        s.sizes = {{2, 4},  {4, 3},  {6, 3},  {8, 4},  {12, 3}, {20, 3},
                   {24, 1}, {32, 3}, {40, 1}, {48, 1}, {64, 1}, {168, 2}};
        break;
    default: throw UnsupportedField(q);
    }
    return s;
}

const NewformClass* NewformSpace::find(const std::string& label) const {
    for (const auto& c : classes)
        if (c.label == label) return &c;
    return nullptr;
}

int epsilon(long p, long q) {
    if (p % q == 0) throw DomainError("epsilon(p, q) is undefined for p = q");
    return mod_pow(p, (q - 1) / 2, q) == 1 ? 1 : -1;
}

IntPoly t_value_charpoly(const NewformClass& f, long p, long q) {
    const CoeffData& d = f.at(p);
    if (!d.has_exact())
        throw DataUnavailable("only numeric data for a_" + std::to_string(p) + " of " + f.label);
    if (splitting(p, q) == SplitKind::split) return *d.charpoly;
    return inert_t_charpoly(*d.charpoly, p);
}

mpz_class product_norm_exact(const NewformClass& f, long p, long q, const std::set<long>& A) {
    const IntPoly T = t_value_charpoly(f, p, q);
    mpz_class prod = 1;
    // Norm(a - t) = prod_i (a - t_i) = T(a) for monic T.
    for (long a : A) prod *= T.eval(a);
    return prod;
}

mpz_class product_norm_numeric(const NewformClass& f, long p, long q, const std::set<long>& A) {
    const CoeffData& d = f.at(p);
    if (!d.has_numeric())
        throw DataUnavailable("no embeddings for a_" + std::to_string(p) + " of " + f.label);
    if (static_cast<long>(d.embeddings.size()) != f.dim)
        throw ValidationError(f.label + ": expected " + std::to_string(f.dim) + " embeddings");
    const bool split = splitting(p, q) == SplitKind::split;
    using C = std::complex<long double>;
    C prod = 1;
    long double upper = 1;   // prod (|z_k| + e_k)
    long double approx = 1;  // prod |z_k|
    long ops = 0;
    for (long a : A) {
        for (const auto& z : d.embeddings) {
            const C alpha(z.real(), z.imag());
            C t = alpha;
            long double e = d.err;
            if (!split) {
                t = alpha * alpha + C(2.0L * p, 0);
                e = d.err * (2 * std::abs(alpha) + d.err);
            }
            const C factor = C(static_cast<long double>(a), 0) - t;
            prod *= factor;
            upper *= std::abs(factor) + e;
            approx *= std::abs(factor);
            ++ops;
        }
    }
    const long double unit = std::numeric_limits<long double>::epsilon();
    const long double bound = (upper - approx) + 8.0L * static_cast<long double>(ops + 1) * unit * upper;
    if (!(bound < 0.5L) || std::fabs(prod.imag()) > bound) {
        const int digits = static_cast<int>(std::ceil(std::log10(std::max<long double>(upper, 10)))) + 3;
        throw PrecisionError("numeric norm of " + f.label + " at p=" + std::to_string(p) +
                                 " not certified: error bound " + std::to_string(static_cast<double>(bound)),
                             static_cast<double>(bound), digits);
    }
    const long double r = std::round(prod.real());
    std::ostringstream os;
    os.precision(0);
    os << std::fixed << r;
    return mpz_class(os.str());
}

mpz_class product_norm(const NewformClass& f, long p, long q, const std::set<long>& A) {
    if (f.at(p).has_exact()) return product_norm_exact(f, p, q, A);
    return product_norm_numeric(f, p, q, A);
}

// --- JSON -------------------------------------------------------------------------

namespace {

constexpr long long kExactDoubleLimit = 1LL << 53;

mpz_class json_int(const json& j, const std::string& where) {
    if (j.is_number_integer()) {
        const long long v = j.get<long long>();
        if (v >= kExactDoubleLimit || v <= -kExactDoubleLimit)
            throw ValidationError(where + ": integer above 2^53 must be a string");
        return mpz_class(std::to_string(v));
    }
    if (j.is_number_unsigned()) {
        const unsigned long long v = j.get<unsigned long long>();
        if (v >= static_cast<unsigned long long>(kExactDoubleLimit))
            throw ValidationError(where + ": integer above 2^53 must be a string");
        return mpz_class(std::to_string(v));
    }
    if (j.is_string()) {
        mpz_class v;
        if (v.set_str(j.get<std::string>(), 10) != 0) throw ValidationError(where + ": bad integer string");
        return v;
    }
    throw ValidationError(where + ": expected an integer");
}

json int_json(const mpz_class& v) {
    if (mpz_class(abs(v)) < static_cast<long>(kExactDoubleLimit)) return json(v.get_si());
    return json(v.get_str());
}

long require_long(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer())
        throw ValidationError(std::string("snapshot: missing integer field '") + key + "'");
    return doc[key].get<long>();
}

// |C(z)| relative to sum |c_i||z|^i.
double relative_residual(const IntPoly& C, std::complex<double> z) {
    std::complex<long double> acc = 0;
    long double scale = 0;
    const std::complex<long double> zz(z.real(), z.imag());
    const long double az = std::abs(zz);
    for (long i = C.degree(); i >= 0; --i) {
        const long double c = C.coeff(static_cast<size_t>(i)).get_d();
        acc = acc * zz + c;
        scale = scale * az + std::fabs(c);
    }
    return scale == 0 ? 0.0 : static_cast<double>(std::abs(acc) / scale);
}

}  // namespace

LoadedSpace parse_snapshot(const json& doc, const SnapshotOptions& opts) {
    LoadedSpace out;
    NewformSpace& sp = out.space;
    sp.q = require_long(doc, "q");
    sp.level = require_long(doc, "level");
    const long weight = require_long(doc, "weight");
    const long cond = require_long(doc, "char_conductor");
    sp.total_dim = require_long(doc, "total_dim");
    if (sp.q < 3 || !is_prime(sp.q) || sp.q % 4 != 1)
        throw ValidationError("snapshot: q must be a prime = 1 mod 4");
    if (sp.level != 2 * sp.q * sp.q)
        throw ValidationError("snapshot: level " + std::to_string(sp.level) + " != 2q^2 = " +
                              std::to_string(2 * sp.q * sp.q));
    if (weight != 2) throw ValidationError("snapshot: weight must be 2");
    if (cond != sp.q) throw ValidationError("snapshot: character conductor must be q");
    if (!doc.contains("classes") || !doc["classes"].is_array())
        throw ValidationError("snapshot: missing 'classes' array");

    std::set<std::string> labels;
    for (const auto& jc : doc["classes"]) {
        NewformClass c;
        c.label = jc.at("label").get<std::string>();
        c.dim = jc.at("dim").get<long>();
        c.level = sp.level;
        c.char_modulus = sp.q;
        if (c.dim < 1) throw ValidationError(c.label + ": dim must be positive");
        if (!labels.insert(c.label).second) throw ValidationError("duplicate label " + c.label);
        for (const auto& [key, jd] : jc.at("ap").items()) {
            const long p = std::stol(key);
            if (!is_prime(p)) throw ValidationError(c.label + ": ap key " + key + " is not prime");
            CoeffData d;
            const std::string where = c.label + " a_" + key;
            if (jd.contains("charpoly")) {
                std::vector<mpz_class> coeffs;
                for (const auto& x : jd["charpoly"]) coeffs.push_back(json_int(x, where));
                IntPoly C(std::move(coeffs));
                if (C.degree() != c.dim || !C.is_monic())
                    throw ValidationError(where + ": charpoly must be monic of degree " + std::to_string(c.dim));
                d.charpoly = std::move(C);
            }
            if (jd.contains("embeddings")) {
                for (const auto& z : jd["embeddings"]) d.embeddings.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
                d.err = jd.value("err", 0.0);
                if (static_cast<long>(d.embeddings.size()) != c.dim)
                    throw ValidationError(where + ": expected " + std::to_string(c.dim) + " embeddings");
            }
            if (!d.has_exact() && !d.has_numeric()) throw ValidationError(where + ": empty coefficient data");
            if (d.has_exact() && d.has_numeric()) {
                for (const auto& z : d.embeddings)
                    if (relative_residual(*d.charpoly, z) > opts.embedding_tolerance)
                        throw ValidationError(where + ": embedding is not a root of the charpoly");
            }
            c.ap.emplace(p, std::move(d));
        }
        sp.classes.push_back(std::move(c));
    }
    const SpaceSummary s = sp.summary();
    if (!s.consistent() || s.total_dim != [&] {
            long d = 0;
            for (const auto& c : sp.classes) d += c.dim;
            return d;
        }())
        throw ValidationError("snapshot: class dimensions sum to a value other than total_dim=" +
                              std::to_string(sp.total_dim));
    if (opts.summary_check != SummaryCheck::ignore && is_supported_q(sp.q)) {
        const SpaceSummary expected = published_summary(sp.q);
        if (!(expected == s)) {
            const std::string msg = "summary " + s.str() + " differs from expected " + expected.str();
            if (opts.summary_check == SummaryCheck::error) throw ValidationError(msg);
            out.warnings.push_back(msg);
        }
    }
    return out;
}

json to_json(const NewformSpace& sp) {
    json doc;
    doc["q"] = sp.q;
    doc["level"] = sp.level;
    doc["weight"] = 2;
    doc["char_conductor"] = sp.q;
    doc["total_dim"] = sp.total_dim;
    json classes = json::array();
    for (const auto& c : sp.classes) {
        json jc;
        jc["label"] = c.label;
        jc["dim"] = c.dim;
        json ap = json::object();
        for (const auto& [p, d] : c.ap) {
            json jd = json::object();
            if (d.charpoly) {
                json cp = json::array();
                for (const auto& x : d.charpoly->coeffs()) cp.push_back(int_json(x));
                jd["charpoly"] = std::move(cp);
            }
            if (d.has_numeric()) {
                json em = json::array();
                for (const auto& z : d.embeddings) em.push_back({z.real(), z.imag()});
                jd["embeddings"] = std::move(em);
                jd["err"] = d.err;
            }
            ap[std::to_string(p)] = std::move(jd);
        }
        jc["ap"] = std::move(ap);
        classes.push_back(std::move(jc));
    }
    doc["classes"] = std::move(classes);
    return doc;
}

LoadedSpace read_snapshot(const std::filesystem::path& path, const SnapshotOptions& opts) {
    std::ifstream in(path);
    if (!in) throw DataUnavailable("cannot open snapshot " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ValidationError("malformed snapshot " + path.string() + ": " + e.what());
    }
    try {
        return parse_snapshot(doc, opts);
    } catch (const json::exception& e) {
        throw ValidationError("malformed snapshot " + path.string() + ": " + e.what());
    }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_snapshot(const NewformSpace& space, const std::filesystem::path& path) {
    write_file_atomic(path, to_json(space).dump() + "\n");
}

std::vector<std::string> ramanujan_violations(const NewformSpace& space, long p_max, double tol) {
    std::vector<std::string> out;
    for (const auto& c : space.classes)
        for (const auto& [p, d] : c.ap) {
            if (p > p_max) continue;
            const double bound = 2.0 * std::sqrt(static_cast<double>(p)) + tol;
            for (const auto& z : d.embeddings)
                if (std::abs(z) > bound)
                    out.push_back(c.label + " a_" + std::to_string(p) + " has |a_p| = " + std::to_string(std::abs(z)));
        }
    return out;
}

}  // namespace lnsieve
