#include "lnsieve/verify.hpp"

#include <sstream>

#include "lnsieve/errors.hpp"
#include "lnsieve/sieve.hpp"

namespace lnsieve {

namespace {

template <class F>
CheckResult guarded(const std::string& name, F&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return {name, false, std::string("exception: ") + e.what()};
    }
}

CheckResult gamma_check(long q) {
    const FieldConstants c = constants(q);
    const QuadInt g2 = c.gamma * c.gamma;
    const QuadInt minus_one = QuadInt::from_int(q, -1);
    const bool ok = c.gamma.norm() == -2 && congruent_mod(c.gamma_bar, minus_one, g2) &&
                    congruent_mod(QuadInt::sqrt_q(q), minus_one, g2);
    return {"gamma constants q=" + std::to_string(q), ok, "gamma = " + c.gamma.str()};
}

CheckResult g_trace_check() {
    const std::vector<long> expected{0, 4, 2, 2, -2, -2, -4};
    std::ostringstream os;
    bool ok = true;
    for (long kappa = 0; kappa <= 5; ++kappa) {
        std::vector<long> row;
        for (long chi = 0; chi < 7; ++chi) row.push_back(reduction_trace(rational_frey_local(chi, kappa, 41, 7)));
        if (row != expected) {
            ok = false;
            os << "kappa=" << kappa << " differs; ";
        }
    }
    return {"traces of G at 7, q=41", ok, ok ? "(0, 4, 2, 2, -2, -2, -4) for kappa 0..5" : os.str()};
}

CheckResult curve_f_check(long q, long p_max) {
    const CurveF F = curve_F(q);
    std::ostringstream os;
    bool ok = true;
    for (long p = 3; p <= p_max; ++p) {
        if (!is_prime(p) || p == q) continue;
        const long ap = rational_curve_ap(F.curve, p);
        const long naive = p + 1 - count_points_naive(F.curve, p);
        if (ap != naive) {
            ok = false;
            os << "a_" << p << ": " << ap << " vs " << naive << "; ";
        }
    }
    if (q == 41 && rational_curve_ap(F.curve, 7) != -4) {
        ok = false;
        os << "a_7(82a1) != -4";
    }
    return {"a_p of " + F.label + " (p <= " + std::to_string(p_max) + ")", ok, os.str()};
}

}  // namespace

std::vector<CheckResult> run_verify_suite(const VerifyOptions& opts) {
    std::vector<CheckResult> out;
    for (long q : {17L, 41L, 89L, 97L})
        out.push_back(guarded("gamma constants q=" + std::to_string(q), [&] { return gamma_check(q); }));
    out.push_back(guarded("traces of G at 7, q=41", g_trace_check));
    for (long q : {17L, 41L, 89L, 97L})
        out.push_back(guarded("curve F_q, q=" + std::to_string(q), [&] { return curve_f_check(q, opts.ap_p_max); }));
    for (const Solution& s : known_obstructing_solutions()) {
        out.push_back(guarded("valuations " + s.str(), [&] {
            const ValuationReport r = verify_valuations(s);
            return CheckResult{"valuations " + s.str(), r.ok(), r.ok() ? "" : r.str()};
        }));
        out.push_back(guarded("isogeny " + s.str(), [&] {
            const IsogenyReport r = isogeny_check(s);
            return CheckResult{"isogeny " + s.str(), r.ok(),
                               std::to_string(r.points_checked) + " points, cocycle " + std::to_string(r.cocycle)};
        }));
    }
    for (long q : {17L, 41L, 89L, 97L})
        out.push_back(guarded("a_3 bound q=" + std::to_string(q), [&] {
            const HasseA3Report r = hasse_a3_check(q);
            return CheckResult{"a_3 bound q=" + std::to_string(q), r.ok,
                               "a_3 = " + std::to_string(r.a3) + ", 4+-a_3 = " + std::to_string(r.plus) + ", " +
                                   std::to_string(r.minus)};
        }));
    for (const Solution& s : known_obstructing_solutions())
        out.push_back(guarded("power of two q=" + std::to_string(s.q), [&] {
            const long e = int_val(s.y, 2) * s.n;
            const long x = mpz_class(abs(s.x)).get_si();
            bool found = false;
            for (const auto& h : power_of_two_search(s.q, e, e < 3 ? 3 : e))
                if (h.x == x && h.n * h.s == e) found = true;
            return CheckResult{"power of two q=" + std::to_string(s.q), found,
                               std::to_string(x) + "^2 = 2^" + std::to_string(e) + " + " + std::to_string(s.q)};
        }));
    if (opts.run_sweep)
        out.push_back(guarded("listed solutions and sweep", [&] {
            const SweepReport r = verify_listed(opts.sweep_x_max);
            std::ostringstream os;
            os << r.listed_ok.size() << " listed tuples verified, " << r.found.size() << " found with x <= " << r.x_max
               << ", " << r.extra.size() << " unlisted";
            for (const auto& t : r.extra) os << " (" << t.q << "," << t.x << "," << t.y << "," << t.k << "," << t.n << ")";
            return CheckResult{"listed solutions and sweep", r.ok(), os.str()};
        }));
    return out;
}

}  // namespace lnsieve
