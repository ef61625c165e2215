// Acceptance battery: end-to-end checks of the certified constructions at
// their stated tolerances and runtime budgets. Each criterion prints one
// [PASS]/[FAIL] line; the exit code is the number of failed criteria.

#include "koblab/catalog.hpp"
#include "koblab/domains.hpp"
#include "koblab/holo.hpp"
#include "koblab/metrics.hpp"
#include "koblab/rng.hpp"
#include "koblab/schwarz.hpp"
#include "koblab/stationarity.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace koblab;

namespace {

struct Crit {
    bool ok = true;
    std::vector<std::string> notes;

    void expect(bool cond, const std::string& msg) {
        if (!cond) {
            ok = false;
            if (notes.size() < 12) notes.push_back(msg);
        }
    }
};

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

std::string run_cli_capture(const std::string& args, int* code) {
    const std::string cmd = std::string(KOBLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    if (!pipe) {
        *code = -1;
        return out;
    }
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    *code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

double sup_gap(const AnalyticDisc& f, const AnalyticDisc& g, double r, int M) {
    double gap = 0.0;
    for (const cplx& z : circle_points(r, M)) {
        const CVec a = f.eval(z), b = g.eval(z);
        for (size_t i = 0; i < a.size(); ++i) gap = std::max(gap, std::abs(a[i] - b[i]));
    }
    return gap;
}

const JetTarget kYu3{{cplx(0.0), cplx(0.0), cplx(-1.0)}, {cplx(0.0), cplx(1.0), cplx(0.0)}, 3};

void certified_yu_bound(Crit& c, const YuDisc& y, int k, double expected) {
    const ModelDomain yu = ModelDomain::yu_domain();
    const ContainmentReport rep = contains_disc(yu, y.disc);
    c.expect(rep.verdict == Verdict::Contained, "containment verdict not contained");
    c.expect(rep.max_rho < -1e-9, "max rho not below -1e-9: " + fmt(rep.max_rho));

    JetTarget t = kYu3;
    t.k = k;
    const JetResidualReport jr = verify_jet(y.disc, t);
    c.expect(jr.dist_p <= 1e-10, "base point residual " + fmt(jr.dist_p));
    c.expect(jr.lower_defect <= 1e-10, "lower-order residual " + fmt(jr.lower_defect));
    c.expect(jr.parallel_defect <= 1e-10, "direction residual " + fmt(jr.parallel_defect));
    c.expect(std::abs(jr.r_ls - y.r) <= 1e-10 * y.r, "jet coefficient drifted from stated r");

    const double value = 1.0 / y.r;
    c.expect(std::abs(value - expected) <= 1e-12, "bound " + fmt(value) + " != " + fmt(expected));
}

} // namespace

int main() {
    using clock = std::chrono::steady_clock;
    int failed = 0;

    const auto run = [&](int idx, const char* label, double budget_s,
                         const std::function<void(Crit&)>& body) {
        Crit c;
        const auto t0 = clock::now();
        try {
            body(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        if (budget_s > 0.0 && secs > budget_s)
            c.expect(false, "runtime " + fmt(secs) + "s over budget " + fmt(budget_s) + "s");
        std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << idx << ". " << std::left << std::setw(34)
                  << label << std::setprecision(3) << std::fixed << secs << "s\n"
                  << std::defaultfloat;
        for (const std::string& n : c.notes) std::cout << "         - " << n << "\n";
        if (!c.ok) ++failed;
    };

    run(1, "yu-optimal bound certified", 5.0, [](Crit& c) {
        const double pi2 = 2.0 * kPi;
        const double expected = std::pow(4.0 * pi2 / (1.0 - std::exp(-pi2)), -1.0 / 3.0);
        const YuDisc y = yu_parametric_disc(yu_optimal_params(), "yu-optimal");
        certified_yu_bound(c, y, 3, expected);
        c.expect(std::abs(1.0 / y.r - 0.3412) < 5e-5, "bound does not round to 0.3412");
    });

    run(2, "yu-simple bound certified", 5.0, [](Crit& c) {
        certified_yu_bound(c, yu_simple_disc(), 3, std::pow(2.0, -1.0 / 3.0));
    });

    run(3, "odd-order lift dominates", 0.0, [](Crit& c) {
        const ModelDomain yu = ModelDomain::yu_domain();
        const YuDisc y = yu_parametric_disc(yu_optimal_params(), "yu-optimal");
        const AnalyticDisc g = odd_order_lift(y.disc);

        JetTarget t5 = kYu3;
        t5.k = 5;
        const JetResidualReport jr = verify_jet(g, t5);
        c.expect(jr.ok(1e-10), "lifted jet residuals exceed 1e-10");
        c.expect(std::abs(jr.r_ls - y.r) <= 1e-12 * y.r, "lifted r differs from base r");

        const ContainmentReport rep = contains_disc(yu, g);
        c.expect(rep.verdict == Verdict::Contained, "lifted disc not certified contained");

        bool strict = true;
        for (double r : {0.3, 0.6, 0.9, 0.99, 0.999})
            for (const cplx& z : circle_points(r, 4096))
                strict = strict && rho(yu, g.eval(z)) < rho(yu, y.disc.eval(z));
        c.expect(strict, "lifted disc does not strictly decrease rho on the grid");
    });

    run(4, "disc calibration within 2%", 60.0, [](Crit& c) {
        const SearchConfig cfg;
        const ModelDomain ud = ModelDomain::unit_disc();
        for (cplx p : {cplx(0.0), cplx(0.3), cplx(0.0, 0.6)}) {
            for (int k : {1, 2, 3}) {
                const JetTarget t{{p}, {cplx(1.0)}, k};
                const double cf = poincare(p, 1.0);
                const MetricEstimate est = upper_bound_search(ud, t, cfg);
                c.expect(est.value >= cf - 1e-9 && est.value <= 1.02 * cf,
                         "disc p=" + fmt(p.real()) + "+" + fmt(p.imag()) + "i k=" +
                             std::to_string(k) + ": value " + fmt(est.value) + " vs " + fmt(cf));
            }
        }
        const ModelDomain pd = ModelDomain::punctured_disc();
        for (double p : {0.2, std::exp(-1.0), 0.7}) {
            const JetTarget t{{cplx(p)}, {cplx(1.0)}, 1};
            const double cf = punctured_order_k(p, 1.0);
            const MetricEstimate est = upper_bound_search(pd, t, cfg);
            c.expect(est.value >= cf - 1e-9 && est.value <= 1.02 * cf,
                     "punctured p=" + fmt(p) + ": value " + fmt(est.value) + " vs " + fmt(cf));
        }
    });

    run(5, "first-order exact discs", 30.0, [](Crit& c) {
        const ModelDomain yu = ModelDomain::yu_domain();
        int feasible_ok = 0, infeasible_ok = 0;
        for (int i = 0; i < 25; ++i) {
            Rng rng = Rng::substream(9090, static_cast<std::uint64_t>(i));
            const double t = rng.uniform(0.15, 0.9);
            const double qmax = std::cbrt(exact_kobayashi_ratio_cap(t));
            const double q = qmax * rng.uniform(0.05, 0.9);
            const double amod = 1.0 / std::sqrt(1.0 + q * q);
            const double ph1 = rng.angle(), ph2 = rng.angle();
            const cplx a = amod * cplx(std::cos(ph1), std::sin(ph1));
            const cplx b = q * amod * cplx(std::cos(ph2), std::sin(ph2));

            const ExactKobayashiDisc e = exact_kobayashi_disc({t, a, b});
            const double want = amod * std::pow(t, -0.25);
            bool ok = std::abs(e.value - want) <= 1e-12 * want;
            ok = ok && std::abs(e.disc.jets[0].coeff(1) - a / e.value) <= 1e-9;
            ok = ok && std::abs(e.disc.jets[1].coeff(1) - b / e.value) <= 1e-9;
            ok = ok && std::abs(e.disc.jets[2].coeff(1)) <= 1e-15;
            ok = ok && contains_disc(yu, e.disc).verdict != Verdict::Violated;
            if (ok) ++feasible_ok;
            else c.expect(false, "feasible sample " + std::to_string(i) + " failed");
        }
        for (int i = 0; i < 25; ++i) {
            Rng rng = Rng::substream(7373, static_cast<std::uint64_t>(i));
            const double t = rng.uniform(0.15, 0.9);
            const double qmax = std::cbrt(exact_kobayashi_ratio_cap(t));
            const double q = qmax * rng.uniform(1.05, 2.5);
            const double amod = 1.0 / std::sqrt(1.0 + q * q);
            const double ph1 = rng.angle(), ph2 = rng.angle();
            const cplx a = amod * cplx(std::cos(ph1), std::sin(ph1));
            const cplx b = q * amod * cplx(std::cos(ph2), std::sin(ph2));
            try {
                exact_kobayashi_disc({t, a, b});
                c.expect(false, "infeasible sample " + std::to_string(i) + " accepted");
            } catch (const InfeasibleParameters&) {
                ++infeasible_ok;
            }
        }
        c.expect(feasible_ok == 25, "feasible certified " + std::to_string(feasible_ok) + "/25");
        c.expect(infeasible_ok == 25, "rejected " + std::to_string(infeasible_ok) + "/25");
    });

    run(6, "lifted kind1 stationarity", 120.0, [](Crit& c) {
        const double ms[3] = {0.2, 0.35, 0.45};
        for (int s = 0; s < 20; ++s) {
            const double m = ms[s % 3];
            Rng rng = Rng::substream(3030, static_cast<std::uint64_t>(s));
            const EllipsoidKind1Params p = sample_kind1(rng, m);
            for (int k : {1, 2, 3}) {
                const StationarityReport rep = verify_k_stationary(p, k);
                const bool ok = rep.verdict == StationarityVerdict::Stationary &&
                                rep.residual < 1e-8 && rep.positivity_margin > 1e-6;
                c.expect(ok, "set " + std::to_string(s) + " k=" + std::to_string(k) +
                                 ": residual " + fmt(rep.residual) + " margin " +
                                 fmt(rep.positivity_margin));
            }
        }
        Rng rng = Rng::substream(3030, 0);
        const EllipsoidKind1Params p = sample_kind1(rng, 0.2);
        const AnalyticDisc bad = perturbed_kind1_disc(p, 1);
        const BoundaryCovector bc =
            boundary_covector(ModelDomain::ellipsoid(p.m), bad, 1, 4096);
        const StationarityReport rep = solve_weight(bc, 1, default_cutoff(p, 1));
        c.expect(rep.residual > 1e-3, "negative control residual " + fmt(rep.residual));
    });

    run(7, "kind2 lifting identity", 0.0, [](Crit& c) {
        const double ms[3] = {0.2, 0.3, 0.4};
        for (int s = 0; s < 50; ++s) {
            Rng rng = Rng::substream(5050, static_cast<std::uint64_t>(s));
            const EllipsoidKind1Params p = sample_kind1(rng, ms[s % 3]);
            const int k = 1 + s % 3;
            const EllipsoidKind2Params q = lift_kind1(p, k);
            c.expect(kind2_identity_residual(q) < 1e-10,
                     "identity residual at set " + std::to_string(s));
            const double gap = sup_gap(ellipsoid_kind2(q),
                                       compose_power(ellipsoid_kind1(p), k), 0.999, 512);
            c.expect(gap < 1e-9, "lift gap " + fmt(gap) + " at set " + std::to_string(s));
        }
    });

    run(8, "derivative-bound suites", 60.0, [](Crit& c) {
        const SchwarzSuiteResult basic = run_schwarz_suite("basic", 2, 1000, 101);
        c.expect(basic.violations == 0,
                 "basic violations " + std::to_string(basic.violations));
        for (cplx z0 : {cplx(0.0), cplx(0.4, 0.2), cplx(-0.7)}) {
            const SchwarzSuiteResult pick = run_schwarz_suite("pick", 2, 1000, 202, z0);
            c.expect(pick.violations == 0, "pick violations " + std::to_string(pick.violations) +
                                               " at zeta0 " + fmt(z0.real()));
        }
        const SchwarzSuiteResult punct = run_schwarz_suite("punctured", 2, 1000, 303);
        c.expect(punct.violations == 0,
                 "punctured violations " + std::to_string(punct.violations));

        const auto confirmed = [&c](const SchwarzReport& rep, const std::string& what) {
            c.expect(rep.equality == EqualityStatus::Confirmed &&
                         rep.reconstruction_error <= 1e-7,
                     what + " equality not reconstructed (recon " +
                         fmt(rep.reconstruction_error) + ")");
        };
        confirmed(check_higher_schwarz(equality_basic(0.3, 2), 2), "monomial k=2");
        confirmed(check_higher_schwarz(equality_basic(1.2, 3), 3), "monomial k=3");
        for (cplx z0 : {cplx(0.0), cplx(0.4, 0.2), cplx(-0.7)})
            confirmed(check_schwarz_pick_higher(equality_pick(z0, cplx(0.3, -0.1), 1.0, 2), z0, 2),
                      "interior-point witness");
        // theta kept off the lattice angles: the witness decays past the zero
        // guard where phase*z^k approaches 1.
        confirmed(check_punctured(equality_punctured(std::exp(-1.0), 0.7, kPi / 200.0, 1), 1),
                  "punctured witness k=1");
        confirmed(check_punctured(equality_punctured(std::exp(-1.0), 0.7, kPi / 200.0, 2), 2),
                  "punctured witness k=2");
    });

    run(9, "degree sweep trend", 0.0, [](Crit& c) {
        const ModelDomain yu = ModelDomain::yu_domain();
        const JetTarget t{{cplx(0.0), cplx(0.0), cplx(-1.0)}, {cplx(0.0), cplx(1.0), cplx(0.0)}, 2};
        SearchConfig cfg;
        cfg.restarts = 4;
        cfg.seed = 1;
        std::vector<AnalyticDisc> warm;
        std::vector<double> values;
        for (int N : {4, 8, 12, 16}) {
            SearchConfig cc = cfg;
            cc.degree = N;
            const MetricEstimate est = upper_bound_search(yu, t, cc, warm);
            warm.clear();
            warm.push_back(est.witness);
            values.push_back(est.value);
        }
        std::string seq;
        for (double v : values) seq += fmt(v) + " ";
        for (size_t i = 1; i < values.size(); ++i)
            c.expect(values[i] < values[i - 1], "not strictly decreasing: " + seq);
        c.expect(values.back() < 0.9, "final bound " + fmt(values.back()) + " not below 0.9");
    });

    run(10, "byte determinism", 0.0, [](Crit& c) {
        const std::string est_args =
            "estimate --domain unit_disc --p 0.3 --v 1 --k 2 --degree 6 --restarts 3 --seed 17";
        int c1 = 0, c2 = 0;
        const std::string a = run_cli_capture(est_args, &c1);
        const std::string b = run_cli_capture(est_args, &c2);
        c.expect(c1 == 0 && c2 == 0, "estimate exit codes " + std::to_string(c1) + "," +
                                         std::to_string(c2));
        c.expect(!a.empty() && a == b, "estimate reports differ between runs");

        const std::string suite_args = "schwarz --lemma punctured --k 2 --samples 50 --seed 23 "
                                       "--format csv";
        const std::string s1 = run_cli_capture(suite_args, &c1);
        const std::string s2 = run_cli_capture(suite_args, &c2);
        c.expect(c1 == 0 && c2 == 0, "schwarz exit codes");
        c.expect(!s1.empty() && s1 == s2, "schwarz reports differ between runs");
    });

    std::cout << (failed == 0 ? "acceptance: all criteria passed\n"
                              : "acceptance: " + std::to_string(failed) + " criteria failed\n");
    return failed;
}
