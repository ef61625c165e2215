#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "koblab/catalog.hpp"
#include "koblab/report.hpp"

using namespace koblab;

namespace {

std::vector<cplx> parse_cvec(const std::string& s) {
    if (s.empty()) throw UsageError("empty complex vector");
    std::vector<cplx> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t nxt = s.find(';', pos);
        if (nxt == std::string::npos) nxt = s.size();
        const std::string comp = s.substr(pos, nxt - pos);
        const size_t comma = comp.find(',');
        try {
            if (comma == std::string::npos)
                out.emplace_back(std::stod(comp), 0.0);
            else
                out.emplace_back(std::stod(comp.substr(0, comma)),
                                 std::stod(comp.substr(comma + 1)));
        } catch (const std::exception&) {
            throw UsageError("malformed complex component '" + comp +
                             "' (use re or re,im; components separated by ';')");
        }
        pos = nxt + 1;
    }
    return out;
}

// Inclusive lo:hi:count grid; count >= 1.
std::vector<double> parse_range(const std::string& s) {
    std::vector<std::string> f;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t nxt = s.find(':', pos);
        if (nxt == std::string::npos) nxt = s.size();
        f.push_back(s.substr(pos, nxt - pos));
        pos = nxt + 1;
    }
    if (f.size() != 3) throw UsageError("range must be lo:hi:count, got '" + s + "'");
    double lo = 0.0, hi = 0.0;
    long count = 0;
    try {
        lo = std::stod(f[0]);
        hi = std::stod(f[1]);
        count = std::stol(f[2]);
    } catch (const std::exception&) {
        throw UsageError("malformed range '" + s + "'");
    }
    if (count < 1) throw UsageError("range count must be >= 1");
    std::vector<double> out;
    out.reserve(static_cast<size_t>(count));
    if (count == 1) {
        out.push_back(lo);
    } else {
        const double step = (hi - lo) / static_cast<double>(count - 1);
        for (long i = 0; i < count; ++i) out.push_back(lo + step * static_cast<double>(i));
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t nxt = s.find(',', pos);
        if (nxt == std::string::npos) nxt = s.size();
        const std::string tok = s.substr(pos, nxt - pos);
        if (!tok.empty()) {
            try {
                out.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw UsageError("malformed integer list '" + s + "'");
            }
        }
        pos = nxt + 1;
    }
    return out;
}

void emit(const std::string& path, std::string text) {
    if (text.empty() || text.back() != '\n') text += '\n';
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open output file " + path);
    os << text;
}

void require_power_of_two(int M) {
    if (M < 8 || (M & (M - 1)) != 0) throw UsageError("grid size must be a power of two >= 8");
}

// Config file values act as defaults; command-line flags win because they are
// parsed after the defaults are installed.
json preload_config(int argc, char** argv) {
    std::string path;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) path = argv[i + 1];
        else if (a.rfind("--config=", 0) == 0) path = a.substr(9);
    }
    if (path.empty()) return json::object();
    std::ifstream is(path);
    if (!is) throw UsageError("cannot read config file " + path);
    json j;
    try {
        is >> j;
    } catch (const std::exception& e) {
        throw UsageError(std::string("config file parse: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("config file must hold a JSON object");
    return j;
}

template <typename T>
T cfg_get(const json& c, const char* key, T def) {
    if (!c.contains(key)) return def;
    try {
        return c.at(key).get<T>();
    } catch (const std::exception&) {
        throw UsageError(std::string("config: bad value for key '") + key + "'");
    }
}

std::uint64_t cfg_seed(const json& c, const char* key, std::uint64_t def) {
    if (!c.contains(key)) return def;
    const json& v = c.at(key);
    try {
        if (v.is_string()) return std::stoull(v.get<std::string>());
        return v.get<std::uint64_t>();
    } catch (const std::exception&) {
        throw UsageError("config: bad seed value");
    }
}

// --- anchored verification suite ------------------------------------------------

void add_check(PaperReport& rep, std::string id, std::string anchor, double measured,
               double expected, double tol, bool pass) {
    rep.checks.push_back(
        {std::move(id), std::move(anchor), measured, expected, tol, pass});
}

double jet_defect(const JetResidualReport& j) {
    return std::max({j.dist_p, j.lower_defect, j.parallel_defect});
}

// Each check constructs its own inputs so an injected corruption can only
// reach the check it names.
PaperReport run_paper_suite(int grid_m, const std::string& fault) {
    GridConfig grid;
    grid.M = grid_m;
    PaperReport rep;
    const ModelDomain yu = ModelDomain::yu_domain();
    const JetTarget yu3{{cplx(0.0), cplx(0.0), cplx(-1.0)}, {cplx(0.0), cplx(1.0), cplx(0.0)}, 3};

    {
        YuDiscParams prm = yu_optimal_params();
        if (fault == "yu-cubed-bound") prm.beta *= 0.99;
        const YuDisc y = yu_parametric_disc(prm);
        const double measured = 1.0 / y.r;
        add_check(rep, "yu-cubed-bound", "(8*pi/(1-exp(-2*pi)))^(-1/3) to 4 decimals", measured,
                  0.3412, 5e-5, std::abs(measured - 0.3412) <= 5e-5);
    }
    {
        const YuDisc y = yu_parametric_disc(yu_optimal_params());
        const ContainmentReport c = contains_disc(yu, y.disc, grid);
        add_check(rep, "yu-cubed-contained", "rho(f(z)) = |z|^16 - 1 stays negative", c.max_rho,
                  -1e-9, 0.0, c.interior_ok() && c.max_rho < -1e-9);
    }
    {
        const YuDisc y = yu_parametric_disc(yu_optimal_params());
        const JetResidualReport j = verify_jet(y.disc, yu3);
        add_check(rep, "yu-cubed-jet", "f(0) = (0,0,-1), f'''(0) = 3! r (0,1,0)", jet_defect(j),
                  0.0, 1e-10, jet_defect(j) <= 1e-10 && j.r_ls > 0.0);
    }
    {
        YuDiscParams prm{1.0, 1.0};
        if (fault == "yu-simple-value") prm.alpha *= 1.01;
        const YuDisc y = yu_parametric_disc(prm, "yu-simple");
        const double expected = std::pow(2.0, -1.0 / 3.0);
        add_check(rep, "yu-simple-value", "2^(-1/3)", 1.0 / y.r, expected, 1e-12,
                  std::abs(1.0 / y.r - expected) <= 1e-12);
    }
    {
        const YuDisc y = yu_simple_disc();
        const ContainmentReport c = contains_disc(yu, y.disc, grid);
        add_check(rep, "yu-simple-contained", "rho(f(z)) = |z|^16 - 1 stays negative", c.max_rho,
                  -1e-9, 0.0, c.interior_ok() && c.max_rho < -1e-9);
    }
    {
        const YuDisc y = yu_simple_disc();
        const JetResidualReport j = verify_jet(y.disc, yu3);
        add_check(rep, "yu-simple-jet", "f(0) = (0,0,-1), f'''(0) = 3! r (0,1,0)", jet_defect(j),
                  0.0, 1e-10, jet_defect(j) <= 1e-10 && j.r_ls > 0.0);
    }
    {
        const YuDisc y = yu_parametric_disc(yu_optimal_params());
        const AnalyticDisc g = odd_order_lift(y.disc);
        JetTarget t5 = yu3;
        t5.k = 5;
        const double r5 = verify_jet(g, t5).r_ls;
        add_check(rep, "odd-lift-jet", "order-5 lift keeps the jet radius", std::abs(r5 - y.r),
                  0.0, 1e-12, std::abs(r5 - y.r) <= 1e-12);
        double worst = -1e300;
        for (double rad : grid.ladder)
            for (const cplx& z : circle_points(rad, std::min(grid.M, 1024)))
                worst = std::max(worst, rho(yu, g.eval(z)) - rho(yu, y.disc.eval(z)));
        add_check(rep, "odd-lift-strict", "rho(g) < rho(f) off the origin", worst, 0.0, 0.0,
                  worst < 0.0);
    }
    {
        ExactKobayashiParams p{0.5, cplx(0.8), cplx(0.6)};
        const double expected = 0.8 * std::pow(0.5, -0.25);
        if (fault == "exact-disc-value") p.t = 0.505;
        const ExactKobayashiDisc e = exact_kobayashi_disc(p);
        add_check(rep, "exact-disc-value", "|a| t^(-1/4)", e.value, expected, 1e-12,
                  std::abs(e.value - expected) <= 1e-12);
    }
    {
        const ExactKobayashiDisc e = exact_kobayashi_disc({0.5, cplx(0.8), cplx(0.6)});
        const ContainmentReport c = contains_disc(yu, e.disc, grid);
        add_check(rep, "exact-disc-contained", "rho(f(z)) = t(|z|^4 - 1) stays negative",
                  c.max_rho, -1e-9, 0.0, c.interior_ok() && c.max_rho < -1e-9);
        const JetTarget t1{{cplx(0.0), cplx(0.0), cplx(-0.5)}, {cplx(0.8), cplx(0.6), cplx(0.0)},
                           1};
        const JetResidualReport j = verify_jet(e.disc, t1);
        add_check(rep, "exact-disc-jet", "f'(0) = t^(1/4)/|a| (a, b, 0)", jet_defect(j), 0.0,
                  1e-9, jet_defect(j) <= 1e-9 && j.r_ls > 0.0);
    }
    {
        Rng rng(7);
        const EllipsoidKind1Params p = sample_kind1(rng, 0.35);
        const StationarityReport clean = verify_k_stationary(p, 2, grid_m);
        StationarityReport for_residual = clean;
        if (fault == "ellipsoid-stationary") {
            const BoundaryCovector bc =
                boundary_covector(ModelDomain::ellipsoid(p.m), perturbed_kind1_disc(p, 1), 1,
                                  grid_m, grid);
            for_residual = solve_weight(bc, 1, default_cutoff(p, 1), StationarityConfig{});
        }
        add_check(rep, "ellipsoid-stationary",
                  "z^k c(z) grad rho(f(z)) extends holomorphically", for_residual.residual, 0.0,
                  1e-8, for_residual.residual < 1e-8);
        add_check(rep, "ellipsoid-weight-positive", "boundary weight stays positive",
                  clean.positivity_margin, 1e-6, 0.0, clean.positivity_margin > 1e-6);
    }
    {
        Rng rng(11);
        EllipsoidKind2Params L = lift_kind1(sample_kind1(rng, 0.45), 3);
        if (fault == "kind2-identity") L.a1 *= 1.000001;
        const double resid = kind2_identity_residual(L);
        add_check(rep, "kind2-identity", "w1 P1 cof1 + w2 P2 cof2 = P0 cof0 coefficientwise",
                  resid, 0.0, 1e-10, resid < 1e-10);
    }
    {
        Rng rng(11);
        const EllipsoidKind1Params p = sample_kind1(rng, 0.45);
        const AnalyticDisc g2 = ellipsoid_kind2(lift_kind1(p, 3));
        const AnalyticDisc g1 = compose_power(ellipsoid_kind1(p), 3);
        double sup = 0.0;
        for (double rad : grid.ladder)
            for (const cplx& z : circle_points(rad, 512)) {
                const CVec a = g2.eval(z), b = g1.eval(z);
                for (size_t i = 0; i < a.size(); ++i) sup = std::max(sup, std::abs(a[i] - b[i]));
            }
        add_check(rep, "lift-identity", "k-th root lift reproduces the stretched map", sup, 0.0,
                  1e-9, sup <= 1e-9);
    }
    {
        const SchwarzSuiteResult r = run_schwarz_suite("basic", 2, 100, 5);
        add_check(rep, "schwarz-basic", "|f^(k)(0)|/k! <= 1 for order-k self-maps", r.worst, 0.0,
                  1e-8, r.violations == 0);
    }
    {
        const SchwarzReport r = check_higher_schwarz(equality_basic(0.7, 2), 2);
        const double measured =
            (r.equality == EqualityStatus::Confirmed) ? r.reconstruction_error : 1.0;
        add_check(rep, "schwarz-equality", "equality forces f = e^(i theta) z^k", measured, 0.0,
                  1e-7, measured <= 1e-7);
    }
    {
        const ModelDomain dp = ModelDomain::punctured_disc();
        const JetTarget t{{cplx(0.3)}, {cplx(1.0)}, 2};
        SearchConfig c;
        c.restarts = 0;
        c.grid.M = grid_m;
        const MetricEstimate est = upper_bound_search(dp, t, c);
        const double measured = est.value / punctured_order_k(t.p[0], t.v[0]);
        add_check(rep, "punctured-value", "|v| / (-2 |p| log |p|) within 2 percent", measured,
                  1.0, 0.02, std::abs(measured - 1.0) <= 0.02);
    }
    {
        const ModelDomain ud = ModelDomain::unit_disc();
        const JetTarget t{{cplx(0.3)}, {cplx(1.0)}, 2};
        SearchConfig c;
        c.restarts = 2;
        c.degree = 8;
        c.grid.M = grid_m;
        const MetricEstimate est = upper_bound_search(ud, t, c);
        const double measured = est.value / poincare(t.p[0], t.v[0]);
        add_check(rep, "unit-disc-poincare", "|v| / (1 - |p|^2) within 2 percent", measured, 1.0,
                  0.02, std::abs(measured - 1.0) <= 0.02);
    }
    return rep;
}

const std::vector<std::string> kFaultIds = {"yu-cubed-bound", "yu-simple-value",
                                            "exact-disc-value", "ellipsoid-stationary",
                                            "kind2-identity"};

// --- subcommand bodies ------------------------------------------------------------

int cmd_verify_paper(int grid_m, const std::string& fault, const std::string& format,
                     const std::string& out) {
    require_power_of_two(grid_m);
    if (!fault.empty()) {
        bool known = false;
        for (const std::string& id : kFaultIds) known = known || id == fault;
        if (!known) throw UsageError("no fault recipe for check id '" + fault + "'");
    }
    const PaperReport rep = run_paper_suite(grid_m, fault);
    if (format == "json")
        emit(out, jsonify(rep).dump(2));
    else
        emit(out, format_text(rep));
    return rep.verdict() ? 0 : 1;
}

int cmd_estimate(const std::string& domain_id, const std::string& p_str,
                 const std::string& v_str, int k, SearchConfig cfg,
                 const std::string& warm_name, int warm_lift, const std::string& format,
                 const std::string& out) {
    const ModelDomain d = ModelDomain::parse(domain_id);
    const JetTarget t{parse_cvec(p_str), parse_cvec(v_str), k};
    std::vector<AnalyticDisc> warm;
    if (!warm_name.empty()) {
        CatalogEntry e = catalog_lookup(warm_name);
        AnalyticDisc w = std::move(e.disc);
        if (warm_lift > 1) w = compose_power(w, warm_lift);
        warm.push_back(std::move(w));
    }
    const MetricEstimate est = upper_bound_search(d, t, cfg, warm);
    if (format == "text") {
        std::ostringstream os;
        os << "value=" << fmt_full(est.value) << " kind=" << bound_kind_name(est.kind)
           << " r=" << fmt_full(est.r_best) << " source=" << est.witness_source;
        emit(out, os.str());
    } else {
        emit(out, estimate_record(d, t, est).dump(2));
    }
    return 0;
}

int cmd_sweep_degree(const std::string& domain_id, const std::string& p_str,
                     const std::string& v_str, int k, const std::string& degrees_str,
                     SearchConfig base, const std::string& format, const std::string& out) {
    const std::vector<int> degrees = parse_int_list(degrees_str);
    if (degrees.empty()) throw UsageError("sweep: empty degree list");
    const ModelDomain d = ModelDomain::parse(domain_id);
    const JetTarget t{parse_cvec(p_str), parse_cvec(v_str), k};
    CsvTable tb;
    tb.header = {"degree", "value", "r", "kind", "source"};
    json rows = json::array();
    std::vector<AnalyticDisc> warm;
    for (int N : degrees) {
        if (N < 1) throw UsageError("sweep: degrees must be positive");
        SearchConfig c = base;
        c.degree = N;
        const MetricEstimate est = upper_bound_search(d, t, c, warm);
        warm.clear();
        warm.push_back(est.witness);
        tb.rows.push_back({std::to_string(N), fmt_full(est.value), fmt_full(est.r_best),
                           bound_kind_name(est.kind), est.witness_source});
        json row;
        row["degree"] = N;
        row["value"] = est.value;
        row["r"] = est.r_best;
        row["kind"] = bound_kind_name(est.kind);
        row["source"] = est.witness_source;
        rows.push_back(std::move(row));
    }
    if (format == "json") {
        json j;
        j["mode"] = "degree";
        j["rows"] = std::move(rows);
        emit(out, j.dump(2));
    } else {
        emit(out, tb.str());
    }
    return 0;
}

int cmd_sweep_feasibility(const std::string& t_range, const std::string& ratio_range,
                          const std::string& format, const std::string& out) {
    const std::vector<double> ts = parse_range(t_range);
    const std::vector<double> ratios = parse_range(ratio_range);
    CsvTable tb;
    tb.header = {"t", "ratio", "cap_cuberoot", "closed_feasible", "accepted", "agree"};
    json rows = json::array();
    bool all_agree = true;
    for (double tv : ts) {
        for (double q : ratios) {
            const double a = 1.0 / std::sqrt(1.0 + q * q);
            const double b = q * a;
            const double cap = exact_kobayashi_ratio_cap(tv);
            const bool closed = q * q * q <= cap;
            bool accepted = true;
            try {
                exact_kobayashi_disc({tv, cplx(a), cplx(b)});
            } catch (const InfeasibleParameters&) {
                accepted = false;
            }
            const bool agree = closed == accepted;
            all_agree = all_agree && agree;
            tb.rows.push_back({fmt_full(tv), fmt_full(q), fmt_full(std::cbrt(cap)),
                               closed ? "1" : "0", accepted ? "1" : "0", agree ? "1" : "0"});
            json row;
            row["t"] = tv;
            row["ratio"] = q;
            row["cap_cuberoot"] = std::cbrt(cap);
            row["closed_feasible"] = closed;
            row["accepted"] = accepted;
            row["agree"] = agree;
            rows.push_back(std::move(row));
        }
    }
    if (format == "json") {
        json j;
        j["mode"] = "feasibility";
        j["rows"] = std::move(rows);
        emit(out, j.dump(2));
    } else {
        emit(out, tb.str());
    }
    return all_agree ? 0 : 1;
}

int cmd_schwarz(const std::string& lemma, int k, int samples, std::uint64_t seed,
                const std::string& zeta0_str, int factors, const std::string& format,
                const std::string& out) {
    if (samples < 1) throw UsageError("schwarz: samples must be >= 1");
    const std::vector<cplx> z0v = parse_cvec(zeta0_str);
    if (z0v.size() != 1) throw UsageError("schwarz: zeta0 must be a single complex number");
    const SchwarzSuiteResult r = run_schwarz_suite(lemma, k, samples, seed, z0v[0], factors);
    if (format == "csv")
        emit(out, csv_of_suite(r).str());
    else
        emit(out, jsonify(r).dump(2));
    return r.violations == 0 ? 0 : 1;
}

int cmd_stationarity(const std::string& map_name, int k, int grid_m, int cutoff,
                     const std::string& format, const std::string& out) {
    require_power_of_two(grid_m);
    const auto prm = kind1_params_from_name(map_name);
    if (!prm) throw UsageError("stationarity: --map must name an ellipsoid-k1 catalog entry");
    const StationarityReport r = verify_k_stationary(*prm, k, grid_m, cutoff);
    if (format == "text") {
        std::ostringstream os;
        os << "map=" << map_name << " k=" << k
           << " verdict=" << stationarity_verdict_name(r.verdict)
           << " residual=" << fmt_full(r.residual)
           << " margin=" << fmt_full(r.positivity_margin) << " cutoff=" << r.cutoff;
        emit(out, os.str());
    } else {
        json j;
        j["map"] = map_name;
        j["k"] = k;
        j["report"] = jsonify(r);
        emit(out, j.dump(2));
    }
    return r.verdict == StationarityVerdict::Stationary ? 0 : 1;
}

int cmd_catalog_show(const std::string& name, int lift_k, bool odd_lift,
                     const std::string& format, const std::string& out) {
    CatalogEntry e = catalog_lookup(name);
    AnalyticDisc disc = std::move(e.disc);
    if (odd_lift) disc = odd_order_lift(disc);
    if (lift_k > 1) disc = compose_power(disc, lift_k);
    if (format == "json") {
        json j;
        j["name"] = name;
        j["domain"] = e.domain.id();
        if (e.claimed_r) j["claimed_r"] = *e.claimed_r;
        if (e.exact_value) j["exact_value"] = *e.exact_value;
        j["disc"] = jsonify(disc);
        emit(out, j.dump(2));
        return 0;
    }
    std::ostringstream os;
    os << "name: " << disc.name << "\n";
    os << "domain: " << e.domain.id() << "\n";
    os << "components: " << disc.n << "\n";
    os << "order: " << disc.order << "\n";
    if (e.claimed_r) os << "claimed_r: " << fmt_full(*e.claimed_r) << "\n";
    if (e.exact_value) os << "exact_value: " << fmt_full(*e.exact_value) << "\n";
    for (size_t i = 0; i < disc.jets.size(); ++i) {
        os << "jet[" << i << "]:";
        const int top = std::min(disc.jets[i].degree(), disc.order + 4);
        for (int j = 0; j <= top; ++j) {
            const cplx c = disc.jets[i].coeff(j);
            os << " (" << fmt_full(c.real()) << "," << fmt_full(c.imag()) << ")";
        }
        if (disc.jets[i].degree() > top) os << " ...";
        os << "\n";
    }
    emit(out, os.str());
    return 0;
}

int run(int argc, char** argv) {
    const json cfg = preload_config(argc, argv);

    CLI::App app{"koblab: certified analytic-disc bounds for higher-order Kobayashi metrics"};
    app.require_subcommand(1);
    std::string config_path;

    // verify-paper
    auto* vp = app.add_subcommand("verify-paper", "run the anchored verification suite");
    int vp_grid = cfg_get(cfg, "grid_m", 4096);
    std::string vp_fault;
    std::string vp_format = cfg_get<std::string>(cfg, "format", "text");
    std::string vp_out = cfg_get<std::string>(cfg, "out", "");
    vp->add_option("--grid-m", vp_grid, "boundary grid size (power of two)");
    vp->add_option("--inject-fault", vp_fault, "corrupt the named check's input (test hook)")
        ->group("");
    vp->add_option("--format", vp_format, "text | json");
    vp->add_option("--out", vp_out, "output path (default stdout)");
    vp->add_option("--config", config_path, "JSON config file; flags take precedence");

    // estimate
    auto* es = app.add_subcommand("estimate", "search for a certified metric upper bound");
    std::string es_domain = cfg_get<std::string>(cfg, "domain", "");
    std::string es_p = cfg_get<std::string>(cfg, "p", "");
    std::string es_v = cfg_get<std::string>(cfg, "v", "");
    int es_k = cfg_get(cfg, "k", 1);
    SearchConfig es_cfg;
    es_cfg.degree = cfg_get(cfg, "degree", es_cfg.degree);
    es_cfg.restarts = cfg_get(cfg, "restarts", es_cfg.restarts);
    es_cfg.seed = cfg_seed(cfg, "seed", es_cfg.seed);
    es_cfg.grid.M = cfg_get(cfg, "grid_m", es_cfg.grid.M);
    es_cfg.push_rounds = cfg_get(cfg, "push_rounds", es_cfg.push_rounds);
    es_cfg.threads = cfg_get(cfg, "threads", es_cfg.threads);
    std::string es_warm = cfg_get<std::string>(cfg, "warm", "");
    int es_warm_lift = cfg_get(cfg, "warm_lift", 1);
    std::string es_format = cfg_get<std::string>(cfg, "format", "json");
    std::string es_out = cfg_get<std::string>(cfg, "out", "");
    es->add_option("--domain", es_domain,
                   "unit_disc | punctured_disc | polydisc[:n] | ellipsoid:<m> | half_plane | "
                   "yu_domain")
        ->required();
    es->add_option("--p", es_p, "base point, components ';'-separated, each re or re,im")
        ->required();
    es->add_option("--v", es_v, "jet direction, same syntax")->required();
    es->add_option("--k", es_k, "vanishing order");
    es->add_option("--degree", es_cfg.degree, "trailing coefficients per component");
    es->add_option("--restarts", es_cfg.restarts, "search restarts");
    es->add_option("--seed", es_cfg.seed, "search seed");
    es->add_option("--grid-m", es_cfg.grid.M, "certification grid size");
    es->add_option("--push-rounds", es_cfg.push_rounds, "radius push rounds");
    es->add_option("--threads", es_cfg.threads, "restart threads (0: KOBLAB_THREADS)");
    es->add_option("--warm", es_warm, "catalog disc used as warm start");
    es->add_option("--warm-lift", es_warm_lift, "compose the warm start with z^k");
    es->add_option("--format", es_format, "json | text");
    es->add_option("--out", es_out, "output path (default stdout)");
    es->add_option("--config", config_path, "JSON config file; flags take precedence");

    // sweep
    auto* sw = app.add_subcommand("sweep", "tabulate bounds or feasibility over a range");
    std::string sw_mode = cfg_get<std::string>(cfg, "mode", "");
    std::string sw_domain = cfg_get<std::string>(cfg, "domain", "yu_domain");
    std::string sw_p = cfg_get<std::string>(cfg, "p", "0;0;-1");
    std::string sw_v = cfg_get<std::string>(cfg, "v", "0;1;0");
    int sw_k = cfg_get(cfg, "k", 3);
    std::string sw_degrees = cfg_get<std::string>(cfg, "degrees", "");
    std::string sw_trange = cfg_get<std::string>(cfg, "t_range", "");
    std::string sw_rrange = cfg_get<std::string>(cfg, "ratio_range", "");
    SearchConfig sw_cfg;
    sw_cfg.restarts = cfg_get(cfg, "restarts", 4);
    sw_cfg.seed = cfg_seed(cfg, "seed", 1);
    sw_cfg.threads = cfg_get(cfg, "threads", 0);
    std::string sw_format = cfg_get<std::string>(cfg, "format", "csv");
    std::string sw_out = cfg_get<std::string>(cfg, "out", "");
    sw->add_option("--mode", sw_mode, "degree | feasibility")->required();
    sw->add_option("--domain", sw_domain, "search domain (degree mode)");
    sw->add_option("--p", sw_p, "base point (degree mode)");
    sw->add_option("--v", sw_v, "jet direction (degree mode)");
    sw->add_option("--k", sw_k, "vanishing order (degree mode)");
    sw->add_option("--degrees", sw_degrees, "comma-separated search degrees (degree mode)");
    sw->add_option("--t-range", sw_trange, "lo:hi:count over t (feasibility mode)");
    sw->add_option("--ratio-range", sw_rrange, "lo:hi:count over |b|/|a| (feasibility mode)");
    sw->add_option("--restarts", sw_cfg.restarts, "search restarts (degree mode)");
    sw->add_option("--seed", sw_cfg.seed, "search seed (degree mode)");
    sw->add_option("--threads", sw_cfg.threads, "restart threads (0: KOBLAB_THREADS)");
    sw->add_option("--format", sw_format, "csv | json");
    sw->add_option("--out", sw_out, "output path (default stdout)");
    sw->add_option("--config", config_path, "JSON config file; flags take precedence");

    // schwarz
    auto* sc = app.add_subcommand("schwarz", "run a sampled derivative-bound suite");
    std::string sc_lemma = cfg_get<std::string>(cfg, "lemma", "");
    int sc_k = cfg_get(cfg, "k", 1);
    int sc_samples = cfg_get(cfg, "samples", 100);
    std::uint64_t sc_seed = cfg_seed(cfg, "seed", 1);
    std::string sc_zeta0 = cfg_get<std::string>(cfg, "zeta0", "0");
    int sc_factors = cfg_get(cfg, "factors", 3);
    std::string sc_format = cfg_get<std::string>(cfg, "format", "json");
    std::string sc_out = cfg_get<std::string>(cfg, "out", "");
    sc->add_option("--lemma", sc_lemma, "basic | pick | punctured")->required();
    sc->add_option("--k", sc_k, "vanishing order");
    sc->add_option("--samples", sc_samples, "sample count");
    sc->add_option("--seed", sc_seed, "suite seed");
    sc->add_option("--zeta0", sc_zeta0, "base point for pick samples (re or re,im)");
    sc->add_option("--factors", sc_factors, "factors per sample");
    sc->add_option("--format", sc_format, "json | csv");
    sc->add_option("--out", sc_out, "output path (default stdout)");
    sc->add_option("--config", config_path, "JSON config file; flags take precedence");

    // stationarity
    auto* st = app.add_subcommand("stationarity", "verify the boundary weight condition");
    std::string st_map = cfg_get<std::string>(cfg, "map", "");
    int st_k = cfg_get(cfg, "k", 1);
    int st_grid = cfg_get(cfg, "grid_m", 4096);
    int st_cutoff = cfg_get(cfg, "cutoff", -1);
    std::string st_format = cfg_get<std::string>(cfg, "format", "json");
    std::string st_out = cfg_get<std::string>(cfg, "out", "");
    st->add_option("--map", st_map, "catalog name, e.g. ellipsoid-k1:seed=3,m=0.35")->required();
    st->add_option("--k", st_k, "stretch order applied to the map");
    st->add_option("--grid-m", st_grid, "boundary grid size (power of two)");
    st->add_option("--cutoff", st_cutoff, "weight frequency cutoff (-1: automatic)");
    st->add_option("--format", st_format, "json | text");
    st->add_option("--out", st_out, "output path (default stdout)");
    st->add_option("--config", config_path, "JSON config file; flags take precedence");

    // catalog show
    auto* cat = app.add_subcommand("catalog", "inspect named disc constructions");
    cat->require_subcommand(1);
    auto* catshow = cat->add_subcommand("show", "print a catalog disc");
    std::string cat_name;
    int cat_lift = cfg_get(cfg, "lift", 1);
    bool cat_odd = false;
    std::string cat_format = cfg_get<std::string>(cfg, "format", "text");
    std::string cat_out = cfg_get<std::string>(cfg, "out", "");
    catshow->add_option("name", cat_name, "catalog disc name")->required();
    catshow->add_option("--lift", cat_lift, "compose the disc with z^k");
    catshow->add_flag("--odd-lift", cat_odd, "apply the odd-order lift");
    catshow->add_option("--format", cat_format, "text | json");
    catshow->add_option("--out", cat_out, "output path (default stdout)");
    catshow->add_option("--config", config_path, "JSON config file; flags take precedence");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*vp) return cmd_verify_paper(vp_grid, vp_fault, vp_format, vp_out);
    if (*es)
        return cmd_estimate(es_domain, es_p, es_v, es_k, es_cfg, es_warm, es_warm_lift, es_format,
                            es_out);
    if (*sw) {
        if (sw_mode == "degree")
            return cmd_sweep_degree(sw_domain, sw_p, sw_v, sw_k, sw_degrees, sw_cfg, sw_format,
                                    sw_out);
        if (sw_mode == "feasibility")
            return cmd_sweep_feasibility(sw_trange, sw_rrange, sw_format, sw_out);
        throw UsageError("sweep: unknown mode '" + sw_mode + "'");
    }
    if (*sc)
        return cmd_schwarz(sc_lemma, sc_k, sc_samples, sc_seed, sc_zeta0, sc_factors, sc_format,
                           sc_out);
    if (*st) return cmd_stationarity(st_map, st_k, st_grid, st_cutoff, st_format, st_out);
    if (*cat) return cmd_catalog_show(cat_name, cat_lift, cat_odd, cat_format, cat_out);
    throw UsageError("no subcommand given");
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidParameter& e) {
        std::cerr << "invalid parameter: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
