#pragma once

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "domains.hpp"
#include "metrics.hpp"
#include "schwarz.hpp"
#include "stationarity.hpp"

namespace koblab {

// All records use ordered_json so field order (and therefore the emitted
// bytes) is stable across runs; complex numbers serialize as [re, im].
using json = nlohmann::ordered_json;

inline json jsonify(cplx z) { return json::array({z.real(), z.imag()}); }

inline json jsonify(const CVec& v) {
    json a = json::array();
    for (const cplx& z : v) a.push_back(jsonify(z));
    return a;
}

inline json jsonify(const ComplexSeries& s) {
    json a = json::array();
    for (int j = 0; j <= s.degree(); ++j) a.push_back(jsonify(s.coeff(j)));
    return a;
}

inline json jsonify(const JetResidualReport& r) {
    json j;
    j["dist_p"] = r.dist_p;
    j["lower_defect"] = r.lower_defect;
    j["r_ls"] = r.r_ls;
    j["parallel_defect"] = r.parallel_defect;
    return j;
}

inline json jsonify(const ContainmentReport& r) {
    json j;
    j["verdict"] = verdict_name(r.verdict);
    j["max_rho"] = r.max_rho;
    j["margin"] = r.margin;
    j["ladder"] = r.ladder;
    j["per_radius_max"] = r.per_radius_max;
    j["boundary_extrapolation"] = r.boundary_extrapolation;
    if (std::isfinite(r.min_modulus)) {
        j["min_modulus"] = r.min_modulus;
        j["winding"] = r.winding;
    }
    j["grid_M"] = r.grid_M;
    return j;
}

inline json jsonify(const AnalyticDisc& f) {
    json j;
    j["name"] = f.name;
    j["n"] = f.n;
    j["order"] = f.order;
    json jets = json::array();
    for (const ComplexSeries& s : f.jets) jets.push_back(jsonify(s));
    j["jets"] = jets;
    return j;
}

inline json jsonify(const SearchConfig& c) {
    json j;
    j["degree"] = c.degree;
    j["restarts"] = c.restarts;
    j["seed"] = std::to_string(c.seed);
    j["grid_M"] = c.grid.M;
    j["ladder"] = c.grid.ladder;
    j["opt_grid"] = c.opt_grid;
    j["final_grid"] = c.final_grid;
    j["push_rounds"] = c.push_rounds;
    j["threads"] = c.threads;
    return j;
}

inline json estimate_record(const ModelDomain& d, const JetTarget& t, const MetricEstimate& e) {
    json j;
    j["domain"] = d.id();
    j["p"] = jsonify(t.p);
    j["v"] = jsonify(t.v);
    j["k"] = t.k;
    j["value"] = e.value;
    j["kind"] = bound_kind_name(e.kind);
    j["r"] = e.r_best;
    if (e.lower_bound) j["lower_bound"] = *e.lower_bound;
    j["witness_source"] = e.witness_source;
    j["witness"] = jsonify(e.witness);
    j["jet"] = jsonify(e.jet);
    j["containment"] = jsonify(e.containment);
    j["config"] = jsonify(e.config);
    return j;
}

inline json jsonify(const StationarityReport& r) {
    json j;
    j["verdict"] = stationarity_verdict_name(r.verdict);
    j["residual"] = r.residual;
    j["positivity_margin"] = r.positivity_margin;
    j["cutoff"] = r.cutoff;
    j["excluded"] = r.excluded;
    j["grid_M"] = r.grid_M;
    double cmin = 0.0, cmax = 0.0;
    if (!r.c.empty()) {
        auto [lo, hi] = std::minmax_element(r.c.begin(), r.c.end());
        cmin = *lo;
        cmax = *hi;
    }
    j["weight_min"] = cmin;
    j["weight_max"] = cmax;
    return j;
}

inline json jsonify(const SchwarzReport& r) {
    json j;
    j["max_violation"] = r.max_violation;
    j["equality_gap"] = r.equality_gap;
    j["equality"] = equality_status_name(r.equality);
    j["theta"] = r.theta;
    j["reconstruction_error"] = r.reconstruction_error;
    return j;
}

inline json jsonify(const SchwarzSuiteResult& r) {
    json j;
    j["lemma"] = r.lemma;
    j["samples"] = r.samples;
    j["violations"] = r.violations;
    j["worst"] = r.worst;
    j["confirmed"] = r.confirmed;
    j["near"] = r.near;
    json rows = json::array();
    for (const SchwarzSuiteRow& row : r.rows) {
        json x;
        x["index"] = row.index;
        x["seed"] = std::to_string(row.seed);
        x["max_violation"] = row.max_violation;
        x["equality_gap"] = row.equality_gap;
        x["status"] = equality_status_name(row.status);
        rows.push_back(std::move(x));
    }
    j["rows"] = std::move(rows);
    return j;
}

// --- anchored check records --------------------------------------------------------

// One verified claim: `anchor` records the closed-form quantity or construction
// the check pins down, so a failing record is self-describing.
struct PaperCheck {
    std::string id;
    std::string anchor;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct PaperReport {
    std::vector<PaperCheck> checks;

    bool verdict() const {
        for (const PaperCheck& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

inline json jsonify(const PaperCheck& c) {
    json j;
    j["id"] = c.id;
    j["anchor"] = c.anchor;
    j["measured"] = c.measured;
    j["expected"] = c.expected;
    j["tolerance"] = c.tolerance;
    j["pass"] = c.pass;
    return j;
}

inline json jsonify(const PaperReport& r) {
    json j;
    json checks = json::array();
    for (const PaperCheck& c : r.checks) checks.push_back(jsonify(c));
    j["checks"] = std::move(checks);
    j["verdict"] = r.verdict() ? "pass" : "fail";
    return j;
}

// --- text and CSV formatting -------------------------------------------------------

inline std::string fmt_full(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

inline std::string check_line(const PaperCheck& c) {
    std::ostringstream os;
    os << (c.pass ? "[PASS] " : "[FAIL] ") << std::left << std::setw(24) << c.id
       << " measured=" << std::setprecision(12) << c.measured << " expected=" << c.expected
       << " tol=" << c.tolerance << "  (" << c.anchor << ")";
    return os.str();
}

inline std::string format_text(const PaperReport& r) {
    std::ostringstream os;
    for (const PaperCheck& c : r.checks) os << check_line(c) << "\n";
    os << "verdict: " << (r.verdict() ? "pass" : "fail") << "\n";
    return os.str();
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string str() const {
        std::ostringstream os;
        for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
        os << "\n";
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
            os << "\n";
        }
        return os.str();
    }
};

inline CsvTable csv_of_suite(const SchwarzSuiteResult& r) {
    CsvTable t;
    t.header = {"index", "seed", "max_violation", "equality_gap", "status"};
    for (const SchwarzSuiteRow& row : r.rows)
        t.rows.push_back({std::to_string(row.index), std::to_string(row.seed),
                          fmt_full(row.max_violation), fmt_full(row.equality_gap),
                          equality_status_name(row.status)});
    return t;
}

} // namespace koblab
