#include "spinrelax/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace spinrelax {

using nlohmann::json;

std::string format_sig12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double round_sig12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

namespace {

json jnum(double x) { return json(round_sig12(x)); }

json jcomplex(const Complex& z) { return json::array({jnum(z.real()), jnum(z.imag())}); }

Complex complex_from_json(const json& j) {
    return Complex{j.at(0).get<double>(), j.at(1).get<double>()};
}

json jvec3(const Vec3& v) { return json::array({jnum(v[0]), jnum(v[1]), jnum(v[2])}); }

Vec3 vec3_from_json(const json& j) {
    return Vec3{j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

} // namespace

std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream out;
    out << "theta,gamma,regime,re1,im1,re2,im2,re3,im3,"
           "gammaL1,gammaL2,gammaL3,gammaT,ratio,"
           "lx1,ly1,lz1,lx2,ly2,lz2,lx3,ly3,lz3\n";
    for (const auto& rec : records) {
        out << format_sig12(rec.theta) << ',' << format_sig12(rec.gamma) << ','
            << regime_name(rec.report.regime);
        for (const Complex& z : rec.report.eigenvalues)
            out << ',' << format_sig12(z.real()) << ',' << format_sig12(z.imag());
        for (std::size_t k = 0; k < 3; ++k) {
            out << ',';
            if (k < rec.report.gamma_L.size()) out << format_sig12(rec.report.gamma_L[k]);
        }
        out << ',';
        if (rec.report.gamma_T) out << format_sig12(*rec.report.gamma_T);
        out << ',';
        if (rec.ratio) out << format_sig12(*rec.ratio);
        for (int k = 0; k < 3; ++k) {
            if (rec.report.directions[k]) {
                const Vec3& l = *rec.report.directions[k];
                out << ',' << format_sig12(l[0]) << ',' << format_sig12(l[1]) << ','
                    << format_sig12(l[2]);
            } else {
                out << ",,,";
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream out;
    out << "tau,rx,ry,rz\n";
    for (std::size_t k = 0; k < traj.tau.size(); ++k)
        out << format_sig12(traj.tau[k]) << ',' << format_sig12(traj.r[k][0]) << ','
            << format_sig12(traj.r[k][1]) << ',' << format_sig12(traj.r[k][2]) << '\n';
    return out.str();
}

json to_json(const SpectrumReport& rep) {
    json j;
    j["eigenvalues"] = json::array();
    for (const Complex& z : rep.eigenvalues) j["eigenvalues"].push_back(jcomplex(z));
    j["regime"] = regime_name(rep.regime);
    j["discriminant"] = jnum(rep.discriminant);
    j["gamma_L"] = json::array();
    for (double g : rep.gamma_L) j["gamma_L"].push_back(jnum(g));
    j["gamma_T"] = rep.gamma_T ? jnum(*rep.gamma_T) : json(nullptr);
    j["oscillation_freq"] =
        rep.oscillation_freq ? jnum(*rep.oscillation_freq) : json(nullptr);
    j["directions"] = json::array();
    for (const auto& d : rep.directions)
        j["directions"].push_back(d ? jvec3(*d) : json(nullptr));
    return j;
}

SpectrumReport spectrum_report_from_json(const json& j) {
    SpectrumReport rep;
    for (int i = 0; i < 3; ++i)
        rep.eigenvalues[i] = complex_from_json(j.at("eigenvalues").at(i));
    rep.regime = regime_from_name(j.at("regime").get<std::string>());
    rep.discriminant = j.at("discriminant").get<double>();
    for (const auto& g : j.at("gamma_L")) rep.gamma_L.push_back(g.get<double>());
    if (!j.at("gamma_T").is_null()) rep.gamma_T = j.at("gamma_T").get<double>();
    if (!j.at("oscillation_freq").is_null())
        rep.oscillation_freq = j.at("oscillation_freq").get<double>();
    for (int i = 0; i < 3; ++i) {
        const auto& d = j.at("directions").at(i);
        if (!d.is_null()) rep.directions[i] = vec3_from_json(d);
    }
    return rep;
}

json to_json(const SweepRecord& rec) {
    json j;
    j["theta"] = jnum(rec.theta);
    j["gamma"] = jnum(rec.gamma);
    j["eps_tilde"] = jnum(rec.params.eps_tilde);
    j["eta"] = jnum(rec.params.eta);
    j["report"] = to_json(rec.report);
    j["ratio"] = rec.ratio ? jnum(*rec.ratio) : json(nullptr);
    j["branch"] = json::array({rec.branch[0], rec.branch[1], rec.branch[2]});
    return j;
}

json to_json(const std::vector<SweepRecord>& records) {
    json j = json::array();
    for (const auto& r : records) j.push_back(to_json(r));
    return j;
}

json to_json(const BifurcationReport& rep) {
    json j;
    j["critical_thetas"] = json::array();
    for (double t : rep.critical_thetas) j["critical_thetas"].push_back(jnum(t));
    j["critical_gammas"] = json::array();
    for (double g : rep.critical_gammas) j["critical_gammas"].push_back(jnum(g));
    j["brackets"] = json::array();
    for (const auto& [lo, hi] : rep.brackets)
        j["brackets"].push_back(json::array({jnum(lo), jnum(hi)}));
    j["residual_discriminants"] = json::array();
    for (double d : rep.residual_discriminants)
        j["residual_discriminants"].push_back(jnum(d));
    j["regions"] = json::array();
    for (const auto& r : rep.regions) {
        json region;
        region["label"] = r.label;
        region["regime"] = regime_name(r.regime);
        region["theta_min"] = jnum(r.theta_lo);
        region["theta_max"] = jnum(r.theta_hi);
        j["regions"].push_back(region);
    }
    j["jumps"] = json::array();
    for (const auto& jump : rep.jumps) {
        json item;
        item["theta"] = jnum(jump.theta);
        item["from"] = jvec3(jump.from_direction);
        item["to"] = jvec3(jump.to_direction);
        item["trace"] = trace_name(jump.trace);
        j["jumps"].push_back(item);
    }
    return j;
}

BifurcationReport bifurcation_report_from_json(const json& j) {
    BifurcationReport rep;
    for (const auto& t : j.at("critical_thetas"))
        rep.critical_thetas.push_back(t.get<double>());
    for (const auto& g : j.at("critical_gammas"))
        rep.critical_gammas.push_back(g.get<double>());
    for (const auto& b : j.at("brackets"))
        rep.brackets.push_back({b.at(0).get<double>(), b.at(1).get<double>()});
    for (const auto& d : j.at("residual_discriminants"))
        rep.residual_discriminants.push_back(d.get<double>());
    for (const auto& r : j.at("regions")) {
        RegionInfo region;
        region.label = r.at("label").get<std::string>();
        region.regime = regime_from_name(r.at("regime").get<std::string>());
        region.theta_lo = r.at("theta_min").get<double>();
        region.theta_hi = r.at("theta_max").get<double>();
        rep.regions.push_back(region);
    }
    for (const auto& item : j.at("jumps")) {
        DirectionJump jump;
        jump.theta = item.at("theta").get<double>();
        jump.from_direction = vec3_from_json(item.at("from"));
        jump.to_direction = vec3_from_json(item.at("to"));
        jump.trace = item.at("trace").get<std::string>() == "upward"
                         ? TraceDirection::Upward
                         : TraceDirection::Downward;
        rep.jumps.push_back(jump);
    }
    return rep;
}

json to_json(const EquivalenceResult& r) {
    json j;
    j["suite"] = r.suite;
    j["requested"] = r.requested;
    j["evaluated"] = r.evaluated;
    j["excluded"] = r.excluded;
    j["filtered"] = r.filtered;
    j["disagreements"] = r.disagreements;
    j["min_margin"] = jnum(r.min_margin);
    j["first_counterexample"] = r.first_counterexample;
    j["passed"] = r.passed();
    return j;
}

json to_json(const GridResult& r) {
    json j;
    j["suite"] = r.suite;
    j["points"] = r.points;
    j["inequality_violations"] = r.inequality_violations;
    j["trace_violations"] = r.trace_violations;
    j["worst_slack"] = jnum(r.worst_slack);
    j["worst_trace_residual"] = jnum(r.worst_trace_residual);
    j["first_counterexample"] = r.first_counterexample;
    j["passed"] = r.passed();
    return j;
}

json to_json(const DynamicsResult& r) {
    json j;
    j["suite"] = r.suite;
    j["cases"] = r.cases;
    j["worst_oracle_deviation"] = jnum(r.worst_oracle_deviation);
    j["worst_conjugate_defect"] = jnum(r.worst_conjugate_defect);
    j["stationary_deviation"] = jnum(r.stationary_deviation);
    j["contractivity_violations"] = r.contractivity_violations;
    j["worst_decay_fit_relerr"] = jnum(r.worst_decay_fit_relerr);
    j["failures"] = r.failures;
    j["first_counterexample"] = r.first_counterexample;
    j["passed"] = r.passed();
    return j;
}

bool operator==(const SpectrumReport& a, const SpectrumReport& b) {
    if (a.eigenvalues != b.eigenvalues || a.regime != b.regime
        || a.discriminant != b.discriminant || a.gamma_L != b.gamma_L
        || a.gamma_T != b.gamma_T || a.oscillation_freq != b.oscillation_freq)
        return false;
    for (int i = 0; i < 3; ++i)
        if (a.directions[i] != b.directions[i]) return false;
    return true;
}

bool operator==(const BifurcationReport& a, const BifurcationReport& b) {
    if (a.critical_thetas != b.critical_thetas || a.critical_gammas != b.critical_gammas
        || a.brackets != b.brackets
        || a.residual_discriminants != b.residual_discriminants)
        return false;
    if (a.regions.size() != b.regions.size() || a.jumps.size() != b.jumps.size())
        return false;
    for (std::size_t i = 0; i < a.regions.size(); ++i) {
        const auto& x = a.regions[i];
        const auto& y = b.regions[i];
        if (x.label != y.label || x.regime != y.regime || x.theta_lo != y.theta_lo
            || x.theta_hi != y.theta_hi)
            return false;
    }
    for (std::size_t i = 0; i < a.jumps.size(); ++i) {
        const auto& x = a.jumps[i];
        const auto& y = b.jumps[i];
        if (x.theta != y.theta || x.from_direction != y.from_direction
            || x.to_direction != y.to_direction || x.trace != y.trace)
            return false;
    }
    return true;
}

} // namespace spinrelax
