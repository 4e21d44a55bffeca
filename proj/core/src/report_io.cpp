#include "ksrad/report_io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ksrad {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

const char* kCsvColumns =
    "t,dt,mass,lp,linf,grad_q,grad_q_eta,up_int,up1_int,diss_p,vmin,clip_mass,"
    "face_bound_margin,mass_identity_err,int_linf,int_linf_pow,bound_mass,bound_lp,"
    "bound_linf,bound_gradq_log,margin_mass,margin_lp,margin_residual,margin_linf,"
    "margin_gradq,margin_radial,margin_nonneg,margin_masslaw";

} // namespace

std::string records_csv_string(const std::vector<DiagnosticRecord>& records,
                               const std::vector<std::string>& config_echo) {
    std::ostringstream out;
    out << "# " << kCsvFormat << "\n";
    out << "# " << kVersion << "\n";
    for (const auto& line : config_echo) out << "# cfg " << line << "\n";
    out << kCsvColumns << "\n";
    for (const auto& r : records) {
        out << format_double(r.t) << ',' << format_double(r.dt) << ',' << format_double(r.mass)
            << ',' << format_double(r.lp) << ',' << format_double(r.linf) << ','
            << format_double(r.grad_q) << ',' << format_double(r.grad_q_eta) << ','
            << format_double(r.up_int) << ',' << format_double(r.up1_int) << ','
            << format_double(r.diss_p) << ',' << format_double(r.vmin) << ','
            << format_double(r.clip_mass) << ',' << format_double(r.face_bound_margin) << ','
            << format_double(r.mass_identity_err) << ',' << format_double(r.int_linf) << ','
            << format_double(r.int_linf_pow) << ',' << format_double(r.bound_mass) << ','
            << format_double(r.bound_lp) << ',' << format_double(r.bound_linf) << ','
            << format_double(r.bound_gradq_log);
        for (double m : r.margins) out << ',' << format_double(m);
        out << "\n";
    }
    return out.str();
}

void write_records_csv(const std::string& path, const std::vector<DiagnosticRecord>& records,
                       const std::vector<std::string>& config_echo) {
    write_text_file(path, records_csv_string(records, config_echo));
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

namespace {

nlohmann::json check_summary_json(const CheckSummary& s) {
    nlohmann::json checks;
    for (int i = 0; i < kNumChecks; ++i) {
        const auto& c = s.checks[i];
        if (!c.enabled) {
            checks[check_name(static_cast<CheckId>(i))] = {{"enabled", false}};
            continue;
        }
        checks[check_name(static_cast<CheckId>(i))] = {
            {"enabled", true},
            {"pass", c.violations == 0},
            {"evaluations", c.evaluations},
            {"violations", c.violations},
            {"worst_margin", std::isfinite(c.worst_margin) ? c.worst_margin : 0.0},
            {"first_violation_t", c.first_violation_t},
        };
    }
    checks["_aggregates"] = {
        {"worst_lp_slack", s.worst_lp_slack},
        {"worst_residual_excess", s.worst_residual_excess},
        {"worst_mass_identity", s.worst_mass_identity},
    };
    return checks;
}

} // namespace

std::string suite_summary_json(const SuiteReport& report, std::uint64_t seed,
                               const std::vector<std::string>& config_echo) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["seed"] = seed;
    j["config"] = config_echo;
    j["total_violations"] = report.total_violations;
    nlohmann::json scenarios = nlohmann::json::array();
    for (const auto& r : report.results) {
        scenarios.push_back({
            {"name", r.name},
            {"status", to_string(r.status)},
            {"t_reached", r.t_reached},
            {"max_linf", r.max_linf},
            {"K_hat", r.K_hat},
            {"grid", {{"n", r.grid.dim}, {"radius", r.grid.radius}, {"cells", r.grid.cells}}},
            {"checks", check_summary_json(r.checks)},
        });
    }
    j["scenarios"] = scenarios;
    return j.dump(2) + "\n";
}

std::string sweep_summary_json(const EpsSweepResult& sweep,
                               const std::vector<std::string>& config_echo) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["config"] = config_echo;
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& l : sweep.levels)
        levels.push_back({{"eps", l.eps},
                          {"status", to_string(l.status)},
                          {"t_reached", l.t_reached},
                          {"max_linf", l.max_linf}});
    j["levels"] = levels;
    j["distances"] = sweep.distances;
    j["cauchy_ratios"] = sweep.cauchy_ratios;
    j["pair_truncated"] = sweep.pair_truncated;
    j["distance_matrix"] = sweep.distance_matrix;
    return j.dump(2) + "\n";
}

std::string scan_summary_json(const BlowupScanResult& scan,
                              const std::vector<std::string>& config_echo) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["config"] = config_echo;
    nlohmann::json per_eps = nlohmann::json::array();
    for (const auto& l : scan.per_eps)
        per_eps.push_back({{"eps", l.eps},
                           {"status", to_string(l.status)},
                           {"t_reached", l.t_reached},
                           {"max_linf", l.max_linf}});
    j["per_eps"] = per_eps;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : scan.rows)
        rows.push_back({{"M", r.M},
                        {"exceeded", r.exceeded},
                        {"eps0_of_M", r.eps0_of_M},
                        {"t_eps", r.t_eps},
                        {"r_eps", r.r_eps},
                        {"value", r.value}});
    j["threshold_table"] = rows;
    return j.dump(2) + "\n";
}

std::string svg_line_plot(const std::string& title, const std::vector<PlotSeries>& series,
                          bool log_y) {
    const double W = 720, H = 420, ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto ty = [&](double y) { return log_y ? std::log10(std::max(y, 1e-300)) : y; };
    for (const auto& s : series)
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            if (!std::isfinite(s.x[k]) || !std::isfinite(ty(s.y[k]))) continue;
            xmin = std::min(xmin, s.x[k]);
            xmax = std::max(xmax, s.x[k]);
            ymin = std::min(ymin, ty(s.y[k]));
            ymax = std::max(ymax, ty(s.y[k]));
        }
    if (xmax <= xmin) { xmax = xmin + 1.0; }
    if (ymax <= ymin) { ymax = ymin + 1.0; }
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (ty(y) - ymin) / (ymax - ymin) * (H - mt - mb); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::ostringstream out;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
        << (log_y ? " (log y)" : "") << "</text>\n";
    out << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='" << H - mb
        << "' stroke='black'/>\n";
    out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
        << "' stroke='black'/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double x = xmin + k * (xmax - xmin) / 4.0;
        const double yv = ymin + k * (ymax - ymin) / 4.0;
        out << "<text x='" << px(x) << "' y='" << H - mb + 18
            << "' text-anchor='middle' font-size='11'>" << format_double(std::round(x * 1e6) / 1e6)
            << "</text>\n";
        out << "<text x='" << ml - 6 << "' y='" << H - mb - k * (H - mt - mb) / 4.0 + 4
            << "' text-anchor='end' font-size='11'>"
            << format_double(std::round(yv * 1e6) / 1e6) << "</text>\n";
    }
    int ci = 0;
    for (const auto& s : series) {
        out << "<polyline fill='none' stroke='" << colors[ci % 5] << "' stroke-width='1.5' points='";
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            if (!std::isfinite(s.x[k]) || !std::isfinite(ty(s.y[k]))) continue;
            out << px(s.x[k]) << ',' << py(s.y[k]) << ' ';
        }
        out << "'/>\n";
        out << "<text x='" << W - mr - 8 << "' y='" << mt + 16 * ci
            << "' text-anchor='end' font-size='12' fill='" << colors[ci % 5] << "'>" << s.label
            << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace ksrad
