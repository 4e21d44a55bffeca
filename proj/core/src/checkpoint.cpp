#include "ksrad/checkpoint.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ksrad {

namespace {

constexpr const char* kMagic = "ksrad-checkpoint v1";

std::string hexd(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}

double parse_double(const std::string& tok, const char* key) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str())
        throw std::runtime_error(std::string("checkpoint: bad value for ") + key);
    return v;
}

} // namespace

void write_checkpoint(const std::string& path, const Checkpoint& c) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("checkpoint: cannot open '" + path + "' for writing");
    out << kMagic << "\n";
    const ModelParams& p = c.params;
    out << "n " << p.dim << "\n";
    out << "radius " << hexd(p.radius) << "\n";
    out << "kappa " << hexd(p.kappa) << "\n";
    out << "mu " << hexd(p.mu) << "\n";
    out << "eps " << hexd(p.eps) << "\n";
    out << "p " << hexd(p.p_exponent) << "\n";
    out << "q " << hexd(p.q_exponent) << "\n";
    out << "eta " << hexd(p.eta) << "\n";
    out << "cfl_safety " << hexd(p.cfl_safety) << "\n";
    out << "blowup_cap " << hexd(p.blowup_cap) << "\n";
    out << "dt_min " << hexd(p.dt_min) << "\n";
    out << "dt_max " << hexd(p.dt_max) << "\n";
    out << "cells " << c.grid_cells << "\n";
    out << "t " << hexd(c.t) << "\n";
    out << "step_count " << c.step_count << "\n";
    out << "u " << c.u.size() << "\n";
    for (double v : c.u.values) out << hexd(v) << "\n";
    if (!out) throw std::runtime_error("checkpoint: write to '" + path + "' failed");
}

Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("checkpoint: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != kMagic)
        throw std::runtime_error("checkpoint: '" + path + "' has unknown format/version");

    Checkpoint c;
    ModelParams& p = c.params;
    std::size_t expected_u = 0;
    std::string key, val;
    while (in >> key) {
        if (key == "u") {
            in >> expected_u;
            break;
        }
        if (!(in >> val)) throw std::runtime_error("checkpoint: missing value for " + key);
        if (key == "n") p.dim = std::stoi(val);
        else if (key == "radius") p.radius = parse_double(val, "radius");
        else if (key == "kappa") p.kappa = parse_double(val, "kappa");
        else if (key == "mu") p.mu = parse_double(val, "mu");
        else if (key == "eps") p.eps = parse_double(val, "eps");
        else if (key == "p") p.p_exponent = parse_double(val, "p");
        else if (key == "q") p.q_exponent = parse_double(val, "q");
        else if (key == "eta") p.eta = parse_double(val, "eta");
        else if (key == "cfl_safety") p.cfl_safety = parse_double(val, "cfl_safety");
        else if (key == "blowup_cap") p.blowup_cap = parse_double(val, "blowup_cap");
        else if (key == "dt_min") p.dt_min = parse_double(val, "dt_min");
        else if (key == "dt_max") p.dt_max = parse_double(val, "dt_max");
        else if (key == "cells") c.grid_cells = std::stoi(val);
        else if (key == "t") c.t = parse_double(val, "t");
        else if (key == "step_count") c.step_count = std::stol(val);
        else throw std::runtime_error("checkpoint: unknown key '" + key + "'");
    }
    c.u.values.reserve(expected_u);
    while (in >> val) c.u.values.push_back(parse_double(val, "u"));
    if (c.u.size() != expected_u || expected_u != static_cast<std::size_t>(c.grid_cells))
        throw std::runtime_error("checkpoint: field length mismatch in '" + path + "'");
    return c;
}

} // namespace ksrad
