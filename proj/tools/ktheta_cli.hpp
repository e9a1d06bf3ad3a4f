/*
 * Copyright 2026 The ktheta Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef KTHETA_TOOLS_CLI_HPP
#define KTHETA_TOOLS_CLI_HPP

#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "checks.hpp"

namespace ktheta::cli
{

using checks::CheckReport;
using checks::ConfigError;
using checks::json;
using checks::RunConfig;

enum ExitCode : int { ok = 0, failed = 1, invalid = 2 };

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail
{

inline std::string format_double(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline void write_reports(std::ostream &os, const std::vector<CheckReport> &reports, const std::string &format)
{
    if (format == "csv") {
        os << "check,samples,max_residual,threshold,pass,ms\n";
        for (const auto &r : reports) {
            os << r.check << ',' << r.samples << ',' << format_double(r.max_residual) << ',' << format_double(r.threshold) << ','
               << (r.pass ? "true" : "false") << ',' << format_double(r.ms) << '\n';
        }
        return;
    }
    json arr = json::array();
    for (const auto &r : reports) {
        arr.push_back(checks::to_json(r));
    }
    os << arr.dump(2) << '\n';
}

/// Parses "x,y,z,t" lines; blank lines and lines starting with '#' are skipped.
inline std::vector<KTPoint> read_points(std::istream &in)
{
    std::vector<KTPoint> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream ls(line);
        std::vector<double> v;
        std::string field;
        while (std::getline(ls, field, ',')) {
            std::size_t used = 0;
            double d = 0.0;
            try {
                d = std::stod(field, &used);
            } catch (const std::exception &) {
                throw InputError("line " + std::to_string(lineno) + ": not a number: '" + field + "'");
            }
            if (field.find_first_not_of(" \t", used) != std::string::npos) {
                throw InputError("line " + std::to_string(lineno) + ": trailing characters in '" + field + "'");
            }
            v.push_back(d);
        }
        if (v.size() != 4) {
            throw InputError("line " + std::to_string(lineno) + ": expected 4 coordinates, got " + std::to_string(v.size()));
        }
        try {
            pts.push_back(KTPoint::make(v[0], v[1], v[2], v[3]));
        } catch (const std::invalid_argument &e) {
            throw InputError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return pts;
}

inline void write_embedding(std::ostream &os, int k, const std::vector<KTPoint> &pts, const TruncationPolicy &pol,
                            const std::string &format)
{
    const int dim = k * k;
    if (format == "json") {
        json arr = json::array();
        for (const auto &u : pts) {
            json coords = json::array();
            for (const auto &c : phi(k, u, pol).display()) {
                coords.push_back(checks::to_json(c));
            }
            arr.push_back(json{{"point", checks::to_json(u)}, {"coords", coords}});
        }
        os << arr.dump(2) << '\n';
        return;
    }
    os << "x,y,z,t";
    for (int c = 0; c < dim; ++c) {
        os << ",re" << c << ",im" << c;
    }
    os << '\n';
    for (const auto &u : pts) {
        os << format_double(u.x) << ',' << format_double(u.y) << ',' << format_double(u.z) << ',' << format_double(u.t);
        for (const auto &c : phi(k, u, pol).display()) {
            os << ',' << format_double(c.real()) << ',' << format_double(c.imag());
        }
        os << '\n';
    }
}

inline int exit_for(const std::vector<CheckReport> &reports)
{
    for (const auto &r : reports) {
        if (!r.pass) {
            return failed;
        }
    }
    return ok;
}

inline std::vector<CheckReport> run_named(const RunConfig &cfg, const std::vector<checks::Suite> &suites)
{
    std::vector<CheckReport> out;
    out.reserve(suites.size());
    for (const auto &s : suites) {
        out.push_back(checks::run_suite(s, cfg));
    }
    return out;
}

inline std::vector<checks::Suite> select(const std::string &prefix)
{
    std::vector<checks::Suite> out;
    for (auto &s : checks::registered_suites()) {
        if (s.name.rfind(prefix, 0) == 0) {
            out.push_back(std::move(s));
        }
    }
    return out;
}

} // namespace detail

/// Runs the tool on argv-style arguments (args[0] is the program name).
/// Reports go to `out` unless --out is given; diagnostics go to `err`.
inline int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Theta functions on the Kodaira-Thurston manifold", "ktheta"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file providing defaults for the flags below");
    app.allow_config_extras(CLI::config_extras_mode::error);

    RunConfig cfg;
    std::string points_file;
    app.add_option("--k", cfg.k, "degree of the line bundle power")->capture_default_str();
    app.add_option("--eps", cfg.epsilon, "series truncation tolerance")->capture_default_str();
    app.add_option("--samples", cfg.samples, "samples per suite")->capture_default_str();
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--grid", cfg.grid, "torus quadrature grid per side")->capture_default_str();
    app.add_option("--fd-step", cfg.fd_step, "finite-difference step")->capture_default_str();
    app.add_option("--format", cfg.format, "json or csv");
    app.add_option("--out", cfg.out, "write output to this path instead of stdout");

    auto *check = app.add_subcommand("check", "run every verification suite");
    auto *embed = app.add_subcommand("embed", "homogeneous coordinates of phi_k");
    embed->add_option("--points", points_file, "CSV file of x,y,z,t rows; sampled when absent");
    auto *rank = app.add_subcommand("rank", "real rank of the differential of phi_k");
    auto *inj = app.add_subcommand("injectivity", "image separation scan for phi_k");
    auto *pull = app.add_subcommand("pullback", "pulled-back Fubini-Study form checks");
    auto *chern = app.add_subcommand("chern", "first Chern class on the basis tori");
    auto *integ = app.add_subcommand("integrate", "integrals of the pulled-back form over the basis tori");
    for (auto *sub : {check, embed, rank, inj, pull, chern, integ}) {
        sub->fallthrough();
    }

    std::vector<const char *> argv;
    argv.reserve(args.size());
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return invalid;
    }

    std::ofstream file;
    std::ostream *dest = &out;
    try {
        cfg.validate();
        if (!cfg.out.empty()) {
            file.open(cfg.out, std::ios::binary);
            if (!file) {
                throw ConfigError("cannot open output file " + cfg.out);
            }
            dest = &file;
        }
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return invalid;
    }

    const std::string report_format = cfg.format.empty() ? "json" : cfg.format;
    std::vector<CheckReport> reports;
    if (check->parsed()) {
        reports = detail::run_named(cfg, checks::registered_suites());
    } else if (embed->parsed()) {
        std::vector<KTPoint> pts;
        try {
            if (!points_file.empty()) {
                std::ifstream in(points_file);
                if (!in) {
                    throw InputError("cannot open points file " + points_file);
                }
                pts = detail::read_points(in);
            } else {
                Sampler s(cfg.seed);
                for (int i = 0; i < cfg.samples; ++i) {
                    pts.push_back(s.fundamental_point());
                }
            }
        } catch (const InputError &e) {
            err << "error: " << e.what() << '\n';
            return invalid;
        }
        try {
            detail::write_embedding(*dest, cfg.k, pts, cfg.policy(), cfg.format.empty() ? "csv" : cfg.format);
        } catch (const std::exception &e) {
            err << "error: " << e.what() << '\n';
            return failed;
        }
        return ok;
    } else if (rank->parsed()) {
        reports = detail::run_named(cfg, detail::select("embedding.projective_rank"));
    } else if (inj->parsed()) {
        reports = detail::run_named(cfg, detail::select("embedding.injectivity"));
    } else if (pull->parsed()) {
        reports = detail::run_named(cfg, {{"symplectic.nondegeneracy", checks::symplectic_nondegeneracy},
                                          {"symplectic.structure", checks::symplectic_structure},
                                          {"symplectic.additivity", checks::symplectic_additivity},
                                          {"symplectic.closedness", checks::symplectic_closedness}});
    } else if (chern->parsed()) {
        reports = detail::run_named(cfg, detail::select("symplectic.chern."));
    } else if (integ->parsed()) {
        reports = detail::run_named(cfg, detail::select("symplectic.torus_integral."));
    }
    detail::write_reports(*dest, reports, report_format);
    return detail::exit_for(reports);
}

} // namespace ktheta::cli

#endif
