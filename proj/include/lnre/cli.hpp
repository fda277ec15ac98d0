#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "datasets.hpp"
#include "divergences.hpp"
#include "error.hpp"
#include "estimators.hpp"
#include "genlik.hpp"
#include "models.hpp"
#include "study.hpp"
#include "sufficiency.hpp"

namespace lnre {

inline constexpr const char* version = "0.1.0";

struct Dataset {
    std::string name;
    std::vector<double> values;
    std::string source; // "embedded" or the csv path
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::optional<double> parse_double(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

} // namespace detail

// One value per row; a non-numeric first row is taken as a header.
inline Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::ParseError, "cannot open " + path);
    Dataset d{std::filesystem::path(path).stem().string(), {}, path};
    std::string line;
    std::size_t lineno = 0;
    bool seen_row = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        auto v = detail::parse_double(t);
        if (!v) {
            if (!seen_row && d.values.empty()) {
                seen_row = true;
                continue;
            }
            fail(Errc::ParseError, "line " + std::to_string(lineno) + ": not a number: '" + t + "'");
        }
        seen_row = true;
        d.values.push_back(*v);
    }
    if (d.values.empty()) fail(Errc::EmptyFile, path + " has no values");
    return d;
}

// Shortest representation that reads back to the same double.
inline std::string exact_str(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

inline void write_csv(const std::string& path, const std::vector<double>& values, const std::string& header = "value") {
    std::ofstream out(path);
    if (!out) fail(Errc::ParseError, "cannot write " + path);
    out << header << '\n';
    for (double v : values) out << exact_str(v) << '\n';
}

inline Dataset load_dataset(const std::string& spec) {
    if (spec == "newcomb") return {"newcomb", data::newcomb(), "embedded"};
    return load_csv(spec);
}

// Six significant digits for every table cell.
inline std::string fmt6(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> r) { rows.push_back(std::move(r)); }
    std::string render(char sep) const {
        std::ostringstream os;
        auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? std::string(1, sep) : "") << r[i];
            os << '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
        return os.str();
    }
};

struct RunManifest {
    std::string subcommand;
    std::vector<std::string> argv;
    nlohmann::json flags = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::string artifact_version = version;
    std::vector<std::string> outputs;

    nlohmann::json to_json() const {
        return {{"subcommand", subcommand}, {"argv", argv},       {"flags", flags},
                {"seed", seed},             {"version", artifact_version}, {"outputs", outputs}};
    }
    static RunManifest from_json(const nlohmann::json& j) {
        RunManifest m;
        m.subcommand = j.at("subcommand").get<std::string>();
        m.argv = j.at("argv").get<std::vector<std::string>>();
        m.flags = j.value("flags", nlohmann::json::object());
        m.seed = j.value("seed", std::uint64_t{0});
        m.artifact_version = j.value("version", std::string(version));
        m.outputs = j.value("outputs", std::vector<std::string>{});
        return m;
    }
};

// "normal:0,1", "student:mu,sigma2,nu", "bernoulli:p", "mixture:eta,mu,sigma2,nu,cmean,cvar"
inline ScalarDensity parse_model(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    std::vector<double> a;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            auto v = detail::parse_double(detail::trim(tok));
            if (!v) fail(Errc::InvalidParams, "bad number in model spec '" + spec + "'");
            a.push_back(*v);
        }
    }
    auto need = [&](std::size_t k) {
        if (a.size() != k) fail(Errc::InvalidParams, "model '" + name + "' takes " + std::to_string(k) + " numbers");
    };
    if (name == "normal") { need(2); return normal_density(a[0], a[1]); }
    if (name == "student" || name == "student-t" || name == "student-r") { need(3); return student_density({a[0], a[1], a[2]}); }
    if (name == "bernoulli") { need(1); return bernoulli_density(a[0]); }
    if (name == "mixture") { need(6); return mixture_density({a[0], {a[1], a[2], a[3]}, a[4], a[5]}); }
    fail(Errc::InvalidParams, "unknown model '" + name + "'");
}

namespace detail {

struct CliOptions {
    std::string data = "newcomb";
    std::string family = "student-t";
    double nu = 3.0;
    std::vector<double> beta;
    std::optional<double> alpha;
    std::string bandwidth = "silverman";
    std::vector<double> eta;
    std::size_t n = 50;
    std::size_t reps = 1000;
    std::uint64_t seed = 20240601;
    std::string out = ".";
    std::string format = "csv";
    std::optional<double> known_mu, known_sigma2;
    double mu = 0.0, sigma2 = 1.0;
    std::optional<double> cont_mean, cont_var;
    std::string g = "normal:0,1", f = "normal:1,1", kind = "all";
    std::vector<double> lambda;
    unsigned threads = 0;
};

inline char separator(const std::string& fmt) { return fmt == "tsv" ? '\t' : ','; }

inline void check_alpha(const CliOptions& o, double beta) {
    if (o.alpha && std::fabs(*o.alpha - student_alpha(o.nu, beta)) > 1e-12)
        fail(Errc::TuningOutOfRange, "Student families fix alpha = beta - 2/(nu+1)");
}

inline std::string write_output(const CliOptions& o, const std::string& stem, const std::string& text,
                                std::vector<std::string>& outputs) {
    std::filesystem::create_directories(o.out);
    const auto path = (std::filesystem::path(o.out) / stem).string();
    std::ofstream f(path);
    if (!f) fail(Errc::ParseError, "cannot write " + path);
    f << text;
    outputs.push_back(path);
    return path;
}

inline std::string newcomb_svg(const NewcombResult& r) {
    const double W = 720, H = 440, L = 60, R = 20, T = 20, B = 50;
    const double x0 = r.histogram.front().lower, x1 = r.histogram.back().upper;
    double ymax = 0.0;
    for (const auto& b : r.histogram) ymax = std::max(ymax, b.density);
    for (const auto& c : r.curves)
        for (double v : c) ymax = std::max(ymax, v);
    ymax *= 1.05;
    auto X = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto Y = [&](double y) { return H - B - y / ymax * (H - T - B); };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& b : r.histogram)
        s << "<rect x=\"" << fmt6(X(b.lower)) << "\" y=\"" << fmt6(Y(b.density)) << "\" width=\""
          << fmt6(X(b.upper) - X(b.lower)) << "\" height=\"" << fmt6(Y(0) - Y(b.density))
          << "\" fill=\"#d9d9d9\" stroke=\"#666\"/>\n";
    const char* colors[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d"};
    for (std::size_t k = 0; k < r.curves.size(); ++k) {
        s << "<polyline fill=\"none\" stroke=\"" << colors[k % 7] << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < r.curve_x.size(); ++i)
            s << fmt6(X(r.curve_x[i])) << ',' << fmt6(Y(r.curves[k][i])) << ' ';
        s << "\"/>\n";
        s << "<text x=\"" << W - R - 130 << "\" y=\"" << T + 16 * (k + 1) << "\" font-size=\"12\" fill=\""
          << colors[k % 7] << "\">beta = " << fmt6(r.rows[k].beta) << "</text>\n";
    }
    s << "<line x1=\"" << L << "\" y1=\"" << Y(0) << "\" x2=\"" << W - R << "\" y2=\"" << Y(0)
      << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << L << "\" y1=\"" << Y(0) << "\" x2=\"" << L << "\" y2=\"" << T << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x0 + (x1 - x0) * i / 5.0;
        s << "<text x=\"" << fmt6(X(xv)) << "\" y=\"" << H - B + 18 << "\" font-size=\"11\" text-anchor=\"middle\">"
          << fmt6(xv) << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

} // namespace detail

// Routes argv to a subcommand. Exit codes: 0 ok, 1 usage or input error, 2 numeric failure.
inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    using detail::CliOptions;
    CliOptions o;
    CLI::App app{"Minimum LNRE estimation toolkit"};
    app.require_subcommand(0, 1);
    std::string replay;
    app.add_option("--replay", replay, "Re-run the command recorded in a manifest");

    auto common = [&](CLI::App* s) {
        s->add_option("--out", o.out, "Output directory");
        s->add_option("--format", o.format, "csv|tsv|svg")->check(CLI::IsMember({"csv", "tsv", "svg"}));
    };
    auto tuning = [&](CLI::App* s) {
        s->add_option("--nu", o.nu, "Degrees of freedom (negative: r-branch)");
        s->add_option("--beta", o.beta, "Tuning beta (comma list)")->delimiter(',');
        s->add_option("--alpha", o.alpha, "Tuning alpha (Student: derived from beta and nu)");
        s->add_option("--bandwidth", o.bandwidth, "silverman or a positive number");
        s->add_option("--known-mu", o.known_mu, "Known location");
        s->add_option("--known-sigma2", o.known_sigma2, "Known squared scale");
    };

    auto* div = app.add_subcommand("divergence", "Divergences between two model densities");
    div->add_option("--g", o.g, "True density spec, e.g. normal:0,1");
    div->add_option("--f", o.f, "Model density spec, e.g. student:0,1,3");
    div->add_option("--kind", o.kind)->check(CLI::IsMember({"all", "kld", "dpd", "ldpd", "lnre"}));
    div->add_option("--alpha", o.alpha);
    div->add_option("--beta", o.beta)->delimiter(',');
    common(div);

    auto* est = app.add_subcommand("estimate", "Minimum LNRE estimates over a beta grid");
    est->add_option("--data", o.data, "CSV path or 'newcomb'");
    est->add_option("--family", o.family)->check(CLI::IsMember({"student-t", "student-r"}));
    tuning(est);
    common(est);

    auto* sim = app.add_subcommand("simulate", "Seeded contamination study");
    sim->add_option("--family", o.family)->check(CLI::IsMember({"student-t", "student-r"}));
    tuning(sim);
    sim->add_option("--eta", o.eta, "Contamination levels (comma list)")->delimiter(',');
    sim->add_option("--n", o.n);
    sim->add_option("--reps", o.reps);
    sim->add_option("--seed", o.seed);
    sim->add_option("--mu", o.mu, "True location");
    sim->add_option("--sigma2", o.sigma2, "True squared scale");
    sim->add_option("--contaminant-mean", o.cont_mean);
    sim->add_option("--contaminant-var", o.cont_var);
    sim->add_option("--threads", o.threads);
    common(sim);

    auto* nc = app.add_subcommand("newcomb", "Newcomb light-speed analysis");
    nc->add_option("--beta", o.beta)->delimiter(',');
    nc->add_option("--bandwidth", o.bandwidth);
    common(nc);

    auto* ce = app.add_subcommand("counterexample", "Bernoulli counterexample report");
    common(ce);

    auto* fi = app.add_subcommand("fisher", "Generalized Fisher information of the Bernoulli deformed family");
    fi->add_option("--lambda", o.lambda)->delimiter(',');
    fi->add_option("--alpha", o.alpha);
    fi->add_option("--beta", o.beta)->delimiter(',');
    fi->add_option("--n", o.n);
    common(fi);

    auto* ks = app.add_subcommand("ks", "Kolmogorov-Smirnov distance of a fitted model");
    ks->add_option("--data", o.data);
    ks->add_option("--family", o.family)->check(CLI::IsMember({"student-t", "student-r", "normal"}));
    ks->add_option("--nu", o.nu);
    ks->add_option("--mu", o.mu);
    ks->add_option("--sigma2", o.sigma2);
    common(ks);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    if (!replay.empty()) {
        std::ifstream in(replay);
        if (!in) {
            err << "error: cannot open manifest " << replay << '\n';
            return 1;
        }
        RunManifest m;
        try {
            m = RunManifest::from_json(nlohmann::json::parse(in));
        } catch (const std::exception& e) {
            err << "error: bad manifest: " << e.what() << '\n';
            return 1;
        }
        std::vector<const char*> args;
        for (const auto& s : m.argv) args.push_back(s.c_str());
        return dispatch(static_cast<int>(args.size()), args.data(), out, err);
    }

    CLI::App* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
    if (!sub) {
        err << app.help();
        return 1;
    }
    if (o.format == "svg" && sub != nc) {
        err << "error: --format svg is only available for newcomb\n";
        return 1;
    }

    RunManifest man;
    man.subcommand = sub->get_name();
    for (int i = 0; i < argc; ++i) man.argv.emplace_back(argv[i]);
    const char sep = detail::separator(o.format);
    const std::string ext = o.format == "tsv" ? ".tsv" : ".csv";

    try {
        Table tab;
        std::string stem = man.subcommand;
        if (sub == div) {
            const ScalarDensity g = parse_model(o.g), f = parse_model(o.f);
            const double a = o.alpha.value_or(2.0);
            const double b = o.beta.empty() ? 1.0 : o.beta.front();
            const TuningPair t(a, b);
            tab.header = {"divergence", "alpha", "beta", "value", "abs_error", "method"};
            // kld has no tuning; dpd and ldpd use alpha only
            auto emit = [&](const std::string& k, const DivergenceValue& v) {
                const bool none = k == "kld", alpha_only = k == "dpd" || k == "ldpd";
                tab.add({k, none ? "-" : fmt6(a), none ? "-" : alpha_only ? "1" : fmt6(b), fmt6(v.value), fmt6(v.abs_error),
                         v.method == DivergenceMethod::exact_sum ? "exact-sum" : "quadrature"});
            };
            if (o.kind == "all" || o.kind == "kld") emit("kld", kld(g, f));
            if (o.kind == "all" || o.kind == "dpd") emit("dpd", dpd(g, f, {a, 1.0}));
            if (o.kind == "all" || o.kind == "ldpd") emit("ldpd", ldpd(g, f, {a, 1.0}));
            if (o.kind == "all" || o.kind == "lnre") emit("lnre", lnre(g, f, t));
            man.flags = {{"g", o.g}, {"f", o.f}, {"kind", o.kind}, {"alpha", a}, {"beta", b}};
        } else if (sub == est) {
            const Dataset d = load_dataset(o.data);
            const auto rule = BandwidthRule::parse(o.bandwidth);
            if (o.beta.empty()) o.beta = {1.0};
            tab.header = {"beta", "alpha", "parameter", "estimate", "objective", "cells"};
            for (double b : o.beta) {
                detail::check_alpha(o, b);
                EstimateRecord r;
                if (o.family == "student-t") {
                    r = mlnree_student_t(d.values, o.nu, b, rule);
                } else if (o.known_mu && !o.known_sigma2) {
                    r = mlnree_student_r_scale(d.values, o.nu, *o.known_mu, b, rule);
                } else if (o.known_sigma2 && !o.known_mu) {
                    r = mlnree_student_r_location(d.values, o.nu, *o.known_sigma2, b, rule);
                } else {
                    err << "error: student-r needs exactly one of --known-mu or --known-sigma2\n";
                    return 1;
                }
                for (std::size_t k = 0; k < r.names.size(); ++k)
                    tab.add({fmt6(b), fmt6(r.alpha), r.names[k], fmt6(r.estimate[k]), fmt6(r.objective),
                             std::to_string(r.local_maximizers.size())});
            }
            man.flags = {{"data", o.data}, {"family", o.family}, {"nu", o.nu}, {"beta", o.beta},
                         {"bandwidth", o.bandwidth}};
            if (o.known_mu) man.flags["known_mu"] = *o.known_mu;
            if (o.known_sigma2) man.flags["known_sigma2"] = *o.known_sigma2;
        } else if (sub == sim) {
            StudyConfig cfg;
            cfg.n = o.n;
            cfg.M = o.reps;
            cfg.nu = o.nu;
            cfg.mu = o.mu;
            cfg.sigma2 = o.sigma2;
            cfg.seed = o.seed;
            cfg.threads = o.threads;
            cfg.bandwidth = BandwidthRule::parse(o.bandwidth);
            cfg.eta_grid = o.eta.empty() ? std::vector<double>{0.0} : o.eta;
            cfg.beta_grid = o.beta.empty() ? std::vector<double>{1.0} : o.beta;
            for (double b : cfg.beta_grid) detail::check_alpha(o, b);
            if (o.family == "student-t") {
                cfg.family = StudyFamily::student_t;
                cfg.cont_mean = 0.0;
                cfg.cont_var = 16.0;
            } else if (o.known_sigma2 && !o.known_mu) {
                cfg.family = StudyFamily::student_r_location;
                cfg.sigma2 = *o.known_sigma2;
                cfg.cont_mean = 10.0;
                cfg.cont_var = 1.0;
            } else if (o.known_mu && !o.known_sigma2) {
                cfg.family = StudyFamily::student_r_scale;
                cfg.mu = *o.known_mu;
                cfg.cont_mean = 0.0;
                cfg.cont_var = 25.0;
            } else {
                err << "error: student-r needs exactly one of --known-mu or --known-sigma2\n";
                return 1;
            }
            if (o.cont_mean) cfg.cont_mean = *o.cont_mean;
            if (o.cont_var) cfg.cont_var = *o.cont_var;
            const StudyTable st = run_contamination_study(cfg);
            tab.header = {"eta", "beta", "parameter", "mean", "se", "used", "dropped", "best"};
            for (const auto& r : st.rows)
                for (std::size_t k = 0; k < r.names.size(); ++k)
                    tab.add({fmt6(r.eta), fmt6(r.beta), r.names[k], fmt6(r.mean[k]), fmt6(r.se[k]),
                             std::to_string(r.used), std::to_string(r.dropped), r.best ? "1" : "0"});
            man.seed = o.seed;
            man.flags = {{"family", o.family}, {"nu", cfg.nu},   {"n", cfg.n},           {"reps", cfg.M},
                         {"eta", cfg.eta_grid}, {"beta", cfg.beta_grid}, {"seed", cfg.seed}, {"bandwidth", o.bandwidth},
                         {"mu", cfg.mu},       {"sigma2", cfg.sigma2}, {"contaminant_mean", cfg.cont_mean},
                         {"contaminant_var", cfg.cont_var}};
        } else if (sub == nc) {
            if (o.beta.empty()) o.beta = {0.9, 1.0, 1.5, 1.9, 2.0, 2.1};
            const NewcombResult r = newcomb_pipeline(o.beta, BandwidthRule::parse(o.bandwidth));
            const char s = o.format == "csv" ? ',' : '\t';
            const std::string e = o.format == "csv" ? ".csv" : ".tsv";
            tab.header = {"beta", "alpha", "sigma2", "ks", "best"};
            for (const auto& row : r.rows)
                tab.add({fmt6(row.beta), fmt6(row.record.alpha), fmt6(row.sigma2), fmt6(row.ks), row.best ? "1" : "0"});
            Table part;
            part.header = {"cell", "lower", "upper", "active"};
            for (std::size_t i = 0; i < r.partition.cells.size(); ++i)
                part.add({std::to_string(i + 1), fmt6(r.partition.cells[i].lower), fmt6(r.partition.cells[i].upper),
                          std::to_string(r.partition.cells[i].active.size())});
            Table hist;
            hist.header = {"lower", "upper", "count", "density"};
            for (const auto& b : r.histogram)
                hist.add({fmt6(b.lower), fmt6(b.upper), std::to_string(b.count), fmt6(b.density)});
            Table curves;
            curves.header = {"x"};
            for (const auto& row : r.rows) curves.header.push_back("beta_" + fmt6(row.beta));
            for (std::size_t i = 0; i < r.curve_x.size(); ++i) {
                std::vector<std::string> line{fmt6(r.curve_x[i])};
                for (const auto& c : r.curves) line.push_back(fmt6(c[i]));
                curves.add(line);
            }
            detail::write_output(o, "newcomb_partition" + e, part.render(s), man.outputs);
            detail::write_output(o, "newcomb_histogram.tsv", hist.render('\t'), man.outputs);
            detail::write_output(o, "newcomb_curves.tsv", curves.render('\t'), man.outputs);
            detail::write_output(o, "newcomb_figure.svg", detail::newcomb_svg(r), man.outputs);
            out << "mu = " << fmt6(r.mu) << ", bandwidth = " << fmt6(r.bandwidth) << ", cells = "
                << r.partition.cells.size() << '\n';
            man.flags = {{"beta", o.beta}, {"bandwidth", o.bandwidth}, {"format", o.format}};
            stem = "newcomb_table";
            if (o.format == "svg") {
                out << tab.render('\t');
                detail::write_output(o, stem + ".tsv", tab.render('\t'), man.outputs);
                tab.rows.clear();
            }
        } else if (sub == ce) {
            const auto r = bernoulli_counterexample();
            tab.header = {"y1", "y2", "prob"};
            for (std::size_t i = 0; i < r.outcomes.size(); ++i)
                tab.add({fmt6(r.outcomes[i][0]), fmt6(r.outcomes[i][1]), fmt6(r.probs[i])});
            out << "E[Ybar^2] = " << fmt6(r.e_ybar2) << "\nE[k^2] = " << fmt6(r.e_k2) << "\nE[Ybar] = "
                << fmt6(r.mean_ybar) << ", E[k] = " << fmt6(r.mean_k) << ", E[h] = " << fmt6(r.mean_h)
                << "\nVar(Ybar) = " << fmt6(r.var_ybar) << ", Var(k) = " << fmt6(r.var_k) << '\n'
                << (r.strict ? "Var(Ybar) > Var(k)" : "Var(Ybar) <= Var(k)") << '\n';
        } else if (sub == fi) {
            const double a = o.alpha.value_or(2.0);
            const double b = o.beta.empty() ? 1.0 : o.beta.front();
            const TuningPair t(a, b);
            if (o.lambda.empty())
                for (int i = 0; i <= 8; ++i) o.lambda.push_back(0.55 + 0.05 * i);
            const std::size_t n = sub->count("--n") ? o.n : 2;
            const auto fam = bernoulli_deformed_family(t, n);
            tab.header = {"lambda", "I_n", "I_ab", "tau", "dtau", "crlb", "var_fbar_hbar", "var_identity"};
            for (double lam : o.lambda) {
                const auto r = generalized_fisher_info(
                    fam, lam, 1e-4, [b](const Outcome& y) { return outcome_fbar_over_hbar(y, b); },
                    [b](const Outcome& y) { return outcome_hbar(y, b); }, t);
                tab.add({fmt6(lam), fmt6(r.i_n), fmt6(r.i_ab), fmt6(r.tau), fmt6(r.dtau), fmt6(r.crlb),
                         fmt6(r.var_estimator), fmt6(r.dtau * r.dtau / r.i_ab)});
            }
            man.flags = {{"alpha", a}, {"beta", b}, {"n", n}, {"lambda", o.lambda}};
        } else if (sub == ks) {
            const Dataset d = load_dataset(o.data);
            double v;
            if (o.family == "normal") {
                const ScalarDensity nd = normal_density(o.mu, o.sigma2);
                v = ks_statistic(d.values, numeric_cdf(nd, o.mu, std::sqrt(o.sigma2)));
            } else {
                v = ks_statistic(d.values, numeric_cdf(StudentParams{o.mu, o.sigma2, o.nu}));
            }
            tab.header = {"family", "mu", "sigma2", "nu", "d_ks"};
            tab.add({o.family, fmt6(o.mu), fmt6(o.sigma2), fmt6(o.nu), fmt6(v)});
            man.flags = {{"data", o.data}, {"family", o.family}, {"mu", o.mu}, {"sigma2", o.sigma2}, {"nu", o.nu}};
        }
        if (!tab.rows.empty()) {
            const std::string text = tab.render(sep);
            out << text;
            detail::write_output(o, stem + ext, text, man.outputs);
        }
        detail::write_output(o, man.subcommand + "_manifest.json", man.to_json().dump(2) + "\n", man.outputs);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        switch (e.code()) {
        case Errc::InvalidParams:
        case Errc::InvalidTuning:
        case Errc::TuningOutOfRange:
        case Errc::ParseError:
        case Errc::EmptyFile:
            return 1;
        default:
            return 2;
        }
    }
    return 0;
}

} // namespace lnre
