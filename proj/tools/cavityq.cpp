// Command-line front end: observable reports, coupling sweeps as CSV,
// Q-function sampling on grids, and the oracle verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain
// error (threshold divergence, truncation, convergence, undefined
// correlation), 4 I/O error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cavityq/cavityq.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;

struct ParamFlags {
    double kappa = 1.0;
    double gamma = 0.0;
    double epsilon = 0.0;
};

// Shared --kappa/--gamma/--epsilon flags plus a `key = value` config file;
// command-line flags take priority over file entries.
void add_param_flags(CLI::App& cmd, ParamFlags& pf) {
    cmd.add_option("--kappa", pf.kappa, "cavity damping rate")->capture_default_str();
    cmd.add_option("--gamma", pf.gamma, "parametric coupling")->capture_default_str();
    cmd.add_option("--epsilon", pf.epsilon, "coherent drive amplitude")->capture_default_str();
    cmd.set_config("--config", "", "read options from a key = value file");
}

cavityq::SystemParams to_params(const ParamFlags& pf) {
    return {pf.kappa, pf.gamma, pf.epsilon};
}

double parse_config_value(const std::string& key, const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || text.empty())
        throw cavityq::MalformedInput("config file: '" + key + "' has non-numeric value '"
                                      + text + "'");
    return v;
}

// CLI11 reads a config file only for the top-level parse, so a subcommand's
// --config would otherwise be ignored silently; the file is applied here
// instead. Command-line flags keep priority over file entries.
void apply_config_file(CLI::App& cmd, ParamFlags& pf) {
    const CLI::Option* copt = cmd.get_config_ptr();
    if (copt == nullptr || copt->count() == 0)
        return;
    const std::string path = copt->as<std::string>();
    std::vector<CLI::ConfigItem> items;
    try {
        items = cmd.get_config_formatter()->from_file(path);
    } catch (const CLI::FileError&) {
        throw cavityq::MalformedInput("config file '" + path + "' cannot be read");
    }
    for (const CLI::ConfigItem& item : items) {
        double* slot = nullptr;
        if (item.name == "kappa")
            slot = &pf.kappa;
        else if (item.name == "gamma")
            slot = &pf.gamma;
        else if (item.name == "epsilon")
            slot = &pf.epsilon;
        if (slot == nullptr || !item.parents.empty() || item.inputs.size() != 1)
            throw cavityq::MalformedInput("config file: unknown entry '" + item.fullname()
                                          + "'");
        if (cmd.count("--" + item.name) == 0)
            *slot = parse_config_value(item.name, item.inputs.front());
    }
}

// One observable line in text mode, one cell in csv mode.
struct StatField {
    std::string name;
    std::string value;
};

std::string fmt(double v) { return cavityq::format_double(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }

// --- stats ----------------------------------------------------------------

struct StatsFlags {
    ParamFlags params;
    double time = 0.0;
    bool steady = false;
    bool has_time = false;
    std::string format = "text";
};

int run_stats(const StatsFlags& f) {
    const cavityq::SystemParams p = to_params(f.params);
    const cavityq::ThresholdClass tc = cavityq::validate(p);
    const cavityq::TimePoint tp =
        f.steady ? cavityq::TimePoint::steady() : cavityq::TimePoint::at(f.time);

    if (tc.regime == cavityq::ThresholdRegime::AboveThreshold)
        throw cavityq::ThresholdDivergence("no steady state above threshold (gamma > kappa/2)");
    const bool at_threshold = tc.regime == cavityq::ThresholdRegime::AtThreshold;

    std::vector<StatField> fields;
    fields.push_back({"kappa", fmt(p.kappa)});
    fields.push_back({"gamma", fmt(p.gamma)});
    fields.push_back({"epsilon", fmt(p.epsilon)});
    fields.push_back({"time", f.steady ? "steady" : fmt(f.time)});

    if (at_threshold) {
        // the photon number of the parametric pair diverges at threshold;
        // report the divergent entries as inf and keep the finite limits
        const double inf = std::numeric_limits<double>::infinity();
        fields.push_back({"mean_photon", fmt(inf)});
        fields.push_back({"photon_variance", fmt(inf)});
        std::cerr << "warning: at threshold (kappa = 2 gamma) the photon statistics diverge;"
                  << " reporting inf\n";
    } else {
        const cavityq::PhotonStatistics ps = cavityq::photon_statistics(p, tp);
        fields.push_back({"mean_photon", fmt(ps.mean)});
        fields.push_back({"photon_variance", fmt(ps.variance)});
    }

    const cavityq::QuadratureReport qr = cavityq::quadrature_report(p);
    if (qr.minus_divergent)
        std::cerr << "warning: minus quadrature variance diverges at threshold; reporting inf\n";

    // the vacuum has no intensity correlations; report nan rather than fail
    bool has_g2 = true;
    cavityq::EntanglementReport er{};
    try {
        er = cavityq::epr_report(p);
    } catch (const cavityq::UndefinedCorrelation&) {
        has_g2 = false;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        er.g2_a = er.g2_b = er.g2_ab = er.cs_lhs = er.cs_rhs = nan;
        er.cs_satisfied = false;
        er.epr_sum = qr.plus_var;
        er.entangled = er.epr_sum < 4.0;
        er.degree = er.epr_sum / 4.0;
        std::cerr << "warning: g2 correlations of the vacuum are undefined; reporting nan\n";
    }

    fields.push_back({"g2_a", fmt(er.g2_a)});
    fields.push_back({"g2_b", fmt(er.g2_b)});
    fields.push_back({"g2_ab", fmt(er.g2_ab)});
    fields.push_back({"cs_lhs", fmt(er.cs_lhs)});
    fields.push_back({"cs_rhs", fmt(er.cs_rhs)});
    fields.push_back({"cs_satisfied", has_g2 ? fmt(er.cs_satisfied) : "nan"});
    fields.push_back({"plus_var", fmt(qr.plus_var)});
    fields.push_back({"minus_var", fmt(qr.minus_var)});
    fields.push_back({"squeezing", fmt(qr.squeezing)});
    fields.push_back({"epr_sum", fmt(er.epr_sum)});
    fields.push_back({"degree", fmt(er.degree)});
    fields.push_back({"entangled", fmt(er.entangled)});

    if (f.format == "csv") {
        for (std::size_t i = 0; i < fields.size(); ++i)
            std::cout << (i ? "," : "") << fields[i].name;
        std::cout << '\n';
        for (std::size_t i = 0; i < fields.size(); ++i)
            std::cout << (i ? "," : "") << fields[i].value;
        std::cout << '\n';
    } else {
        for (const StatField& field : fields)
            std::cout << field.name << " = " << field.value << '\n';
    }
    return kExitOk;
}

// --- sweep ------------------------------------------------------------------

struct SweepFlags {
    ParamFlags params;
    double gamma_min = 0.0;
    std::optional<double> gamma_max;
    int steps = 101;
    std::vector<std::string> observables;
    std::string out;
};

int run_sweep(const SweepFlags& f) {
    cavityq::SweepSpec spec;
    spec.kappa = f.params.kappa;
    spec.epsilon = f.params.epsilon;
    spec.gamma_min = f.gamma_min;
    spec.gamma_max = f.gamma_max.value_or(0.5 * f.params.kappa);
    spec.steps = f.steps;
    if (!f.observables.empty()) {
        spec.observables.clear();
        for (const std::string& name : f.observables)
            spec.observables.push_back(cavityq::parse_observable(name));
    }

    const std::vector<cavityq::SweepRow> rows = cavityq::run_sweep(spec);

    for (const cavityq::SweepRow& row : rows)
        for (std::size_t i = 0; i < row.values.size(); ++i)
            if (!std::isfinite(row.values[i])) {
                std::cerr << "warning: " << cavityq::observable_name(spec.observables[i])
                          << " is not finite at gamma = " << fmt(row.gamma) << '\n';
            }

    std::ofstream os(f.out, std::ios::binary);
    if (!os) {
        std::cerr << "error: cannot open " << f.out << " for writing\n";
        return kExitIo;
    }
    cavityq::write_sweep_csv(os, spec, rows);
    os.flush();
    if (!os) {
        std::cerr << "error: failed writing " << f.out << '\n';
        return kExitIo;
    }
    return kExitOk;
}

// --- qfunc ------------------------------------------------------------------

struct GridSpec {
    double min = -6.0;
    double max = 6.0;
    int count = 201;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(text);
    if (!(in >> g.min >> colon1 >> g.max >> colon2 >> g.count) || colon1 != ':' || colon2 != ':'
        || !in.eof())
        throw cavityq::MalformedInput("grid must be min:max:count, got '" + text + "'");
    if (!(g.min < g.max) || g.count < 2)
        throw cavityq::MalformedInput("grid needs min < max and count >= 2");
    return g;
}

struct QfuncFlags {
    ParamFlags params;
    std::string grid = "-6:6:201";
    bool marginal = false;
    double time = 0.0;
    bool has_time = false;
    std::string out;
};

int run_qfunc(const QfuncFlags& f) {
    const cavityq::SystemParams p = to_params(f.params);
    cavityq::validate(p);
    const cavityq::TimePoint tp =
        f.has_time ? cavityq::TimePoint::at(f.time) : cavityq::TimePoint::steady();
    const GridSpec g = parse_grid(f.grid);

    // with no parametric coupling the field is the coherent pair alone; with
    // coupling the Gaussian exists only below threshold
    const cavityq::GaussianQ coh = cavityq::coherent_qfunction(p, tp);
    cavityq::GaussianQ sup = coh;
    if (p.gamma > 0.0) {
        cavityq::require_subthreshold(p);
        sup = cavityq::superpose(coh, cavityq::subharmonic_qfunction(p));
    }

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!f.out.empty()) {
        file.open(f.out, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open " << f.out << " for writing\n";
            return kExitIo;
        }
        os = &file;
    }

    const auto axis = [&](int i) {
        return g.min + (g.max - g.min) * static_cast<double>(i) / (g.count - 1);
    };

    if (f.marginal) {
        const cavityq::MarginalGaussianQ mg = cavityq::marginal(sup);
        *os << "re_alpha,im_alpha,Q\n";
        for (int i = 0; i < g.count; ++i)
            for (int j = 0; j < g.count; ++j) {
                const double x = axis(i), y = axis(j);
                *os << fmt(x) << ',' << fmt(y) << ',' << fmt(mg({x, y})) << '\n';
            }
    } else {
        *os << "re_a,im_a,re_b,im_b,Q\n";
        for (int i = 0; i < g.count; ++i)
            for (int j = 0; j < g.count; ++j)
                for (int k = 0; k < g.count; ++k)
                    for (int l = 0; l < g.count; ++l) {
                        const std::complex<double> alpha(axis(i), axis(j));
                        const std::complex<double> beta(axis(k), axis(l));
                        *os << fmt(alpha.real()) << ',' << fmt(alpha.imag()) << ','
                            << fmt(beta.real()) << ',' << fmt(beta.imag()) << ','
                            << fmt(sup(alpha, beta)) << '\n';
                    }
    }
    os->flush();
    if (!*os) {
        std::cerr << "error: failed writing output\n";
        return kExitIo;
    }
    return kExitOk;
}

// --- verify -----------------------------------------------------------------

struct VerifyFlags {
    ParamFlags params;
    int fock_dim = 15;
    int fock_dim_coherent = 8;
    double tol = 1e-4;
    bool no_fock = false;
};

int run_verify(const VerifyFlags& f) {
    cavityq::VerifyOptions opt;
    opt.fock_dim = f.fock_dim;
    opt.fock_dim_coherent = f.fock_dim_coherent;
    opt.tol = f.tol;
    opt.with_fock = !f.no_fock;

    const std::vector<cavityq::CheckResult> results =
        cavityq::run_verification(to_params(f.params), opt);

    bool all_pass = true;
    for (const cavityq::CheckResult& r : results) {
        std::cout << "CHECK " << r.name << ' ' << fmt(r.measured) << ' ' << fmt(r.tolerance)
                  << ' ' << (r.pass ? "PASS" : "FAIL") << '\n';
        all_pass = all_pass && r.pass;
    }
    std::cout << (all_pass ? "VERIFIED" : "FAILED") << ' ' << results.size() << " checks\n";
    return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cavity light statistics: superposed coherent and subharmonic two-mode fields"};
    app.require_subcommand(1);

    StatsFlags stats;
    CLI::App* cmd_stats = app.add_subcommand("stats", "print the observable report");
    add_param_flags(*cmd_stats, stats.params);
    CLI::Option* time_opt =
        cmd_stats->add_option("--time", stats.time, "evaluate the transient at this time");
    CLI::Option* steady_opt =
        cmd_stats->add_flag("--steady", stats.steady, "evaluate the steady state");
    time_opt->excludes(steady_opt);
    steady_opt->excludes(time_opt);
    cmd_stats->add_option("--format", stats.format, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}))
        ->capture_default_str();

    SweepFlags sweep;
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "write a gamma sweep as CSV");
    add_param_flags(*cmd_sweep, sweep.params);
    cmd_sweep->add_option("--gamma-min", sweep.gamma_min, "sweep start")->capture_default_str();
    cmd_sweep->add_option("--gamma-max", sweep.gamma_max, "sweep end (default kappa/2)");
    cmd_sweep->add_option("--steps", sweep.steps, "grid points, endpoints included")
        ->capture_default_str();
    cmd_sweep->add_option("--observables", sweep.observables,
                          "comma-separated subset of plus_var,minus_var,squeezing,epr_sum,"
                          "mean_photon,photon_variance,g2_a,g2_ab")
        ->delimiter(',');
    cmd_sweep->add_option("--out", sweep.out, "output CSV path")->required();

    QfuncFlags qfunc;
    CLI::App* cmd_qfunc = app.add_subcommand("qfunc", "sample the Q function on a grid");
    add_param_flags(*cmd_qfunc, qfunc.params);
    cmd_qfunc->add_option("--grid", qfunc.grid, "axis grid as min:max:count")
        ->capture_default_str();
    cmd_qfunc->add_flag("--marginal", qfunc.marginal, "single-mode marginal instead of the pair");
    CLI::Option* q_time =
        cmd_qfunc->add_option("--time", qfunc.time, "transient drive time (default steady)");
    cmd_qfunc->add_flag("--steady", "evaluate the steady state (the default)")->excludes(q_time);
    cmd_qfunc->add_option("--out", qfunc.out, "output CSV path (default stdout)");

    VerifyFlags verify;
    CLI::App* cmd_verify = app.add_subcommand("verify", "run the oracle verification suite");
    add_param_flags(*cmd_verify, verify.params);
    cmd_verify->add_option("--fock-dim", verify.fock_dim, "Fock truncation of the parametric run")
        ->capture_default_str();
    cmd_verify
        ->add_option("--fock-dim-coherent", verify.fock_dim_coherent,
                     "Fock truncation of the driven run")
        ->capture_default_str();
    cmd_verify->add_option("--tol", verify.tol, "tolerance of the oracle comparisons")
        ->capture_default_str();
    cmd_verify->add_flag("--no-fock", verify.no_fock, "skip the master-equation checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    stats.has_time = time_opt->count() > 0;
    qfunc.has_time = q_time->count() > 0;
    if (cmd_stats->parsed() && !stats.has_time && !stats.steady) {
        std::cerr << "error: stats needs exactly one of --time or --steady\n";
        return kExitUsage;
    }

    try {
        apply_config_file(*cmd_stats, stats.params);
        apply_config_file(*cmd_sweep, sweep.params);
        apply_config_file(*cmd_qfunc, qfunc.params);
        apply_config_file(*cmd_verify, verify.params);
        if (cmd_stats->parsed())
            return run_stats(stats);
        if (cmd_sweep->parsed())
            return run_sweep(sweep);
        if (cmd_qfunc->parsed())
            return run_qfunc(qfunc);
        if (cmd_verify->parsed())
            return run_verify(verify);
    } catch (const cavityq::ThresholdDivergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const cavityq::TruncationTooSmall& e) {
        std::cerr << "error: " << e.what() << '\n'
                  << "hint: raise --fock-dim so the basis holds the photon number"
                  << " 4*gamma^2/(kappa^2 - 4*gamma^2) with room to spare\n";
        return kExitDomain;
    } catch (const cavityq::NoConvergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const cavityq::UndefinedCorrelation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const cavityq::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
