// l2approx: command-line front end over problem files.
#include "l2approx/approx.hpp"
#include "l2approx/error.hpp"
#include "l2approx/io.hpp"
#include "l2approx/orelocal.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace l2approx;

namespace {

enum Exit { kOk = 0, kFailure = 1, kIndeterminate = 2 };

struct Common {
    std::string problem;
    std::string out;
    std::string levels;
    std::string tol;
    int jobs = 0;
    std::string format = "csv";
    bool timing = false;
};

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

/// Parses "a..b" (or a single "a") into an inclusive range.
std::pair<int, int> parse_levels(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int a = std::stoi(text);
            return {a, a};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw Error("--levels expects a..b, got '" + text + "'");
    }
}

Problem load(const Common& c) {
    Problem p = load_problem(c.problem);
    if (!c.tol.empty()) {
        p.tol = parse_rational(c.tol);
        if (p.tol <= 0) throw Error("--tol must be positive");
    }
    if (!c.levels.empty() && p.scheme) {
        const auto [a, b] = parse_levels(c.levels);
        if (a < 1 || b < a) throw Error("--levels needs 1 <= a <= b");
        if (p.scheme->kind == Scheme::Folner) {
            p.scheme->first = a;
            p.scheme->last = b;
        } else {
            if (b > static_cast<int>(p.scheme->quotients.size())) {
                throw Error("--levels " + c.levels + " exceeds the " + std::to_string(p.scheme->quotients.size()) +
                            " quotient levels in the problem");
            }
            p.scheme->quotients = std::vector<QuotientLevelSpec>(p.scheme->quotients.begin() + (a - 1),
                                                                 p.scheme->quotients.begin() + b);
        }
    }
    if (!c.out.empty()) p.output_dir = c.out;
    return p;
}

const GroupRingMatrix& need_matrix(const Problem& p) {
    if (!p.matrix) throw SchemaError("/matrix", "this command needs a matrix");
    return *p.matrix;
}

RunOptions options(const Common& c, const Problem& p) {
    RunOptions o;
    o.jobs = c.jobs;
    o.tol = p.tol;
    o.grid = p.grid;
    return o;
}

/// Writes `text` to stdout and, with an output directory, to dir/name.
void emit(const Problem& p, const std::string& name, const std::string& text) {
    std::cout << text;
    if (p.output_dir.empty()) return;
    std::filesystem::create_directories(p.output_dir);
    const auto path = std::filesystem::path(p.output_dir) / name;
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
}

void emit_json(const Problem& p, const std::string& stem, const Json& j) { emit(p, stem + ".json", j.dump(2) + "\n"); }

int cmd_kernel(const Common& c) {
    const Problem p = load(c);
    auto o = options(c, p);
    o.spectra = true;
    const auto run = approximate_kernel_dim(need_matrix(p), build_scheme(p), o, p.declared_limit);
    const auto verdict = check_atiyah_integrality(run, p.tol);
    if (c.format == "json") {
        Json j = run_to_json(run, c.timing);
        j["verdict"] = verdict_to_json(verdict);
        emit_json(p, "kernel", j);
    } else {
        std::ostringstream os;
        run.write_csv(os, c.timing);
        emit(p, "kernel.csv", os.str());
    }
    std::cerr << "convergence: " << run.convergence_reason() << "\n";
    if (p.integrality) std::cerr << "verdict: " << verdict.message << "\n";
    if (run.declared_limit && run.scheme == Scheme::Folner) {
        std::cerr << "bracket: " << (run.bracket_holds() ? "holds" : "violated") << "\n";
    }
    if (!run.converged()) return kIndeterminate;
    if (p.integrality) {
        if (verdict.status == Integrality::Indeterminate) return kIndeterminate;
        if (verdict.status == Integrality::NotInteger) return kFailure;
    }
    return kOk;
}

int cmd_density(const Common& c) {
    const Problem p = load(c);
    auto o = options(c, p);
    o.keep_densities = true;
    const auto run = approximate_kernel_dim(need_matrix(p), build_scheme(p), o, p.declared_limit);
    if (c.format == "json") {
        Json levels = Json::array();
        for (std::size_t i = 0; i < run.levels.size(); ++i) {
            Json pts = Json::array();
            if (!run.grid.empty()) {
                for (std::size_t k = 0; k < run.grid.size(); ++k) pts.push_back(Json::array({run.grid[k], run.levels[i].F[k]}));
            } else {
                const auto& f = run.densities[i];
                for (double x : f.eigenvalues()) {
                    if (pts.empty() || pts.back()[0].get<double>() != x) pts.push_back(Json::array({x, f(x)}));
                }
            }
            levels.push_back(Json{{"level", run.levels[i].level},
                                  {"N", run.levels[i].N},
                                  {"kernel_dim", exact_value(run.levels[i].dim.value)},
                                  {"F", Json{{"value", pts}, {"provenance", "float"}}}});
        }
        emit_json(p, "density", Json{{"source_hash", run.source_hash}, {"levels", levels}});
        return kOk;
    }
    std::ostringstream os;
    os << "level,N,lambda,F\n";
    for (std::size_t i = 0; i < run.levels.size(); ++i) {
        const auto& l = run.levels[i];
        if (!run.grid.empty()) {
            for (std::size_t k = 0; k < run.grid.size(); ++k) os << l.level << ',' << l.N << ',' << num(run.grid[k]) << ',' << num(l.F[k]) << '\n';
            continue;
        }
        const auto& f = run.densities[i];
        double prev = std::nan("");
        for (double x : f.eigenvalues()) {
            if (x == prev) continue;
            prev = x;
            os << l.level << ',' << l.N << ',' << num(x) << ',' << num(f(x)) << '\n';
        }
    }
    emit(p, "density.csv", os.str());
    return kOk;
}

int cmd_det(const Common& c) {
    const Problem p = load(c);
    const auto run = approximate_kernel_dim(need_matrix(p), build_scheme(p), options(c, p), p.declared_limit);
    if (c.format == "json") {
        Json levels = Json::array();
        for (const auto& l : run.levels) {
            levels.push_back(Json{{"level", l.level}, {"N", l.N}, {"log_det", float_value(l.log_det)},
                                  {"kernel_dim", exact_value(l.dim.value)}});
        }
        emit_json(p, "det", Json{{"source_hash", run.source_hash}, {"levels", levels}});
        return kOk;
    }
    std::ostringstream os;
    os << "level,N,log_det,provenance\n";
    for (const auto& l : run.levels) os << l.level << ',' << l.N << ',' << num(l.log_det) << ",float\n";
    emit(p, "det.csv", os.str());
    return kOk;
}

int cmd_kappa(const Common& c, bool laplacian) {
    const Problem p = load(c);
    const GroupRingMatrix m = laplacian ? need_matrix(p).laplacian() : need_matrix(p);
    const Json k = kappa_to_json(m);
    if (c.format == "json") {
        emit_json(p, "kappa", k);
    } else {
        std::ostringstream os;
        os << "S,Sstar,inf,kappa,provenance\n"
           << k["S"].get<std::int64_t>() << ',' << k["Sstar"].get<std::int64_t>() << ',' << num(k["inf"].get<double>())
           << ',' << num(k["kappa"].get<double>()) << ',' << k["provenance"]["kappa"].get<std::string>() << '\n';
        emit(p, "kappa.csv", os.str());
    }
    return kOk;
}

int verify_det_bound_cmd(const Common& c, const Problem& p) {
    const auto r = verify_det_bound(need_matrix(p), build_scheme(p), options(c, p));
    if (c.format == "json") {
        emit_json(p, "det_bound", det_bound_to_json(r));
    } else {
        std::ostringstream os;
        os << "level,N,log_det,rhs,margin,holds\n";
        for (const auto& l : r.levels) {
            os << l.level << ',' << l.N << ',' << num(l.log_det) << ',' << num(r.rhs) << ',' << num(l.margin) << ','
               << (l.holds ? "true" : "false") << '\n';
        }
        emit(p, "det_bound.csv", os.str());
    }
    std::cerr << "det bound: " << (r.holds ? "holds" : "violated") << ", margin " << num(r.margin) << "\n";
    return r.holds ? kOk : kFailure;
}

int verify_continuity_cmd(const Common& c, const Problem& p) {
    const auto r = verify_algebraic_continuity(need_matrix(p), build_scheme(p), options(c, p));
    if (c.format == "json") {
        emit_json(p, "continuity", continuity_to_json(r));
    } else {
        std::ostringstream os;
        os << "embedding,level,N,dim,threshold_dim\n";
        for (const auto& conj : r.conjugates) {
            for (std::size_t i = 0; i < conj.run.levels.size(); ++i) {
                const auto& l = conj.run.levels[i];
                os << conj.embedding << ',' << l.level << ',' << l.N << ',' << to_string(l.dim.value) << ','
                   << to_string(conj.float_dims[i]) << '\n';
            }
        }
        emit(p, "continuity.csv", os.str());
    }
    std::cerr << "continuity: exact dims " << (r.exact_equal ? "agree" : "differ") << ", float cross-check "
              << (r.float_agrees ? "agrees" : "disagrees") << "\n";
    if (!r.exact_equal) return kFailure;
    return r.float_agrees ? kOk : kIndeterminate;
}

int verify_gap_cmd(const Common& c, const Problem& p) {
    if (!p.gap) throw SchemaError("/analyses/gap", "verify gap needs analyses.gap.interval");
    const auto r = spectrum_gap_check(need_matrix(p), build_scheme(p), p.gap->first, p.gap->second, options(c, p));
    if (c.format == "json") {
        emit_json(p, "gap", gap_to_json(r));
    } else {
        std::ostringstream os;
        os << "level,N,margin,F_below,F_through\n";
        for (const auto& l : r.levels) {
            os << l.level << ',' << l.N << ',' << num(l.margin) << ',' << num(l.F_below) << ',' << num(l.F_through) << '\n';
        }
        emit(p, "gap.csv", os.str());
    }
    std::cerr << "gap: " << (r.confirmed ? "confirmed" : "not confirmed") << ", margin " << num(r.margin)
              << (r.norm_certified ? ", outside the norm bound" : "") << "\n";
    return r.confirmed ? kOk : kFailure;
}

int verify_liouville_cmd(const Common& c, const Problem& p) {
    if (!p.liouville_n_max) throw SchemaError("/analyses/liouville", "verify liouville needs analyses.liouville");
    const int n_max = *p.liouville_n_max;
    const auto cert = liouville_exclusion(need_matrix(p), liouville_constant(n_max), n_max);
    if (c.format == "json") {
        emit_json(p, "liouville", liouville_to_json(cert));
    } else {
        std::ostringstream os;
        os << "n,q_digits,approximant_ok,alpha,alpha_sharp\n";
        for (const auto& l : cert.levels) {
            os << l.n << ',' << l.q.get_str().size() << ',' << (l.approximant_ok ? "true" : "false") << ','
               << num(l.alpha) << ',' << num(l.alpha_sharp) << '\n';
        }
        emit(p, "liouville.csv", os.str());
    }
    if (cert.levels.empty()) {
        std::cerr << "liouville: no admissible n >= 2\n";
        return kIndeterminate;
    }
    bool ok = true;
    for (const auto& l : cert.levels) ok = ok && l.approximant_ok && std::isfinite(l.alpha);
    std::cerr << "liouville: alpha_" << cert.levels.back().n << " = " << num(cert.levels.back().alpha)
              << (cert.decreasing ? ", decreasing" : ", not decreasing") << "\n";
    return ok ? kOk : kFailure;
}

int cmd_verify(const Common& c, const std::string& what) {
    const Problem p = load(c);
    if (what == "det-bound") return verify_det_bound_cmd(c, p);
    if (what == "continuity") return verify_continuity_cmd(c, p);
    if (what == "gap") return verify_gap_cmd(c, p);
    return verify_liouville_cmd(c, p);
}

int cmd_ore(const Common& c) {
    const Problem p = load(c);
    if (!p.ore && !p.zero_divisor) throw SchemaError("/analyses", "ore needs analyses.ore or analyses.zero_divisor");
    Json j = Json::object();
    if (p.ore) {
        const auto s = ore_solve(p.group, p.ore->alpha, p.ore->sigma);
        j["ore"] = ore_to_json(p.group, s);
        std::cerr << "ore: tau = " << element_to_json(p.group, s.tau).dump() << " on |X| = " << s.X.size() << "\n";
    }
    if (p.zero_divisor) {
        const auto& z = *p.zero_divisor;
        const auto s = specialize_zero_divisor(p.group, z.a, z.b, z.g, z.g_prime);
        j["zero_divisor"] = specialization_to_json(p.group, s);
        std::cerr << "zero divisor: A = " << element_to_json(p.group, s.A).dump() << ", B = " << element_to_json(p.group, s.B).dump() << "\n";
    }
    emit_json(p, "ore", j);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximation of L2-Betti numbers, determinants and spectral densities"};
    app.require_subcommand(1);
    Common common;
    bool laplacian = false;
    std::string verify_what;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--problem", common.problem, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", common.out, "Directory for output files");
        sub->add_option("--levels", common.levels, "Restrict to levels a..b");
        sub->add_option("--tol", common.tol, "Tolerance as a rational, e.g. 1/1000");
        sub->add_option("--jobs", common.jobs, "Concurrent levels (default: all cores)")->check(CLI::NonNegativeNumber);
        sub->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--timing", common.timing, "Record wall time per level");
    };
    auto* kernel = app.add_subcommand("kernel", "Kernel dimensions along the scheme");
    auto* density = app.add_subcommand("density", "Spectral density functions (plot-ready)");
    auto* det = app.add_subcommand("det", "Normalized log determinants");
    auto* kappa = app.add_subcommand("kappa", "Operator norm bound");
    auto* verify = app.add_subcommand("verify", "Property checks");
    auto* ore = app.add_subcommand("ore", "Ore solutions and zero-divisor specialization");
    for (auto* sub : {kernel, density, det, kappa, verify, ore}) add_common(sub);
    kappa->add_flag("--laplacian", laplacian, "Bound B*B instead of B");
    verify->add_option("check", verify_what, "det-bound, continuity, gap or liouville")
        ->required()
        ->check(CLI::IsMember({"det-bound", "continuity", "gap", "liouville"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kFailure;
    }

    try {
        if (*kernel) return cmd_kernel(common);
        if (*density) return cmd_density(common);
        if (*det) return cmd_det(common);
        if (*kappa) return cmd_kappa(common, laplacian);
        if (*verify) return cmd_verify(common, verify_what);
        if (*ore) return cmd_ore(common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
