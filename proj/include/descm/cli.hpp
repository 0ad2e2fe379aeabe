#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "descm/driver.hpp"
#include "descm/errors.hpp"
#include "descm/potential_io.hpp"
#include "descm/random_potential.hpp"
#include "descm/reference_oracle.hpp"

// Command-line front end. Exit codes: 0 success, 1 domain error, 2 I/O or
// parse error, 3 non-convergence within budget, 4 validation failure.
namespace descm::cli {

enum ExitCode : int {
    kSuccess = 0,
    kDomainError = 1,
    kIoError = 2,
    kNotConverged = 3,
    kValidationFailed = 4,
};

/// Shortest form that carries 17 significant digits; locale independent.
inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

struct Grid {
    double start;
    double stop;
    int count;

    std::vector<double> points() const {
        std::vector<double> xs(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i)
            xs[static_cast<std::size_t>(i)] =
                count == 1 ? start : start + (stop - start) * i / (count - 1);
        return xs;
    }
};

/// "start:stop:count" with 0 < start < stop and count >= 1.
inline Grid parse_grid(const std::string& spec) {
    const auto a = spec.find(':');
    const auto b = a == std::string::npos ? a : spec.find(':', a + 1);
    if (b == std::string::npos) throw DomainError("grid must be start:stop:count, got '" + spec + "'");
    Grid g{};
    try {
        std::size_t used = 0;
        g.start = std::stod(spec.substr(0, a), &used);
        g.stop = std::stod(spec.substr(a + 1, b - a - 1), &used);
        g.count = std::stoi(spec.substr(b + 1), &used);
    } catch (const std::exception&) {
        throw DomainError("grid must be start:stop:count, got '" + spec + "'");
    }
    if (!(g.start > 0.0) || !(g.stop > g.start) || g.count < 1)
        throw DomainError("grid requires 0 < start < stop and count >= 1, got '" + spec + "'");
    return g;
}

/// "EXP=VAL"
inline std::pair<int, double> parse_fix(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw ParseError("--fix expects EXP=VAL, got '" + spec + "'");
    try {
        std::size_t used = 0;
        const int e = std::stoi(spec.substr(0, eq), &used);
        if (used != eq) throw ParseError("");
        const std::string rhs = spec.substr(eq + 1);
        const double v = std::stod(rhs, &used);
        if (used != rhs.size()) throw ParseError("");
        return {e, v};
    } catch (const std::exception&) {
        throw ParseError("--fix expects EXP=VAL, got '" + spec + "'");
    }
}

namespace detail {

// Writes to --out when given, otherwise to the provided stream.
class Output {
  public:
    Output(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            stream_ = &fallback;
        } else {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw IoError("cannot open output file '" + path + "'");
            stream_ = file_.get();
        }
    }
    std::ostream& operator*() { return *stream_; }
    void finish() {
        stream_->flush();
        if (!*stream_) throw IoError("failed writing output");
    }

  private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

struct Config {
    std::string potential_path;
    int level = 0;
    int m = 30;
    double tol = 1e-10;
    int m_max = 200;
    std::string grid;
    std::uint64_t seed = 0;
    int pmin = -3;
    int qmax = 8;
    double lo = -5.0;
    double hi = 5.0;
    std::vector<std::string> fix;
    std::optional<double> d;
    std::string out;
    double stencil_offset = 0.0;
};

inline SolveOptions solve_options(const Config& cfg) {
    SolveOptions opts;
    opts.d_override = cfg.d;
    opts.stencil_diagonal_offset = cfg.stencil_offset;
    return opts;
}

inline int cmd_solve(const Config& cfg, std::ostream& out) {
    const auto pot = load_potential(cfg.potential_path);
    const auto pair = solve(pot, cfg.level, cfg.m, solve_options(cfg));
    Output o(cfg.out, out);
    *o << "{\"level\": " << pair.level << ", \"m\": " << cfg.m
       << ", \"energy\": " << format_double(pair.energy) << "}\n";
    o.finish();
    return kSuccess;
}

inline void write_record(std::ostream& os, const ConvergenceRecord& rec) {
    os << "m,matrix_dim,energy,eps\n";
    for (const auto& row : rec.rows) {
        os << row.m << ',' << row.matrix_dim << ',' << format_double(row.energy) << ',';
        if (row.eps) os << format_double(*row.eps);
        os << '\n';
    }
}

inline int cmd_converge(const Config& cfg, std::ostream& out, std::ostream& err) {
    const auto pot = load_potential(cfg.potential_path);
    Output o(cfg.out, out);
    try {
        const auto rec = converge(pot, cfg.level, cfg.tol, cfg.m_max, solve_options(cfg));
        write_record(*o, rec);
        o.finish();
        return kSuccess;
    } catch (const NoConvergenceWithinBudget& e) {
        write_record(*o, e.record());
        o.finish();
        err << "descm: " << e.what() << '\n';
        return kNotConverged;
    }
}

inline int cmd_wavefunction(const Config& cfg, std::ostream& out) {
    const Grid grid = parse_grid(cfg.grid);
    const auto pot = load_potential(cfg.potential_path);
    const auto pair = solve(pot, cfg.level, cfg.m, solve_options(cfg));
    const auto xs = grid.points();
    const auto psi = wavefunction(pair, xs);
    Output o(cfg.out, out);
    *o << "x,psi\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        *o << format_double(xs[i]) << ',' << format_double(psi[i]) << '\n';
    o.finish();
    return kSuccess;
}

inline int cmd_random_potential(const Config& cfg, std::ostream& out) {
    RandomPotentialSpec spec{cfg.pmin, cfg.qmax, cfg.lo, cfg.hi, {}, cfg.seed};
    for (const auto& f : cfg.fix) {
        const auto [e, v] = parse_fix(f);
        if (!spec.fixed.emplace(e, v).second)
            throw ParseError("exponent " + std::to_string(e) + " fixed twice");
    }
    const auto pot = random_potential(spec);
    Output o(cfg.out, out);
    *o << dump_potential(pot);
    o.finish();
    return kSuccess;
}

struct ValidationCase {
    double k;
    int level;  // level carrying 2k+3, identified by the shooting oracle
    double energy;
    double error;
    bool pass;
};

inline constexpr double kValidationTolerance = 1e-9;

/// Exact-family check for k in {1/2, 1, 2}.
inline std::vector<ValidationCase> run_validation(const SolveOptions& opts) {
    std::vector<ValidationCase> cases;
    for (double k : {0.5, 1.0, 2.0}) {
        const auto fam = exact_family(k);
        int level = 0;
        double best = std::numeric_limits<double>::infinity();
        for (int l = 0; l < 3; ++l) {
            const double d = std::abs(shoot(fam.potential, l) - fam.exact_energy);
            if (d < best) {
                best = d;
                level = l;
            }
        }
        double energy = std::numeric_limits<double>::quiet_NaN();
        try {
            energy = converge(fam.potential, level, 1e-12, 80, opts).final_energy();
        } catch (const NoConvergenceWithinBudget& e) {
            energy = e.record().final_energy();
        }
        const double error = std::abs(energy - fam.exact_energy);
        cases.push_back({k, level, energy, error, error <= kValidationTolerance});
    }
    return cases;
}

inline int cmd_validate(const Config& cfg, std::ostream& out) {
    const auto cases = run_validation(solve_options(cfg));
    Output o(cfg.out, out);
    *o << "k,level,exact,energy,abs_error,result\n";
    bool ok = true;
    for (const auto& c : cases) {
        *o << format_double(c.k) << ',' << c.level << ',' << format_double(2.0 * c.k + 3.0) << ','
           << format_double(c.energy) << ',' << format_double(c.error) << ','
           << (c.pass ? "PASS" : "FAIL") << '\n';
        ok = ok && c.pass;
    }
    o.finish();
    return ok ? kSuccess : kValidationFailed;
}

}  // namespace detail

/// Runs one command; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Double-exponential Sinc collocation eigenvalues for Laurent-polynomial potentials",
                 "descm"};
    app.require_subcommand(1);
    detail::Config cfg;

    auto add_potential = [&](CLI::App* sub) {
        sub->add_option("--potential", cfg.potential_path, "potential JSON file")->required();
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--level", cfg.level, "state index, 0 = ground state")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--d", cfg.d, "strip half-width override, at most pi/(2 gamma)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", cfg.out, "output file (default: standard output)");
    };

    auto* solve_cmd = app.add_subcommand("solve", "energy of one level at a fixed dominant count m");
    add_potential(solve_cmd);
    add_common(solve_cmd);
    solve_cmd->add_option("--m", cfg.m, "dominant truncation count")->check(CLI::PositiveNumber);

    auto* conv_cmd = app.add_subcommand("converge", "successive-difference convergence study (CSV)");
    add_potential(conv_cmd);
    add_common(conv_cmd);
    conv_cmd->add_option("--tol", cfg.tol, "stop when |E(m) - E(m-1)| < tol")
        ->check(CLI::Range(1e-14, 1e300));
    conv_cmd->add_option("--m-max", cfg.m_max, "largest dominant count tried")->check(CLI::Range(2, 1000000));

    auto* wf_cmd = app.add_subcommand("wavefunction", "psi on a linear grid (CSV)");
    add_potential(wf_cmd);
    add_common(wf_cmd);
    wf_cmd->add_option("--m", cfg.m, "dominant truncation count")->check(CLI::PositiveNumber);
    wf_cmd->add_option("--grid", cfg.grid, "start:stop:count")->required();

    auto* rnd_cmd = app.add_subcommand("random-potential", "seeded random potential file");
    rnd_cmd->add_option("--pmin", cfg.pmin, "lowest exponent (<= -3)")->required();
    rnd_cmd->add_option("--qmax", cfg.qmax, "highest exponent (>= 1)")->required();
    rnd_cmd->add_option("--lo", cfg.lo, "lower end of the coefficient range")->required();
    rnd_cmd->add_option("--hi", cfg.hi, "upper end of the coefficient range")->required();
    rnd_cmd->add_option("--fix", cfg.fix, "EXP=VAL pinned coefficient (repeatable)")->required();
    rnd_cmd->add_option("--seed", cfg.seed, "splitmix64 seed")->required();
    rnd_cmd->add_option("--out", cfg.out, "output file (default: standard output)");

    auto* val_cmd = app.add_subcommand("validate", "exact-family self check, k = 1/2, 1, 2");
    val_cmd->add_option("--out", cfg.out, "output file (default: standard output)");
    val_cmd->add_option("--perturb-stencil", cfg.stencil_offset,
                        "add a constant to the second-derivative stencil diagonal (negative control)")
        ->group("");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "descm: " << e.what() << '\n';
        return kIoError;
    }

    try {
        if (solve_cmd->parsed()) return detail::cmd_solve(cfg, out);
        if (conv_cmd->parsed()) return detail::cmd_converge(cfg, out, err);
        if (wf_cmd->parsed()) return detail::cmd_wavefunction(cfg, out);
        if (rnd_cmd->parsed()) return detail::cmd_random_potential(cfg, out);
        if (val_cmd->parsed()) return detail::cmd_validate(cfg, out);
    } catch (const IoError& e) {
        err << "descm: " << e.what() << '\n';
        return kIoError;
    } catch (const ParseError& e) {
        err << "descm: " << e.what() << '\n';
        return kIoError;
    } catch (const Error& e) {
        err << "descm: " << e.what() << '\n';
        return kDomainError;
    }
    return kDomainError;
}

}  // namespace descm::cli
