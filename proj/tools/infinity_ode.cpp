#include <CLI11.hpp>

#include <iostream>

#include "iode/reproduce.hpp"

namespace {

using namespace iode;

struct RunSpec {
    std::string problem;      // registry id, or empty when inline
    std::string rhs_src;      // inline f(x,y)
    std::string exact_src;    // inline exact solution y(x)
    std::string method = "method10";
    int order = 2;
    std::string h_str;
    std::string x0_str = "0";
    std::string y0_str;
    std::string x_end_str;
    std::string tau_str = "1/2";
    std::string backend = "rational";
    int digits = 30;
    bool recover = false;
    bool feedback = false;
    std::string format = "md";
};

ScalarContext make_context(const RunSpec& spec) {
    if (spec.backend == "rational") return ScalarContext::rational();
    if (spec.backend == "decimal") {
        if (spec.digits < 2) throw CLI::ValidationError("--digits must be >= 2");
        return ScalarContext::decimal(spec.digits);
    }
    throw CLI::ValidationError("--backend must be rational or decimal");
}

struct LoadedProblem {
    RhsFunction rhs;
    RhsFunction exact; // may be invalid
    Scalar x0, y0, x_end;
    bool shifted_schedule = false;
};

LoadedProblem load_problem(const RunSpec& spec, const ScalarContext& ctx) {
    LoadedProblem out;
    if (!spec.problem.empty()) {
        const Problem& p = builtin_problem(spec.problem);
        out.rhs = p.rhs;
        out.exact = p.exact;
        out.x0 = p.x0;
        out.y0 = spec.y0_str.empty() ? p.initial_value(ctx) : parse_scalar(spec.y0_str);
        out.x_end = spec.x_end_str.empty() ? p.x_end : parse_scalar(spec.x_end_str);
        out.shifted_schedule = p.shifted_recovery_schedule;
        return out;
    }
    if (spec.rhs_src.empty())
        throw CLI::ValidationError("provide --problem or --rhs");
    if (spec.y0_str.empty() || spec.x_end_str.empty())
        throw CLI::ValidationError("inline problems need --y0 and --x-end");
    out.rhs = parse_rhs(spec.rhs_src, 2);
    if (!spec.exact_src.empty()) out.exact = parse_rhs(spec.exact_src, 1);
    out.x0 = parse_scalar(spec.x0_str);
    out.y0 = parse_scalar(spec.y0_str);
    out.x_end = parse_scalar(spec.x_end_str);
    return out;
}

std::string fmt(const Scalar& v, const ScalarContext& ctx) {
    return to_sci_string(v, ctx.is_rational() ? 12 : ctx.digits);
}

void print_rows(const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows, const std::string& format) {
    if (format == "csv") {
        auto emit = [](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i)
                std::cout << cells[i] << (i + 1 < cells.size() ? "," : "\n");
        };
        emit(header);
        for (const auto& r : rows) emit(r);
        return;
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i)
            width[i] = std::max(width[i], r[i].size());
    auto emit = [&](const std::vector<std::string>& cells) {
        std::cout << "|";
        for (std::size_t i = 0; i < cells.size(); ++i) {
            std::cout << " " << cells[i] << std::string(width[i] - cells[i].size(), ' ') << " |";
        }
        std::cout << "\n";
    };
    emit(header);
    std::vector<std::string> rule;
    for (std::size_t w : width) rule.push_back(std::string(w, '-'));
    emit(rule);
    for (const auto& r : rows) emit(r);
}

int cmd_solve(const RunSpec& spec) {
    const ScalarContext ctx = make_context(spec);
    const LoadedProblem lp = load_problem(spec, ctx);

    IvpProblem p;
    const EvalContext ectx = EvalContext::make(ctx, std::max(spec.order, 4));
    p.rhs = make_rhs(lp.rhs, ectx);
    p.x0 = lp.x0;
    p.y0 = lp.y0;
    p.x_end = lp.x_end;
    if (lp.exact.valid()) {
        const RhsFunction exact = lp.exact;
        const int err_digits = std::max(40, spec.digits + 10);
        p.exact = [exact, err_digits](const Scalar& x) {
            const EvalContext e = EvalContext::make(ScalarContext::decimal(err_digits), 2);
            return parts(exact.evaluate(GrossNumber::from_scalar(x), e)).finite;
        };
    }

    SolveResult r;
    if (spec.method == "oneshot") {
        r = solve_oneshot_taylor(p, spec.order, ctx);
    } else {
        if (spec.h_str.empty()) throw CLI::ValidationError("--h is required for stepping methods");
        const Scalar h = parse_scalar(spec.h_str);
        if (spec.method == "heun") {
            r = solve_heun(p, h, ctx);
        } else if (spec.method == "rk4") {
            r = solve_rk4(p, h, ctx);
        } else {
            SolverConfig cfg;
            cfg.h = h;
            cfg.order = 2;
            cfg.tau = parse_scalar(spec.tau_str);
            if (!(cfg.tau > Scalar(0) && cfg.tau < Scalar(1)))
                throw CLI::ValidationError("--tau must lie in (0,1)");
            cfg.ctx = ctx;
            cfg.corrected_feedback = spec.feedback;
            if (spec.method == "method10")
                r = solve_method_1_0(p, cfg);
            else if (spec.method == "method11")
                r = solve_method_1_1(p, cfg);
            else
                throw CLI::ValidationError("unknown method '" + spec.method + "'");
        }
    }

    const bool with_corrections = !r.corrections.empty();
    std::vector<std::string> header = {"n", "x_n", "y_n"};
    if (with_corrections) {
        header.push_back("y_c_n");
        header.push_back("c_n");
    }
    if (!r.errors.empty()) header.push_back("eps_n");
    std::vector<std::vector<std::string>> rows;
    for (std::size_t n = 0; n < r.points.size(); ++n) {
        std::vector<std::string> row = {std::to_string(n), fmt(r.points[n].first, ctx),
                                        fmt(r.points[n].second, ctx)};
        if (with_corrections) {
            row.push_back(fmt(r.corrections[n].y_c, ctx));
            row.push_back(fmt(r.corrections[n].c, ctx));
        }
        if (!r.errors.empty()) row.push_back(fmt(r.errors[n], ctx));
        rows.push_back(std::move(row));
    }
    print_rows(header, rows, spec.format);
    std::cout << "f_evals: " << r.f_evals << "\n";
    return 0;
}

int cmd_derivs(const RunSpec& spec) {
    const ScalarContext ctx = make_context(spec);
    const LoadedProblem lp = load_problem(spec, ctx);
    if (spec.order < 1) throw CLI::ValidationError("--order must be >= 1");

    const EvalContext ectx = EvalContext::make(ctx, spec.order + 2);
    const bool recover = spec.recover;
    const Rhs f = (recover && lp.shifted_schedule) ? make_shifted_rhs(lp.rhs, ectx)
                                                   : make_rhs(lp.rhs, ectx);

    TaylorModel model;
    ErrorLedger ledger;
    if (recover) {
        auto [m, l] = recover_with_errors(f, lp.x0, lp.y0, spec.order, ctx);
        model = std::move(m);
        ledger = std::move(l);
    } else {
        model = build_taylor(f, lp.x0, lp.y0, spec.order, Direction::Forward, ctx);
    }

    // reference derivatives from the exact solution evaluated at x0 + #^-1
    std::vector<Scalar> reference;
    if (lp.exact.valid()) {
        const int ref_digits = std::max(40, spec.digits + 10);
        const EvalContext octx = EvalContext::make(ScalarContext::decimal(ref_digits), spec.order);
        const GrossNumber u = lp.exact.evaluate(
            add(GrossNumber::from_scalar(lp.x0), GrossNumber::infinitesimal(), octx.scalar), octx);
        BigInt fact = 1;
        reference.push_back(parts(u).finite);
        for (int i = 1; i <= spec.order; ++i) {
            fact *= i;
            reference.push_back(Scalar(coefficient_at(u, BigRat(-i)).value() * fact));
        }
    }

    std::vector<std::string> header = {"i"};
    if (recover) header.push_back("y~(i)");
    if (recover) header.push_back("eps_i");
    header.push_back("y(i)");
    if (!reference.empty()) header.push_back("delta_i");
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i <= spec.order; ++i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        std::vector<std::string> row = {std::to_string(i)};
        if (recover) {
            if (i == 0) {
                row.push_back(fmt(model.derivs[0], ctx));
                row.push_back("0");
            } else {
                row.push_back(fmt(ctx.sub(model.derivs[ui], ledger.eps[ui - 1]), ctx));
                row.push_back(fmt(ledger.eps[ui - 1], ctx));
            }
        }
        row.push_back(fmt(model.derivs[ui], ctx));
        if (!reference.empty())
            row.push_back(fmt(Scalar(reference[ui].value() - model.derivs[ui].value()), ctx));
        rows.push_back(std::move(row));
    }
    print_rows(header, rows, spec.format);
    return 0;
}

int cmd_reproduce(const std::string& target, int digits, const std::string& format) {
    const TableReport rep = reproduce(target, digits);
    std::cout << rep.title << "\n";
    print_rows(rep.header, rep.rows, format);
    int failures = 0;
    for (const auto& c : rep.checks) {
        if (c.pass) {
            std::cout << "[PASS] " << c.label << "\n";
        } else {
            ++failures;
            std::cout << "[FAIL] " << c.label << ": got " << c.got << ", want " << c.want << "\n";
        }
    }
    std::cout << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed")
              << " (" << rep.checks.size() << " total)\n";
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"grossone-arithmetic ODE toolkit: infinitesimal-step Taylor solvers,\n"
                 "derivative extraction with error recovery, and reference-table checks"};
    app.set_help_flag("--help", "print help"); // keep -h free for the step size
    app.set_config("--config");
    app.require_subcommand(1);

    RunSpec spec;
    std::string target;

    auto add_common = [&spec](CLI::App* cmd) {
        cmd->set_help_flag("--help", "print help");
        cmd->add_option("--problem", spec.problem, "built-in problem id (ex3, ex5)");
        cmd->add_option("--rhs", spec.rhs_src, "inline f(x,y) expression");
        cmd->add_option("--exact", spec.exact_src, "inline exact-solution y(x) expression");
        cmd->add_option("--x0", spec.x0_str, "initial x (inline problems)");
        cmd->add_option("--y0", spec.y0_str, "initial value (inline problems)");
        cmd->add_option("--x-end", spec.x_end_str, "end of the integration interval");
        cmd->add_option("--backend", spec.backend, "rational | decimal")->capture_default_str();
        cmd->add_option("--digits", spec.digits, "significant digits of the decimal backend")
            ->capture_default_str();
        cmd->add_option("--format", spec.format, "md | csv")->capture_default_str();
    };

    CLI::App* solve = app.add_subcommand("solve", "integrate an initial value problem");
    add_common(solve);
    solve->add_option("--method", spec.method, "oneshot | method10 | method11 | heun | rk4")
        ->capture_default_str();
    solve->add_option("--order", spec.order, "Taylor order of the one-shot solve")
        ->capture_default_str();
    solve->add_option("--h", spec.h_str, "finite step size");
    solve->add_option("--tau", spec.tau_str, "backward-correction mixing weight in (0,1)")
        ->capture_default_str();
    solve->add_flag("--feedback", spec.feedback, "step from the corrected value (method11)");

    CLI::App* derivs = app.add_subcommand("derivs", "extract solution derivatives at x0");
    add_common(derivs);
    derivs->add_option("--order", spec.order, "highest derivative order")->capture_default_str();
    derivs->add_flag("--recover", spec.recover, "recover per-order evaluation errors");

    CLI::App* repro = app.add_subcommand("reproduce", "recompute a reference table and check it");
    repro->set_help_flag("--help", "print help");
    repro->add_option("target", target, "example2 | example3 | table1 | table2 | table3 | sec41_walkthrough")
        ->required();
    repro->add_option("--digits", spec.digits, "mantissa digits for table3")->capture_default_str();
    repro->add_option("--format", spec.format, "md | csv")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(spec);
        if (derivs->parsed()) return cmd_derivs(spec);
        if (repro->parsed()) return cmd_reproduce(target, spec.digits, spec.format);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const iode::UnknownIdentifier& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const iode::SyntaxError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const iode::Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
