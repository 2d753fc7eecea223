#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cli/repro.hpp"

namespace cexpr::cli {

namespace {

std::string derivative_column(const std::string& base, unsigned order) {
    if (order == 0) {
        return base;
    }
    return order == 1 ? "d" + base : "d" + std::to_string(order) + base;
}

std::string format_row(std::span<const double> row) {
    std::string text = "[";
    for (std::size_t i = 0; i < row.size(); ++i) {
        text += (i ? ", " : "") + format_number(row[i]);
    }
    return text + "]";
}

void print_matrix(std::ostream& out, const Matrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << "  " << format_row(m.row(r)) << '\n';
    }
}

ConstrainedExpression build_engine(const ProblemSpec& spec, const CommandOptions& options) {
    ConstrainedExpression ce = build(*spec.constraints, *spec.basis, spec.g());
    if (options.coefficient_hook) {
        CoefficientMatrix xi = ce.coefficients();
        options.coefficient_hook(xi);
        return ce.with_coefficients(std::move(xi));
    }
    return ce;
}

ScalarFunction as_scalar(const FreeFunction& f) {
    return [f](double x) { return f.eval(x); };
}

OnePointForm one_point_form(const ProblemSpec& spec) {
    const FormSpec& form = *spec.form;
    switch (form.kind) {
    case FormKind::OnePointLinear:
        return OnePointForm::linear(form.x1, form.y1, as_scalar(*form.p));
    case FormKind::OnePointAdditive:
        return OnePointForm::additive(form.x1, form.y1, spec.g());
    case FormKind::OnePointRational:
        return OnePointForm::rational(form.x1, form.y1, *form.h);
    default:
        return OnePointForm::combined(form.x1, form.y1, form.p ? as_scalar(*form.p) : ScalarFunction{},
                                      spec.g(), form.h);
    }
}

bool is_one_point(FormKind kind) {
    return kind == FormKind::OnePointLinear || kind == FormKind::OnePointAdditive ||
           kind == FormKind::OnePointRational || kind == FormKind::OnePointCombined;
}

/// Scalar closed form as a function of (x, derivative order).
std::function<double(double, unsigned)> scalar_form(const ProblemSpec& spec) {
    const FormSpec& form = *spec.form;
    const FreeFunction g = spec.g();
    auto order_zero_only = [kind = form.kind](unsigned order) {
        if (order != 0) {
            throw SpecError("form '" + form_kind_name(kind) + "' does not provide derivatives");
        }
    };
    if (is_one_point(form.kind)) {
        OnePointForm op = one_point_form(spec);
        return [op, order_zero_only](double x, unsigned order) {
            order_zero_only(order);
            return one_point(op, x);
        };
    }
    switch (form.kind) {
    case FormKind::Taylor:
        return [g, form](double x, unsigned order) { return taylor_form(g, form.x1, form.values, x, order); };
    case FormKind::TwoDerivative:
        return [g, form](double x, unsigned order) {
            return two_derivative_form(g, form.x1, form.p_order, form.q_order, form.vp, form.vq, x, order);
        };
    case FormKind::Waring:
        return [g, form, order_zero_only](double x, unsigned order) {
            order_zero_only(order);
            return waring_form(g, form.points, x);
        };
    case FormKind::PeriodicContinuous:
    case FormKind::PeriodicDiscontinuous: {
        const PeriodicSpec periodic = *spec.periodic;
        return [g, form, periodic, order_zero_only](double x, unsigned order) {
            order_zero_only(order);
            return periodic_point_form(periodic, g, {form.x1, form.y1}, x);
        };
    }
    case FormKind::PeriodicWaring: {
        const PeriodicSpec periodic = *spec.periodic;
        return [g, form, periodic, order_zero_only](double x, unsigned order) {
            order_zero_only(order);
            return periodic_waring(periodic, g, form.points, x);
        };
    }
    default:
        throw SpecError("form '" + form_kind_name(form.kind) + "' is not scalar");
    }
}

ResidualRow make_row(std::string label, double target, double achieved) {
    return {std::move(label), target, achieved, std::abs(achieved - target),
            std::max(1.0, std::abs(target))};
}

std::vector<ResidualRow> form_residuals(const ProblemSpec& spec) {
    const FormSpec& form = *spec.form;
    std::vector<ResidualRow> rows;
    const auto at = [](const char* what, double x) { return std::string(what) + "(" + format_number(x) + ")"; };

    if (form.kind == FormKind::WaringVector) {
        for (const auto& w : form.waypoints) {
            const auto y = waring_vector_form(spec.free, form.waypoints, w.t);
            for (std::size_t c = 0; c < y.size(); ++c) {
                rows.push_back(make_row("y" + std::to_string(c + 1) + "(" + format_number(w.t) + ")", w.y[c], y[c]));
            }
        }
        return rows;
    }
    if (form.kind == FormKind::Stack) {
        const auto y = stack_form(spec.g(), form.x1, form.values, form.values.size(), form.x1);
        for (std::size_t i = 0; i < y.size(); ++i) {
            rows.push_back(make_row(at(derivative_column("y", static_cast<unsigned>(i)).c_str(), form.x1),
                                    form.values[i], y[i]));
        }
        return rows;
    }

    const auto y = scalar_form(spec);
    switch (form.kind) {
    case FormKind::Taylor:
        for (std::size_t k = 0; k < form.values.size(); ++k) {
            const auto order = static_cast<unsigned>(k);
            rows.push_back(make_row(at(derivative_column("y", order).c_str(), form.x1), form.values[k],
                                    y(form.x1, order)));
        }
        break;
    case FormKind::TwoDerivative:
        rows.push_back(make_row(at(derivative_column("y", form.p_order).c_str(), form.x1), form.vp,
                                y(form.x1, form.p_order)));
        rows.push_back(make_row(at(derivative_column("y", form.q_order).c_str(), form.x1), form.vq,
                                y(form.x1, form.q_order)));
        break;
    case FormKind::Waring:
    case FormKind::PeriodicWaring:
        for (const auto& p : form.points) {
            rows.push_back(make_row(at("y", p.x), p.y, y(p.x, 0)));
        }
        break;
    case FormKind::PeriodicContinuous:
    case FormKind::PeriodicDiscontinuous: {
        rows.push_back(make_row(at("y", form.x1), form.y1, y(form.x1, 0)));
        const double period = spec.periodic->period;
        for (int j = 0; j < 8; ++j) {
            // Offset by 1/3 so no probe lands on a sawtooth jump of the anchor grid.
            const double x = form.x1 + (j + 1.0 / 3.0) * period / 8.0;
            rows.push_back(make_row("y(" + format_number(x) + " + T) - y(" + format_number(x) + ")", 0.0,
                                    y(x + period, 0) - y(x, 0)));
        }
        break;
    }
    default:
        rows.push_back(make_row(at("y", form.x1), form.y1, y(form.x1, 0)));
        break;
    }
    return rows;
}

struct ResolvedSpecs {
    nlohmann::json document;
    std::vector<ProblemSpec> curves;
    std::vector<ConstantMap> draws;
};

ResolvedSpecs resolve(const std::filesystem::path& path, const CommandOptions& options) {
    ResolvedSpecs out;
    out.document = read_spec_file(path);
    const ProblemSpec base = parse_problem_spec(out.document);
    if (!base.random) {
        out.curves.push_back(base);
        out.draws.emplace_back();
        return out;
    }
    out.draws = draw_constants(*base.random, options.seed);
    for (const auto& constants : out.draws) {
        out.curves.push_back(parse_problem_spec(out.document, constants));
    }
    return out;
}

/// Runs `body`, mapping errors onto the exit-code contract.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const SingularSupport& e) {
        err << "error: " << e.what() << '\n';
        return kExitSingular;
    } catch (const SpecError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}

std::string basis_labels(const BasisFamily& basis) {
    std::string text = "{";
    for (std::size_t i = 0; i < basis.size(); ++i) {
        text += (i ? ", " : "") + basis.member(i).label();
    }
    return text + "}";
}

std::string beta_text(const BasisFamily& basis, const std::vector<double>& xi) {
    std::string text;
    for (std::size_t i = 0; i < xi.size(); ++i) {
        if (xi[i] == 0.0) {
            continue;
        }
        const double magnitude = std::abs(xi[i]);
        if (text.empty()) {
            text += xi[i] < 0.0 ? "-" : "";
        } else {
            text += xi[i] < 0.0 ? " - " : " + ";
        }
        const std::string label = basis.member(i).label();
        text += format_number(magnitude) + (label == "1" ? "" : "*" + label);
    }
    return text.empty() ? "0" : text;
}

void print_notes(std::ostream& out, const ProblemSpec& spec) {
    for (const auto& note : spec.notes) {
        out << "note: " << note << '\n';
    }
}

void print_build(std::ostream& out, const ProblemSpec& spec, const CommandOptions& options) {
    print_notes(out, spec);
    if (spec.is_form()) {
        const FormSpec& form = *spec.form;
        out << "form: " << form_kind_name(form.kind) << '\n';
        out << "free: " << (spec.free_text.size() == 1 ? spec.free_text.front() : "vector") << '\n';
        const auto rows = form_residuals(spec);
        out << "constraints embedded: " << rows.size() << '\n';
        for (const auto& row : rows) {
            out << "  " << row.label << " = " << format_number(row.target) << '\n';
        }
        return;
    }
    const ConstraintSet& set = *spec.constraints;
    const BasisFamily& basis = *spec.basis;
    out << "n = " << set.size() << '\n';
    out << "basis: " << basis_labels(basis) << '\n';
    out << "constraints:\n";
    for (std::size_t k = 0; k < set.size(); ++k) {
        out << "  " << k + 1 << ": " << set[k].to_string() << '\n';
    }
    const SupportMatrix support = assemble_support_matrix(set, basis);
    out << "support matrix H:\n";
    print_matrix(out, support.entries);
    out << "rank = " << support.rank << '\n';
    out << "rcond = " << format_number(support.rcond) << '\n';
    if (support.ill_conditioned() && !support.singular()) {
        out << "warning: rcond below " << format_number(kRcondWarning) << '\n';
    }
    if (support.singular()) {
        out << "rank " << support.rank << " of " << support.size() << ": support matrix is singular\n";
    }
    CoefficientMatrix xi = solve_coefficients(support, set, basis);
    if (options.coefficient_hook) {
        options.coefficient_hook(xi);
    }
    out << "coefficient matrix Xi = H^-1:\n";
    print_matrix(out, xi.columns);
    out << "beta functions:\n";
    for (std::size_t k = 0; k < xi.size(); ++k) {
        out << "  beta_" << k + 1 << "(x) = " << beta_text(basis, xi.xi(k)) << '\n';
    }
}

} // namespace

std::vector<ResidualRow> problem_residuals(const ProblemSpec& spec, const CommandOptions& options) {
    if (spec.is_form()) {
        return form_residuals(spec);
    }
    const ConstrainedExpression ce = build_engine(spec, options);
    const auto residuals = ce.residuals();
    const auto scales = ce.residual_scales();
    std::vector<ResidualRow> rows;
    for (std::size_t k = 0; k < ce.size(); ++k) {
        const double target = ce.constraints()[k].value();
        const double achieved = apply_functional(
            ce.constraints()[k], [&](double x, unsigned order) { return ce.evaluate(x, order); });
        rows.push_back({ce.constraints()[k].to_string(), target, achieved, residuals[k], scales[k]});
    }
    return rows;
}

SampleTable sample_problem(const ProblemSpec& spec, const CommandOptions& options) {
    if (!spec.sampling) {
        throw SpecError("spec has no 'sampling' block");
    }
    const SamplingSpec& s = *spec.sampling;
    SampleTable table;
    table.header.push_back("x");

    std::function<std::vector<double>(double)> row;
    if (!spec.is_form()) {
        auto ce = std::make_shared<ConstrainedExpression>(build_engine(spec, options));
        for (unsigned d = 0; d <= s.derivatives; ++d) {
            table.header.push_back(derivative_column("y", d));
        }
        row = [ce, n = s.derivatives](double x) {
            std::vector<double> values;
            for (unsigned d = 0; d <= n; ++d) {
                values.push_back(ce->evaluate(x, d));
            }
            return values;
        };
    } else if (spec.form->kind == FormKind::WaringVector) {
        if (s.derivatives != 0) {
            throw SpecError("waring-vector does not provide derivatives");
        }
        for (std::size_t c = 0; c < spec.free.size(); ++c) {
            table.header.push_back("y" + std::to_string(c + 1));
        }
        row = [free = spec.free, waypoints = spec.form->waypoints](double t) {
            return waring_vector_form(free, waypoints, t);
        };
    } else if (spec.form->kind == FormKind::Stack) {
        const std::size_t size = spec.form->values.size();
        for (std::size_t i = 0; i < size; ++i) {
            table.header.push_back(derivative_column("y", static_cast<unsigned>(i)));
        }
        row = [g = spec.g(), form = *spec.form, size](double x) {
            return stack_form(g, form.x1, form.values, size, x);
        };
    } else {
        auto y = scalar_form(spec);
        for (unsigned d = 0; d <= s.derivatives; ++d) {
            table.header.push_back(derivative_column("y", d));
        }
        row = [y, n = s.derivatives](double x) {
            std::vector<double> values;
            for (unsigned d = 0; d <= n; ++d) {
                values.push_back(y(x, d));
            }
            return values;
        };
    }

    if (!s.columns.empty()) {
        if (s.columns.size() != table.header.size()) {
            throw SpecError("sampling.columns has " + std::to_string(s.columns.size()) + " names, output has " +
                            std::to_string(table.header.size()) + " columns");
        }
        table.header = s.columns;
    }
    const double span = s.to - s.from;
    for (std::size_t i = 0; i < s.count; ++i) {
        const double x = i + 1 == s.count
                             ? s.to
                             : s.from + span * (static_cast<double>(i) / static_cast<double>(s.count - 1));
        std::vector<double> values{x};
        const auto y = row(x);
        values.insert(values.end(), y.begin(), y.end());
        table.rows.push_back(std::move(values));
    }
    return table;
}

std::string to_csv(const SampleTable& table) {
    std::string text;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        text += (i ? "," : "") + table.header[i];
    }
    text += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            text += (i ? "," : "") + format_number(row[i]);
        }
        text += '\n';
    }
    return text;
}

int cmd_build(const std::filesystem::path& spec_path, std::ostream& out, std::ostream& err,
              const CommandOptions& options) {
    return guarded(err, [&] {
        const ResolvedSpecs specs = resolve(spec_path, options);
        if (specs.curves.size() > 1) {
            out << "random spec: showing curve 1 of " << specs.curves.size() << '\n';
        }
        print_build(out, specs.curves.front(), options);
        return static_cast<int>(kExitOk);
    });
}

int cmd_sample(const std::filesystem::path& spec_path, const std::filesystem::path& output, std::ostream& out,
               std::ostream& err, const CommandOptions& options) {
    return guarded(err, [&] {
        const ResolvedSpecs specs = resolve(spec_path, options);
        SampleTable table;
        for (std::size_t c = 0; c < specs.curves.size(); ++c) {
            const ProblemSpec& spec = specs.curves[c];
            SampleTable part = sample_problem(spec, options);
            if (specs.curves.size() == 1) {
                table = std::move(part);
                break;
            }
            if (c == 0) {
                table.header.push_back(part.header.front());
                for (const auto& row : part.rows) {
                    table.rows.push_back({row.front()});
                }
            }
            for (std::size_t col = 1; col < part.header.size(); ++col) {
                table.header.push_back(part.header[col] + "_" + std::to_string(c + 1));
            }
            for (std::size_t r = 0; r < part.rows.size(); ++r) {
                table.rows[r].insert(table.rows[r].end(), part.rows[r].begin() + 1, part.rows[r].end());
            }
            double worst = 0.0;
            for (const auto& row : problem_residuals(spec, options)) {
                worst = std::max(worst, row.residual / row.scale);
            }
            out << "curve " << c + 1 << ":";
            for (const auto& [name, value] : specs.draws[c]) {
                out << ' ' << name << '=' << format_number(value);
            }
            out << " max scaled residual " << format_number(worst) << '\n';
        }
        print_notes(out, specs.curves.front());

        const std::string csv = to_csv(table);
        std::ofstream file(output, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "error: cannot write '" << output.string() << "'\n";
            return static_cast<int>(kExitIoError);
        }
        file << csv;
        file.flush();
        if (!file) {
            err << "error: failed writing '" << output.string() << "'\n";
            return static_cast<int>(kExitIoError);
        }
        out << "wrote " << table.rows.size() << " rows x " << table.header.size() << " columns to "
            << output.string() << '\n';
        return static_cast<int>(kExitOk);
    });
}

int cmd_verify(const std::filesystem::path& spec_path, std::ostream& out, std::ostream& err,
               const CommandOptions& options) {
    return guarded(err, [&] {
        const ResolvedSpecs specs = resolve(spec_path, options);
        bool pass = true;
        for (std::size_t c = 0; c < specs.curves.size(); ++c) {
            if (specs.curves.size() > 1) {
                out << "curve " << c + 1 << ":\n";
            }
            const auto rows = problem_residuals(specs.curves[c], options);
            print_notes(out, specs.curves[c]);
            out << "constraint | target | achieved | residual | threshold | status\n";
            for (const auto& row : rows) {
                const double threshold = options.tolerance * row.scale;
                const bool ok = row.residual < threshold;
                pass = pass && ok;
                out << row.label << " | " << format_number(row.target) << " | " << format_number(row.achieved)
                    << " | " << format_number(row.residual) << " | " << format_number(threshold) << " | "
                    << (ok ? "ok" : "FAIL") << '\n';
            }
        }
        out << (pass ? "PASS" : "FAIL") << '\n';
        return static_cast<int>(pass ? kExitOk : kExitVerifyFailed);
    });
}

int cmd_repro(const std::string& name, std::ostream& out, std::ostream& err, const CommandOptions& options) {
    const auto names = repro_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        err << "error: unknown example '" << name << "'; known:";
        for (const auto& n : names) {
            err << ' ' << n;
        }
        err << '\n';
        return kExitInputError;
    }
    return guarded(err, [&] {
        const ReproReport report = run_repro(name, options.seed);
        print_report(out, report);
        return static_cast<int>(report.passed() ? kExitOk : kExitVerifyFailed);
    });
}

} // namespace cexpr::cli
