#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "cexpr/engine.hpp"
#include "cli/problem_spec.hpp"

namespace cexpr::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitInputError = 2,
    kExitSingular = 3,
    kExitIoError = 4,
};

struct CommandOptions {
    std::uint64_t seed = 1;
    /// Residual threshold factor; a residual passes when < tolerance * scale.
    double tolerance = 1e-8;
    /// Test hook: mutates Xi after the solve and before evaluation.
    std::function<void(CoefficientMatrix&)> coefficient_hook;
};

struct ResidualRow {
    std::string label;
    double target = 0.0;
    double achieved = 0.0;
    double residual = 0.0;
    double scale = 1.0;
};

/// Constraint residuals of a resolved problem (engine or closed form).
/// Throws the library's errors (SingularSupport, ...).
std::vector<ResidualRow> problem_residuals(const ProblemSpec& spec, const CommandOptions& options = {});

/// Header (including the abscissa column) and rows of a sampled problem.
struct SampleTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

SampleTable sample_problem(const ProblemSpec& spec, const CommandOptions& options = {});

std::string to_csv(const SampleTable& table);

int cmd_build(const std::filesystem::path& spec_path, std::ostream& out, std::ostream& err,
              const CommandOptions& options = {});
int cmd_sample(const std::filesystem::path& spec_path, const std::filesystem::path& output, std::ostream& out,
               std::ostream& err, const CommandOptions& options = {});
int cmd_verify(const std::filesystem::path& spec_path, std::ostream& out, std::ostream& err,
               const CommandOptions& options = {});
int cmd_repro(const std::string& name, std::ostream& out, std::ostream& err, const CommandOptions& options = {});

} // namespace cexpr::cli
