#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cexpr::cli {

struct ReproCheck {
    std::string label;
    std::string expected;
    std::string computed;
    bool pass = false;
};

struct ReproReport {
    std::string name;
    std::string title;
    std::vector<std::string> notes;
    std::vector<ReproCheck> checks;

    bool passed() const;
};

/// Names accepted by run_repro, in display order.
std::vector<std::string> repro_names();

/// Rebuilds a worked example from scratch and compares against the
/// published numbers. Throws std::invalid_argument on an unknown name.
ReproReport run_repro(const std::string& name, std::uint64_t seed = 1);

void print_report(std::ostream& out, const ReproReport& report);

} // namespace cexpr::cli
