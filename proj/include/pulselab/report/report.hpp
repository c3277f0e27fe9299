#pragma once

#include <string>
#include <vector>

namespace pulselab::report {

struct ReproRow {
    std::string name;       // quantity, with the inputs pinned
    std::string location;   // where the reference value comes from
    double reference = 0.0;
    double computed = 0.0;
    std::string tolerance;  // human-readable acceptance window
    bool pass = false;
    std::string note;       // discrepancy notes where applicable
};

struct ReproReport {
    std::vector<ReproRow> rows;
    bool all_pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
};

/// Recomputes every headline estimate of the modeled scenario from the
/// engines and compares it against the published reference value.
ReproReport reproduce_reference_numbers();

/// Fixed-width text rendering of the report (one row per line).
std::string render_text(const ReproReport& report);

}  // namespace pulselab::report
