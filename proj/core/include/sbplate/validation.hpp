#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sbplate/analysis.hpp"

namespace sbplate {

/// One reference value transcribed from the published benchmark tables.
struct ReferenceRow {
    std::string table;    ///< T1..T5
    std::string bc;       ///< four boundary letters
    double b_over_h = 0;  ///< thickness ratio
    double psi_deg = 0;   ///< skew angle [deg]
    double n = 0;         ///< gradient index
    std::string quantity; ///< omega_1..omega_4, lambda_cru, lambda_crb
    int mesh = 8;         ///< nex = nez
    double value = 0;
    double rtol = 0;
    bool skip = false;    ///< excluded from pass/fail (flagged source anomaly)
};

const std::vector<std::string>& reference_table_ids();

/// Rows of one embedded table (T1..T5).
std::vector<ReferenceRow> reference_table(const std::string& id);

struct ValidationRowResult {
    ReferenceRow ref;
    double computed = 0;           ///< under the chosen SCSC assignment
    double computed_alternate = 0; ///< under the shifted letters (SCSC only)
    bool has_alternate = false;
    double rel_err = 0;
    bool pass = false;
};

struct ValidationReport {
    std::vector<ValidationRowResult> rows;
    bool all_pass = true;          ///< over non-skipped rows
    double elapsed_seconds = 0;
    std::string scsc_assignment;   ///< description of the chosen letter map
};

/// Runs every configuration of the requested tables and compares at the
/// per-row tolerance. For SCSC both letter-to-edge assignments are evaluated;
/// the better one decides pass/fail and is recorded. Rows run concurrently up
/// to SBPLATE_MAX_CONCURRENCY.
ValidationReport validate_tables(const std::vector<std::string>& ids);

/// Same harness on caller-provided rows (used by the self-test).
ValidationReport validate_rows(const std::vector<ReferenceRow>& rows);

void write_validation_text(const ValidationReport& report, std::ostream& out);
void write_validation_csv(const ValidationReport& report, std::ostream& out);

} // namespace sbplate
