#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "coa/assistance.hpp"
#include "coa/qmat.hpp"

namespace coa::io {

// MatrixFile document:
//
//   {"dim": 2, "label": "optional", "entries": [[[re, im], [re, im]],
//                                               [[re, im], [re, im]]]}
//
// Entries are row-major; complex numbers are always [re, im] pairs. `dim` is
// required, `label` is optional.
struct MatrixDocument {
    std::size_t dim = 0;
    std::string label;
    ComplexMatrix entries;
};

// ParseError for malformed JSON or entries that are not number pairs,
// BadShape for ragged or non-square entries or a dim mismatch.
MatrixDocument parse_matrix_document(std::string_view text);
MatrixDocument load_matrix_document(const std::filesystem::path& path);

// Fully validated density matrix.
DensityMatrix read_state(std::string_view text, const Tolerances& tol = {});
DensityMatrix read_state_file(const std::filesystem::path& path, const Tolerances& tol = {});
// Hermitian-only validation, for inputs that need not be normalized.
ComplexMatrix read_hermitian(std::string_view text, const Tolerances& tol = {});

// 17 significant digits, so every double survives a round trip.
std::string write_matrix_document(const ComplexMatrix& m, std::string_view label = {});
std::string format_double(double x);

// One row of the comparison between the two coherences of assistance.
struct ReportRecord {
    std::string label;
    std::size_t dim = 0;
    double c_l1 = 0.0;
    double c_rel_ent = 0.0;
    double ca_l1_lower = 0.0;
    double ca_l1_upper = 0.0;
    bool ca_l1_exact = false;
    double ca_r_lower = 0.0;
    double ca_r_upper = 0.0;
    bool ca_r_exact = false;
    StateClassKind state_class = StateClassKind::S1PureIncoherent;
    double accessible_l1 = 0.0;
    double accessible_rel_ent = 0.0;
    double negativity_of_assistance = 0.0;
    // base <= lower <= upper for both measures
    bool sandwich_ok = false;
    // lower > base for mixed states, lower == base for pure ones
    bool strict_ok = false;
    // the relative-entropy witness never beats its own l1 average
    bool dominance_ok = false;
    // 0 <= Ca_l1 <= dim - 1 and 0 <= Ca_r <= log2(dim)
    bool range_ok = false;

    friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

ReportRecord build_report_record(const DensityMatrix& rho, std::string label, const OptimizerConfig& config = {},
                                 const Tolerances& tol = {});

enum class ReportFormat { HumanTable, Csv, JsonLines };

// Fixed CSV header, in column order.
const std::vector<std::string>& csv_columns();

std::string write_report(const std::vector<ReportRecord>& records, ReportFormat format);
// One "# ..." line per record with pass/fail for each checked relation, then
// a total. Readers skip lines starting with '#'.
std::string write_report_footer(const std::vector<ReportRecord>& records);
std::vector<ReportRecord> read_report_csv(std::string_view text);
std::vector<ReportRecord> read_report_jsonl(std::string_view text);

}  // namespace coa::io
