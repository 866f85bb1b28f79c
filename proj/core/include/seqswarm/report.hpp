#ifndef SEQSWARM_REPORT_HPP
#define SEQSWARM_REPORT_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "seqswarm/optimizers.hpp"

namespace seqswarm {

enum class TableFormat { Csv, Md, Json };

class UnsupportedFormat : public std::runtime_error {
public:
    explicit UnsupportedFormat(const std::string& name)
        : std::runtime_error("unsupported output format: " + name) {}
};

TableFormat parse_format(const std::string& name);  // throws UnsupportedFormat
std::string format_extension(TableFormat f);

/// Fixed 4-decimal rendering used by every report value.
std::string fmt4(double v);

/// A rendered-ready table: preformatted cells plus an optional per-row
/// non-dominated flag (flags empty when the table has no dominance column).
struct Table {
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<bool> flags;
};

/// Deterministic byte output for fixed input. Markdown renders flagged rows'
/// value cells in bold, mirroring the bold markers convention; csv appends a
/// non_dominated column when flags are present.
std::string render_table(const Table& table, TableFormat format);

/// Serialization of a full run record.
std::string run_result_to_json(const RunResult& result);
RunResult run_result_from_json(const std::string& text);

/// Report of one run. csv/md: one row per suite sequence with header
/// columns sequence, priority, cost, non_dominated; json: the full RunResult
/// document (round-trips through run_result_from_json).
std::string emit_run(const RunResult& result, TableFormat format);

}  // namespace seqswarm

#endif
