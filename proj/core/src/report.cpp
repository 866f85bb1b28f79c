#include "seqswarm/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "seqswarm/pareto.hpp"

namespace seqswarm {

TableFormat parse_format(const std::string& name) {
    if (name == "csv") return TableFormat::Csv;
    if (name == "md") return TableFormat::Md;
    if (name == "json") return TableFormat::Json;
    throw UnsupportedFormat(name);
}

std::string format_extension(TableFormat f) {
    switch (f) {
        case TableFormat::Csv: return "csv";
        case TableFormat::Md: return "md";
        case TableFormat::Json: return "json";
    }
    return "txt";
}

std::string fmt4(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.4f", v);
    return buffer;
}

namespace {

std::string csv_cell(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string quoted = "\"";
    for (char c : cell) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

bool looks_numeric(const std::string& cell) {
    if (cell.empty()) return false;
    char* end = nullptr;
    std::strtod(cell.c_str(), &end);
    return end == cell.c_str() + cell.size();
}

std::string render_csv(const Table& table) {
    std::ostringstream out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out << ',';
        out << csv_cell(table.columns[c]);
    }
    const bool flagged = !table.flags.empty();
    if (flagged) out << ",non_dominated";
    out << '\n';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
            if (c) out << ',';
            out << csv_cell(table.rows[r][c]);
        }
        if (flagged) out << ',' << (table.flags[r] ? "true" : "false");
        out << '\n';
    }
    return out.str();
}

std::string render_md(const Table& table) {
    std::ostringstream out;
    if (!table.title.empty()) out << "### " << table.title << "\n\n";
    out << '|';
    for (const auto& col : table.columns) out << ' ' << col << " |";
    out << "\n|";
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << " --- |";
    out << '\n';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const bool bold_row = r < table.flags.size() && table.flags[r];
        out << '|';
        for (const auto& cell : table.rows[r]) {
            // bold markers on the numeric cells of non-dominated rows
            if (bold_row && looks_numeric(cell)) {
                out << " **" << cell << "** |";
            } else {
                out << ' ' << (cell.empty() ? "-" : cell) << " |";
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string render_json(const Table& table) {
    nlohmann::ordered_json doc;
    doc["title"] = table.title;
    doc["columns"] = table.columns;
    doc["rows"] = table.rows;
    if (!table.flags.empty()) {
        doc["non_dominated"] = std::vector<bool>(table.flags.begin(), table.flags.end());
    }
    return doc.dump(2) + "\n";
}

}  // namespace

std::string render_table(const Table& table, TableFormat format) {
    switch (format) {
        case TableFormat::Csv: return render_csv(table);
        case TableFormat::Md: return render_md(table);
        case TableFormat::Json: return render_json(table);
    }
    throw UnsupportedFormat("unknown");
}

std::string run_result_to_json(const RunResult& result) {
    nlohmann::ordered_json doc;
    doc["algorithm"] = algorithm_name(result.algorithm);
    doc["agents"] = result.agents;
    doc["seed"] = result.seed;
    doc["iterations_executed"] = result.iterations_executed;
    doc["iterations_to_coverage"] = result.iterations_to_coverage;
    doc["coverage_reached"] = result.coverage_reached;
    doc["distinct_sequences_evaluated"] = result.distinct_sequences_evaluated;
    doc["suite"] = nlohmann::ordered_json::array();
    for (const TestSequence& seq : result.suite.sequences()) {
        doc["suite"].push_back(seq.to_string());
    }
    doc["objectives"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < result.objectives.size(); ++i) {
        doc["objectives"].push_back(
            {{"sequence", result.suite.sequences()[i].to_string()},
             {"priority", result.objectives[i].priority},
             {"cost", result.objectives[i].cost}});
    }
    doc["archive"] = nlohmann::ordered_json::array();
    for (const ArchiveEntry& entry : result.archive) {
        doc["archive"].push_back({{"sequence", entry.sequence.to_string()},
                                  {"priority", entry.objectives.priority},
                                  {"cost", entry.objectives.cost}});
    }
    doc["trace"] = result.trace;
    doc["wall_time_seconds"] = result.wall_time_seconds;
    return doc.dump(2) + "\n";
}

RunResult run_result_from_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    RunResult result;
    result.algorithm = algorithm_from_name(doc.at("algorithm").get<std::string>());
    result.agents = doc.at("agents").get<int>();
    result.seed = doc.at("seed").get<std::uint64_t>();
    result.iterations_executed = doc.at("iterations_executed").get<int>();
    result.iterations_to_coverage = doc.at("iterations_to_coverage").get<int>();
    result.coverage_reached = doc.at("coverage_reached").get<bool>();
    result.distinct_sequences_evaluated = doc.at("distinct_sequences_evaluated").get<int>();
    for (const auto& seq : doc.at("suite")) {
        result.suite.push_back(TestSequence::from_string(seq.get<std::string>()));
    }
    for (const auto& entry : doc.at("objectives")) {
        result.objectives.push_back(
            {entry.at("priority").get<double>(), entry.at("cost").get<double>()});
    }
    std::uint64_t age = 0;
    for (const auto& entry : doc.at("archive")) {
        result.archive.push_back(
            {TestSequence::from_string(entry.at("sequence").get<std::string>()),
             {entry.at("priority").get<double>(), entry.at("cost").get<double>()},
             age++});
    }
    result.trace = doc.at("trace").get<std::vector<double>>();
    result.wall_time_seconds = doc.at("wall_time_seconds").get<double>();
    return result;
}

std::string emit_run(const RunResult& result, TableFormat format) {
    if (format == TableFormat::Json) return run_result_to_json(result);

    const auto flagged_indices = non_dominated_indices(result.objectives);
    std::vector<bool> flags(result.objectives.size(), false);
    for (std::size_t i : flagged_indices) flags[i] = true;
    // Flags must agree with the brute-force dominance filter before anything
    // is written.
    for (std::size_t i = 0; i < result.objectives.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < result.objectives.size(); ++j) {
            dominated = dominated ||
                        (j != i && dominates(result.objectives[j], result.objectives[i]));
        }
        if (flags[i] == dominated) {
            throw std::logic_error("non-dominated flag disagrees with the dominance filter");
        }
    }

    Table table;
    table.title = algorithm_name(result.algorithm) + " agents=" + std::to_string(result.agents) +
                  " seed=" + std::to_string(result.seed);
    table.columns = {"sequence", "priority", "cost"};
    for (std::size_t i = 0; i < result.objectives.size(); ++i) {
        table.rows.push_back({result.suite.sequences()[i].to_string(),
                              fmt4(result.objectives[i].priority),
                              fmt4(result.objectives[i].cost)});
    }
    table.flags = flags;
    return render_table(table, format);
}

}  // namespace seqswarm
