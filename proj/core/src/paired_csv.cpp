#include "pairedfd/paired_csv.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pairedfd/error.hpp"
#include "pairedfd/format.hpp"

namespace pairedfd {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

[[noreturn]] void schema_error(std::size_t line, std::size_t column, const std::string& what) {
    throw SchemaError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                      what);
}

struct SubjectRows {
    std::vector<Cell> rows[2];
    bool seen[2] = {false, false};
};

}  // namespace

PairedSample read_paired_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    // header
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) break;
    }
    if (trim(line).empty()) throw SchemaError("empty input: no header row");
    const auto header = split_fields(line);
    if (header.size() < 4) schema_error(line_no, 1, "header needs subject, condition and >= 2 grid columns");
    if (header[0] != "subject") schema_error(line_no, 1, "first header field must be 'subject'");
    if (header[1] != "condition") schema_error(line_no, 2, "second header field must be 'condition'");

    std::vector<double> points;
    for (std::size_t c = 2; c < header.size(); ++c) {
        const auto field = header[c];
        if (field.substr(0, 2) != "s_") schema_error(line_no, c + 1, "grid column must look like s_<location>");
        const auto loc = field.substr(2);
        if (loc.find('/') != std::string_view::npos) schema_error(line_no, c + 1, "bad grid location");
        const auto value = parse_real(loc);
        if (!value) schema_error(line_no, c + 1, "grid location '" + std::string(loc) + "' is not a number");
        points.push_back(*value);
    }
    std::optional<Grid> grid;
    try {
        grid.emplace(points);
    } catch (const DegenerateGrid& e) {
        schema_error(line_no, 3, std::string("invalid grid: ") + e.what());
    }

    std::vector<std::string> order;
    std::map<std::string, SubjectRows> subjects;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            schema_error(line_no, std::min(fields.size(), header.size()) + 1,
                         "expected " + std::to_string(header.size()) + " fields, found " +
                             std::to_string(fields.size()));
        }
        const std::string id(fields[0]);
        if (id.empty()) schema_error(line_no, 1, "empty subject id");
        int condition = -1;
        if (fields[1] == "0") condition = 0;
        if (fields[1] == "1") condition = 1;
        if (condition < 0) schema_error(line_no, 2, "condition must be 0 or 1, got '" + std::string(fields[1]) + "'");

        auto [it, inserted] = subjects.try_emplace(id);
        if (inserted) order.push_back(id);
        SubjectRows& rows = it->second;
        if (rows.seen[condition]) {
            schema_error(line_no, 2, "subject '" + id + "' has more than one row for condition " +
                                         std::to_string(condition));
        }
        rows.seen[condition] = true;

        std::vector<Cell>& cells = rows.rows[condition];
        cells.reserve(points.size());
        for (std::size_t c = 2; c < fields.size(); ++c) {
            if (fields[c] == kMissingToken) {
                cells.emplace_back(std::nullopt);
                continue;
            }
            const auto value = fields[c].find('/') == std::string_view::npos ? parse_real(fields[c])
                                                                              : std::nullopt;
            if (!value) {
                schema_error(line_no, c + 1, "'" + std::string(fields[c]) + "' is neither a number nor NA");
            }
            cells.emplace_back(*value);
        }
    }
    if (order.empty()) throw SchemaError("no data rows after the header");

    std::vector<std::vector<Cell>> c0, c1;
    for (const auto& id : order) {
        auto& rows = subjects.at(id);
        for (int c = 0; c < 2; ++c) {
            if (!rows.seen[c]) {
                throw SchemaError("subject '" + id + "' has no row for condition " + std::to_string(c));
            }
        }
        c0.push_back(std::move(rows.rows[0]));
        c1.push_back(std::move(rows.rows[1]));
    }
    return PairedSample(FunctionalSample(*grid, std::move(c0), order),
                        FunctionalSample(*grid, std::move(c1), order));
}

PairedSample read_paired_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open '" + path.string() + "'");
    return read_paired_csv(in);
}

void write_paired_csv(std::ostream& out, const PairedSample& paired) {
    const Grid& grid = paired.grid();
    out << "subject,condition";
    for (double s : grid.points()) out << ",s_" << format_real(s);
    out << '\n';
    for (std::size_t i = 0; i < paired.subjects(); ++i) {
        const FunctionalSample* conds[2] = {&paired.condition0(), &paired.condition1()};
        for (int c = 0; c < 2; ++c) {
            out << conds[c]->subject_ids()[i] << ',' << c;
            for (const Cell& cell : conds[c]->row(i)) {
                out << ',' << (cell ? format_real(*cell) : std::string(kMissingToken));
            }
            out << '\n';
        }
    }
}

void write_paired_csv(const std::filesystem::path& path, const PairedSample& paired) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write '" + path.string() + "'");
    write_paired_csv(out, paired);
}

}  // namespace pairedfd
