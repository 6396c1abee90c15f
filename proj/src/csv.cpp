#include "ofs/csv.hpp"

#include <charconv>
#include <ostream>
#include <sstream>

namespace ofs {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::uint64_t parse_u64(const std::string& cell) {
    std::uint64_t out = 0;
    const auto result = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    if (result.ec != std::errc{} || result.ptr != cell.data() + cell.size()) {
        throw CsvError("csv: bad integer '" + cell + "'");
    }
    return out;
}

double parse_f64(const std::string& cell) {
    try {
        std::size_t used = 0;
        const double out = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument("trailing junk");
        return out;
    } catch (const std::exception&) {
        throw CsvError("csv: bad number '" + cell + "'");
    }
}

std::string next_data_line(std::istream& in, bool* got) {
    std::string line;
    *got = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        *got = true;
        return line;
    }
    return line;
}

} // namespace

// ---- statistics -----------------------------------------------------------

void write_statistics_csv(std::ostream& out, const std::vector<IterationStats>& stats) {
    const std::size_t objectives = stats.empty() ? 0 : stats.front().objective_min.size();
    out << "iteration,front_size,hypervolume_or_gd";
    for (std::size_t k = 0; k < objectives; ++k) {
        out << ",obj" << k << "_min,obj" << k << "_max";
    }
    out << ",wall_time_s\n";
    for (const auto& row : stats) {
        out << row.iteration << ',' << row.front_size << ','
            << format_double(row.hypervolume_or_gd);
        for (std::size_t k = 0; k < objectives; ++k) {
            out << ',' << format_double(row.objective_min[k]) << ','
                << format_double(row.objective_max[k]);
        }
        out << ',' << format_double(row.wall_time_s) << '\n';
    }
}

std::vector<IterationStats> read_statistics_csv(std::istream& in) {
    bool got = false;
    const std::string header = next_data_line(in, &got);
    if (!got) throw CsvError("csv: missing statistics header");
    const auto columns = split(header, ',');
    if (columns.size() < 4 || columns[0] != "iteration" || columns.back() != "wall_time_s") {
        throw CsvError("csv: unrecognized statistics header");
    }
    const std::size_t objectives = (columns.size() - 4) / 2;
    std::vector<IterationStats> out;
    for (;;) {
        const std::string line = next_data_line(in, &got);
        if (!got) break;
        const auto cells = split(line, ',');
        if (cells.size() != columns.size()) {
            throw CsvError("csv: statistics row has " + std::to_string(cells.size()) +
                           " cells, expected " + std::to_string(columns.size()));
        }
        IterationStats row;
        row.iteration = parse_u64(cells[0]);
        row.front_size = parse_u64(cells[1]);
        row.hypervolume_or_gd = parse_f64(cells[2]);
        for (std::size_t k = 0; k < objectives; ++k) {
            row.objective_min.push_back(parse_f64(cells[3 + 2 * k]));
            row.objective_max.push_back(parse_f64(cells[4 + 2 * k]));
        }
        row.wall_time_s = parse_f64(cells.back());
        out.push_back(std::move(row));
    }
    return out;
}

// ---- per-task metrics -----------------------------------------------------

void write_metrics_csv(std::ostream& out, const std::vector<TaskMetricsRow>& rows) {
    out << "iteration,task_id,created_ns,collected_ns,pure_ns,status,cycle_ns,overhead_frac\n";
    for (const auto& row : rows) {
        out << row.iteration << ',' << row.task_id << ',' << row.created_ns << ','
            << row.collected_ns << ',' << row.pure_ns << ',' << row.status << ','
            << row.cycle_ns << ',' << format_double(row.overhead_frac) << '\n';
    }
}

std::vector<TaskMetricsRow> read_metrics_csv(std::istream& in) {
    bool got = false;
    const std::string header = next_data_line(in, &got);
    if (!got) throw CsvError("csv: missing metrics header");
    if (header != "iteration,task_id,created_ns,collected_ns,pure_ns,status,cycle_ns,overhead_frac") {
        throw CsvError("csv: unrecognized metrics header");
    }
    std::vector<TaskMetricsRow> out;
    for (;;) {
        const std::string line = next_data_line(in, &got);
        if (!got) break;
        const auto cells = split(line, ',');
        if (cells.size() != 8) throw CsvError("csv: metrics row needs 8 cells");
        TaskMetricsRow row;
        row.iteration = parse_u64(cells[0]);
        row.task_id = parse_u64(cells[1]);
        row.created_ns = parse_u64(cells[2]);
        row.collected_ns = parse_u64(cells[3]);
        row.pure_ns = parse_u64(cells[4]);
        row.status = cells[5];
        row.cycle_ns = parse_u64(cells[6]);
        row.overhead_frac = parse_f64(cells[7]);
        out.push_back(std::move(row));
    }
    return out;
}

// ---- sweep report ---------------------------------------------------------

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << "population,serial_wall_s,distributed_wall_s,speedup,mean_overhead_frac,status\n";
    for (const auto& row : rows) {
        std::string status = row.status;
        for (auto& c : status) {
            if (c == ',' || c == '\n') c = ' '; // keep the row parseable
        }
        out << row.population << ',' << format_double(row.serial_wall_s) << ','
            << format_double(row.distributed_wall_s) << ',' << format_double(row.speedup) << ','
            << format_double(row.mean_overhead_frac) << ',' << status << '\n';
    }
}

std::vector<ReportRow> read_report_csv(std::istream& in) {
    bool got = false;
    const std::string header = next_data_line(in, &got);
    if (!got) throw CsvError("csv: missing report header");
    if (header != "population,serial_wall_s,distributed_wall_s,speedup,mean_overhead_frac,status") {
        throw CsvError("csv: unrecognized report header");
    }
    std::vector<ReportRow> out;
    for (;;) {
        const std::string line = next_data_line(in, &got);
        if (!got) break;
        const auto cells = split(line, ',');
        if (cells.size() != 6) throw CsvError("csv: report row needs 6 cells");
        ReportRow row;
        row.population = parse_u64(cells[0]);
        row.serial_wall_s = parse_f64(cells[1]);
        row.distributed_wall_s = parse_f64(cells[2]);
        row.speedup = parse_f64(cells[3]);
        row.mean_overhead_frac = parse_f64(cells[4]);
        row.status = cells[5];
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace ofs
