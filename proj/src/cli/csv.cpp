#include "regforge/cli/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "regforge/cli/io_error.hpp"
#include "regforge/cli/scenario.hpp"
#include "regforge/error.hpp"

namespace regforge::cli {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_csv(std::ostream& os, const sim::TimeSeries& ts, const sim::ElectricalTrace* electrical) {
    const std::size_t nx = ts.states.empty() ? 0 : ts.states.front().size();
    std::string       line = "t,u,y";
    for (std::size_t i = 1; i <= nx; ++i) line += ",x" + std::to_string(i);
    if (electrical) line += ",i_a,e_g,p_out,p_in";
    os << line << '\n';

    for (std::size_t k = 0; k < ts.size(); ++k) {
        line = format_number(ts.times[k]);
        line += ',' + format_number(ts.inputs[k]);
        line += ',' + format_number(ts.outputs[k]);
        for (std::size_t i = 0; i < nx; ++i) line += ',' + format_number(ts.states[k][i]);
        if (electrical) {
            line += ',' + format_number(electrical->i_a[k]);
            line += ',' + format_number(electrical->e_g[k]);
            line += ',' + format_number(electrical->p_out[k]);
            line += ',' + format_number(electrical->p_in[k]);
        }
        os << line << '\n';
    }
}

void write_csv_file(const std::string& path, const sim::TimeSeries& ts, const sim::ElectricalTrace* electrical) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    write_csv(out, ts, electrical);
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        throw InvalidInput("CSV has no column '" + name + "'");
    }
    return columns[static_cast<std::size_t>(it - header.begin())];
}

CsvTable read_csv(std::istream& is) {
    CsvTable    table;
    std::string line;
    if (!std::getline(is, line)) {
        throw InvalidInput("CSV is empty");
    }
    std::stringstream hs(line);
    for (std::string cell; std::getline(hs, cell, ',');) table.header.push_back(cell);
    table.columns.resize(table.header.size());

    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::size_t       col = 0;
        for (std::string cell; std::getline(ls, cell, ','); ++col) {
            if (col >= table.header.size()) {
                throw InvalidInput("CSV row " + std::to_string(row) + " has too many fields");
            }
            table.columns[col].push_back(parse_number(cell, table.header[col]));
        }
        if (col != table.header.size()) {
            throw InvalidInput("CSV row " + std::to_string(row) + " has " + std::to_string(col) + " fields, expected " +
                               std::to_string(table.header.size()));
        }
    }
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read '" + path + "'");
    }
    return read_csv(in);
}

sim::TimeSeries series_from_csv(const CsvTable& table, const std::string& output_column) {
    sim::TimeSeries ts;
    ts.times   = table.column("t");
    ts.inputs  = table.column("u");
    ts.outputs = table.column(output_column);

    std::vector<const std::vector<double>*> xs;
    for (std::size_t i = 1;; ++i) {
        const auto name = "x" + std::to_string(i);
        if (std::find(table.header.begin(), table.header.end(), name) == table.header.end()) break;
        xs.push_back(&table.column(name));
    }
    if (!xs.empty()) {
        ts.states.resize(ts.times.size(), std::vector<double>(xs.size()));
        for (std::size_t k = 0; k < ts.times.size(); ++k) {
            for (std::size_t i = 0; i < xs.size(); ++i) ts.states[k][i] = (*xs[i])[k];
        }
    }
    return ts;
}

}  // namespace regforge::cli
