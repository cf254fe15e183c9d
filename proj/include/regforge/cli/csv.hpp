#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "regforge/sim.hpp"

namespace regforge::cli {

/// printf "%.9g"; the CSV contract.
std::string format_number(double v);

/**
 * Header `t,u,y[,x1..xn][,i_a,e_g,p_out,p_in]`, 9 significant digits, '\n' line ends.
 * States are written when the series recorded them.
 */
void write_csv(std::ostream& os, const sim::TimeSeries& ts, const sim::ElectricalTrace* electrical = nullptr);
void write_csv_file(const std::string& path, const sim::TimeSeries& ts,
                    const sim::ElectricalTrace* electrical = nullptr);

struct CsvTable {
    std::vector<std::string>         header;
    std::vector<std::vector<double>> columns;

    const std::vector<double>& column(const std::string& name) const;
};

CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::string& path);

/// Rebuilds the t,u,y (and x*) part of a trajectory from a table.
sim::TimeSeries series_from_csv(const CsvTable& table, const std::string& output_column = "y");

}  // namespace regforge::cli
