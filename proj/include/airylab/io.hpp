#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "airylab/grid.hpp"

namespace airylab {

/// Any failure to read or write an artifact.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes `content` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// Locale-independent scientific text with 17 significant digits (round-trips doubles).
std::string format_double(double v);

/// Named columns of equal length.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

std::string to_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text);

/// `x,re,im,density`, one row per grid point, in the position representation.
CsvTable field_table(const WaveField& field);
/// `t,x_peak`.
CsvTable trajectory_table(const std::vector<double>& t, const std::vector<double>& x_peak);

void write_csv(const CsvTable& table, const std::filesystem::path& path);
CsvTable read_csv(const std::filesystem::path& path);

/// One line of a plot.
struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label = "x";
  std::string y_label;
  int width = 720;
  int height = 440;
};

/// Standalone SVG with one polyline per series, axes, tick labels and a legend.
/// Output depends only on the input. Throws std::invalid_argument on an empty series
/// list, an empty series, mismatched lengths or non-finite samples.
std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& options = {});

void write_svg(const std::vector<PlotSeries>& series, const std::filesystem::path& path,
               const PlotOptions& options = {});

}  // namespace airylab
