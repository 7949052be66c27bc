#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "airylab/fourier.hpp"
#include "airylab/io.hpp"

namespace airylab {

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw IoError("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw IoError("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path.string());
  return ss.str();
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

std::string to_csv(const CsvTable& table) {
  if (table.header.size() != table.columns.size()) {
    throw std::invalid_argument("to_csv: header and column count differ");
  }
  const std::size_t rows = table.columns.empty() ? 0 : table.columns.front().size();
  for (const auto& c : table.columns) {
    if (c.size() != rows) throw std::invalid_argument("to_csv: columns differ in length");
  }
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i) out += ',';
      out += format_double(table.columns[i][r]);
    }
    out += '\n';
  }
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("parse_csv: empty input");
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) t.header.push_back(cell);
  }
  t.columns.assign(t.header.size(), {});
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::size_t col = 0;
    const char* p = line.data();
    const char* end = p + line.size();
    while (true) {
      if (col >= t.header.size()) throw IoError("parse_csv: too many cells on line " + std::to_string(lineno));
      double v = 0.0;
      const auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc()) throw IoError("parse_csv: bad number on line " + std::to_string(lineno));
      t.columns[col++].push_back(v);
      p = res.ptr;
      if (p == end) break;
      if (*p != ',') throw IoError("parse_csv: unexpected character on line " + std::to_string(lineno));
      ++p;
    }
    if (col != t.header.size()) throw IoError("parse_csv: too few cells on line " + std::to_string(lineno));
  }
  return t;
}

CsvTable field_table(const WaveField& field) {
  const WaveField pos = to_representation(field, Representation::Position);
  CsvTable t;
  t.header = {"x", "re", "im", "density"};
  t.columns.assign(4, {});
  for (auto& c : t.columns) c.reserve(pos.size());
  for (std::size_t k = 0; k < pos.size(); ++k) {
    const Complex z = pos.amplitudes[k];
    t.columns[0].push_back(pos.grid.x(k));
    t.columns[1].push_back(z.real());
    t.columns[2].push_back(z.imag());
    t.columns[3].push_back(std::norm(z));
  }
  return t;
}

CsvTable trajectory_table(const std::vector<double>& t, const std::vector<double>& x_peak) {
  if (t.size() != x_peak.size()) throw std::invalid_argument("trajectory_table: length mismatch");
  return {{"t", "x_peak"}, {t, x_peak}};
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
  write_file_atomic(path, to_csv(table));
}

CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_file(path)); }

}  // namespace airylab
