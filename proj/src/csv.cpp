#include "mpic/csv.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace mpic {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns,
                     const std::vector<std::string>& meta)
    : path_(path), ncol_(columns.size()) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path);
  if (!out_) throw std::runtime_error("cannot write '" + path.string() + "'");
  out_ << kCsvVersion << '\n';
  for (const auto& m : meta) out_ << "# " << m << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
  out_.flush();
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != ncol_) throw std::logic_error("csv row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_double(values[i]);
  out_ << '\n';
  out_.flush();
}

void CsvWriter::comment(const std::string& text) {
  out_ << "# " << text << '\n';
  out_.flush();
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw std::invalid_argument("no column '" + name + "'");
}

std::vector<double> CsvTable::values(const std::string& name) const {
  std::size_t c = column(name);
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.push_back(r[c]);
  return v;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != kCsvVersion)
    throw std::runtime_error("'" + path.string() + "' lacks the '" + kCsvVersion + "' header");
  CsvTable t;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.size() > 2 ? line.substr(2) : "";
      t.comments.push_back(body);
      std::istringstream ws(body);
      for (std::string w; ws >> w;) {
        auto eq = w.find('=');
        if (eq != std::string::npos && eq > 0) t.meta[w.substr(0, eq)] = w.substr(eq + 1);
      }
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (t.columns.empty()) {
      t.columns = cells;
      continue;
    }
    if (cells.size() != t.columns.size())
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(t.columns.size()) + " fields");
    std::vector<double> r;
    for (const auto& c : cells) {
      try {
        std::size_t used = 0;
        r.push_back(std::stod(c, &used));
        if (used != c.size()) throw std::invalid_argument(c);
      } catch (const std::exception&) {
        throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": bad number '" + c + "'");
      }
    }
    t.rows.push_back(std::move(r));
  }
  if (t.columns.empty()) throw std::runtime_error("'" + path.string() + "' has no header row");
  return t;
}

}  // namespace mpic
