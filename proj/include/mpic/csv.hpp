#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace mpic {

inline constexpr const char* kCsvVersion = "# mimetic-gempic v1";

// Writes the version line and the header on open; every row is flushed.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns,
            const std::vector<std::string>& meta = {});
  void row(const std::vector<double>& values);
  void comment(const std::string& text);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t ncol_;
};

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::map<std::string, std::string> meta;  // key=value pairs from comment lines
  std::vector<std::string> comments;

  std::size_t column(const std::string& name) const;
  std::vector<double> values(const std::string& name) const;
};

// Rejects files without the version line.
CsvTable read_csv(const std::filesystem::path& path);

std::string format_double(double v);

}  // namespace mpic
