#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace fqcorr {

inline constexpr int kSchemaVersion = 1;

// FNV-1a over the canonical "key=value\n" rendering of an option map; embedded
// in every report so identical configs are recognizable byte-for-byte.
std::string config_hash(const std::map<std::string, std::string>& options);

// Shortest-exact decimal rendering (round-trips through double).
std::string format_double(double v);
std::string format_complex(std::complex<double> v);  // "re,im" CSV cell pair

// Minimal CSV writer with fixed formatting.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();
  void row(const std::vector<std::string>& cells);
  bool ok() const { return file_ != nullptr; }

 private:
  std::FILE* file_;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace fqcorr
