#include "fqcorr/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fqcorr {

std::string config_hash(const std::map<std::string, std::string>& options) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  for (auto& [k, v] : options) {
    mix(k);
    mix("=");
    mix(v);
    mix("\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

std::string format_double(double v) {
  if (v == 0.0) return "0";  // normalize -0
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = std::strtod(buf, nullptr);
    if (back == v) return buf;
  }
  return buf;
}

std::string format_complex(std::complex<double> v) {
  return format_double(v.real()) + "," + format_double(v.imag());
}

CsvWriter::CsvWriter(const std::string& path) {
  file_ = std::fopen(path.c_str(), "wb");
  if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
}

CsvWriter::~CsvWriter() {
  if (file_) std::fclose(file_);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  std::string line;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ",";
    line += cells[i];
  }
  line += "\n";
  std::fwrite(line.data(), 1, line.size(), file_);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  std::fwrite(content.data(), 1, content.size(), f);
  std::fclose(f);
}

}  // namespace fqcorr
