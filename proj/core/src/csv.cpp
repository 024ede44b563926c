// Apache License, Version 2.0, refer to LICENSE.txt

#include "zibayes/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "zibayes/errors.hpp"

namespace zibayes {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? std::string()
                                            : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

CountSample read_count_column(const std::string& path,
                              const std::string& column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  const std::vector<std::string> header = split_csv_line(line);
  std::size_t col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == column) {
      col = i;
      break;
    }
  }
  if (col == header.size()) {
    throw DataError(path + ": no column named '" + column + "' in header");
  }

  std::vector<std::int64_t> counts;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (col >= fields.size()) {
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": missing field for column '" + column + "'");
    }
    const std::string& f = fields[col];
    std::int64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(f.data(), f.data() + f.size(), value);
    if (ec != std::errc() || ptr != f.data() + f.size()) {
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": '" + f + "' is not an integer count");
    }
    if (value < 0) {
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": negative count " + f);
    }
    counts.push_back(value);
  }
  if (counts.empty()) {
    throw DataError(path + ": no data rows");
  }
  return CountSample(std::move(counts));
}

}  // namespace zibayes
