#include "rbmlab/sample_io.hpp"

#include <fstream>
#include <stdexcept>

namespace rbmlab {

namespace {

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r");
  return s.substr(from, to - from + 1);
}

}  // namespace

SampleFile import_samples(const std::string& path, std::size_t expected_width) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sample file: " + path);

  SampleFile out;
  std::vector<std::uint8_t> bits;
  std::size_t width = 0, rows = 0, line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty()) continue;
    if (body[0] == '#') {
      const std::string meta = trim(body.substr(1));
      const auto eq = meta.find('=');
      if (eq != std::string::npos) {
        out.metadata[trim(meta.substr(0, eq))] = trim(meta.substr(eq + 1));
      }
      continue;
    }
    if (width == 0) {
      width = body.size();
      if (expected_width && width != expected_width) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": sample width " + std::to_string(width) +
                                 " does not match expected " +
                                 std::to_string(expected_width));
      }
    } else if (body.size() != width) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": ragged sample width");
    }
    for (char ch : body) {
      if (ch != '0' && ch != '1') {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": sample characters must be 0 or 1");
      }
      bits.push_back(ch == '1' ? 1 : 0);
    }
    ++rows;
  }
  if (rows == 0) throw std::runtime_error(path + ": no samples found");

  out.batch.chains = rows;
  out.batch.width = width;
  out.batch.bits = std::move(bits);
  return out;
}

void export_samples(const std::string& path, const StateBatch& batch,
                    const std::map<std::string, std::string>& metadata) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write sample file: " + path);
  for (const auto& [key, value] : metadata) {
    out << "# " << key << " = " << value << '\n';
  }
  std::string line(batch.width, '0');
  for (std::size_t c = 0; c < batch.chains; ++c) {
    const auto row = batch.row(c);
    for (std::size_t i = 0; i < batch.width; ++i) line[i] = row[i] ? '1' : '0';
    out << line << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace rbmlab
