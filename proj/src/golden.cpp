#include "cylklrw/golden.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cylklrw/error.hpp"

namespace ck {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

} // namespace

const std::string& GoldenRecord::str(const std::string& key) const {
  auto it = fields.find(key);
  if (it == fields.end())
    fail(Err::BadWord, "record '" + name + "' has no field '" + key + "'");
  return it->second;
}

int GoldenRecord::num(const std::string& key) const { return std::stoi(str(key)); }

std::vector<int> GoldenRecord::nums(const std::string& key) const {
  std::vector<int> out;
  std::stringstream ss(str(key));
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(std::stoi(trim(part)));
  return out;
}

std::vector<GoldenRecord> loadGolden(const std::string& file) {
  std::string dir = CYLKLRW_DATA_DIR "/golden";
  if (const char* env = std::getenv("CYLKLRW_GOLDEN")) dir = env;
  const std::string path = dir + "/" + file;
  std::ifstream in(path);
  if (!in) fail(Err::BadWord, "cannot open frozen-data file: " + path);

  std::vector<GoldenRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      fail(Err::BadWord, "malformed line in " + file + ": " + line);
    GoldenRecord rec;
    rec.name = trim(line.substr(0, colon));
    std::stringstream ss(line.substr(colon + 1));
    std::string field;
    while (std::getline(ss, field, ';')) {
      field = trim(field);
      if (field.empty()) continue;
      std::size_t eq = field.find('=');
      if (eq == std::string::npos)
        fail(Err::BadWord, "malformed field in " + file + ": " + field);
      rec.fields[trim(field.substr(0, eq))] = trim(field.substr(eq + 1));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

const GoldenRecord& findGolden(const std::vector<GoldenRecord>& records,
                               const std::string& name) {
  for (const GoldenRecord& r : records)
    if (r.name == name) return r;
  fail(Err::BadWord, "no frozen record named '" + name + "'");
}

} // namespace ck
