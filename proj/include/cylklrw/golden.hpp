#pragma once
#include <map>
#include <string>
#include <vector>

namespace ck {

// One record of a frozen-data file: `name: key=value; key=value; ...`.
struct GoldenRecord {
  std::string name;
  std::map<std::string, std::string> fields;

  bool has(const std::string& key) const { return fields.count(key) != 0; }
  const std::string& str(const std::string& key) const; // throws Err::BadWord if absent
  int num(const std::string& key) const;
  std::vector<int> nums(const std::string& key) const; // comma-separated integers
};

// Loads `file` from the frozen-data directory: $CYLKLRW_GOLDEN when set,
// otherwise the directory configured at build time.  Lines starting with
// '#' and blank lines are skipped.
std::vector<GoldenRecord> loadGolden(const std::string& file);

const GoldenRecord& findGolden(const std::vector<GoldenRecord>& records,
                               const std::string& name);

} // namespace ck
