// SPDX-License-Identifier: Apache-2.0
//
// File layout: a magic line followed by one record per line,
//   key <TAB> nvars <TAB> order <TAB> c0,c1,... <TAB> fnv1a-64 of the preceding fields
// Records are only ever appended; a later record for the same key wins when
// its order is larger.
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>

#include "emlattice/errors.hpp"
#include "emlattice/mu.hpp"

namespace emlattice {

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string encode(const std::string& key, const TruncSeries& s) {
  std::ostringstream os;
  os << key << '\t' << s.nvars() << '\t' << s.order() << '\t';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ',';
    os << to_string(s.at(i));
  }
  std::string body = os.str();
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(body)));
  return body + '\t' + hex;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

bool decode(const std::string& line, std::string& key, TruncSeries& value) {
  auto tab = line.rfind('\t');
  if (tab == std::string::npos) return false;
  std::string body = line.substr(0, tab);
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(body)));
  if (line.substr(tab + 1) != hex) return false;
  std::vector<std::string> fields = split(body, '\t');
  if (fields.size() != 4) return false;
  try {
    int nvars = std::stoi(fields[1]);
    int order = std::stoi(fields[2]);
    if (nvars < 0 || order < 0 || nvars > 64 || order > 4096) return false;
    std::vector<std::string> coeffs = split(fields[3], ',');
    TruncSeries s(nvars, order);
    if (coeffs.size() != s.size()) return false;
    for (std::size_t i = 0; i < coeffs.size(); ++i) s.at(i) = parse_rational(coeffs[i]);
    key = fields[0];
    value = std::move(s);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

void MuCache::attach_file(const std::string& path, std::ostream* warn) {
  std::unique_lock lock(mutex_);
  path_ = path;
  std::ifstream in(path);
  if (!in) {
    std::ofstream out(path);
    if (!out) throw Error("cannot create cache file " + path);
    out << kFileMagic << '\n';
    return;
  }
  std::string line;
  if (!std::getline(in, line) || line != kFileMagic) {
    if (warn) *warn << "warning: " << path << " is not a mu cache file; it is left untouched\n";
    path_.clear();
    return;
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::string key;
    TruncSeries value;
    if (!decode(line, key, value)) {
      ++skipped_;
      if (warn) *warn << "warning: skipping corrupt cache record at " << path << ':' << lineno << '\n';
      continue;
    }
    auto it = table_.find(key);
    if (it == table_.end() || it->second.order() < value.order()) table_[key] = std::move(value);
  }
}

std::optional<TruncSeries> MuCache::lookup(const std::string& key, int order) const {
  std::shared_lock lock(mutex_);
  auto it = table_.find(key);
  if (it == table_.end() || it->second.order() < order) return std::nullopt;
  ++hits_;
  if (it->second.order() == order) return it->second;
  return it->second.truncated(order);
}

void MuCache::insert(const std::string& key, const TruncSeries& value) {
  std::unique_lock lock(mutex_);
  auto it = table_.find(key);
  if (it != table_.end() && it->second.order() >= value.order()) return;
  table_[key] = value;
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error("cannot append to cache file " + path_);
  out << encode(key, value) << '\n';
}

std::size_t MuCache::size() const {
  std::shared_lock lock(mutex_);
  return table_.size();
}

}  // namespace emlattice
