// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace emlattice::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kParse = 2, kCap = 3, kInternal = 4 };

struct JobSpec {
  std::string command;
  // A file path, or inline JSON when it starts with '{'.
  std::string input;
  std::optional<std::string> poly;
  std::optional<int> order;
  std::optional<std::string> q_path;
  std::string format = "text";
  std::optional<int> jobs;
  std::optional<std::string> cache_path;
};

int run(const JobSpec& job, std::ostream& out, std::ostream& err);

}  // namespace emlattice::cli
