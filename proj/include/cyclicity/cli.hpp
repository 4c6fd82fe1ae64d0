#pragma once

// Batch front end: one command, one JSON config, deterministic artifacts.

#include <string>
#include <vector>

#include "cyclicity/io.hpp"

namespace cyc::cli {

constexpr int kSchemaVersion = 1;

struct Artifact {
  std::string fileName;
  std::string content;
};

struct RunResult {
  io::json document;                  // written as <command>.json
  std::vector<Artifact> extra;        // CSV tables
  std::vector<std::string> warnings;  // also embedded in document
};

const std::vector<std::string>& commands();

// Throws ValidationError for unknown commands and invalid configs,
// NumericError for numerical failures. threads never changes results.
RunResult run(const std::string& command, const io::json& config, int threads = 1);

// 2 for validation errors, 3 for numerical failures, 1 otherwise.
int exit_code_for(const std::exception& e);

}  // namespace cyc::cli
