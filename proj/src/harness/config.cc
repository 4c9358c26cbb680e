// Copyright 2026 The Artpref Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "artpref/harness/config.h"

#include <fstream>
#include <set>
#include <sstream>

#include "artpref/error.h"
#include "text_util.h"

namespace artpref::harness {
namespace {

[[noreturn]] void Bad(int line_no, const std::string& message) {
  throw Error(ErrorCode::kInvalidArgument,
              "config line " + std::to_string(line_no) + ": " + message);
}

long long IntValue(std::string_view value, int line_no, long long min) {
  const auto parsed = internal::ParseInt(value);
  if (!parsed || *parsed < min) {
    Bad(line_no, "expected integer >= " + std::to_string(min) + ", got '" +
                     std::string(value) + "'");
  }
  return *parsed;
}

std::vector<int> IntList(std::string_view value, int line_no) {
  std::vector<int> out;
  for (auto field : internal::SplitCsvLine(value)) {
    if (internal::Trim(field).empty()) continue;
    out.push_back(static_cast<int>(IntValue(field, line_no, 1)));
  }
  return out;
}

std::filesystem::path Resolve(std::string_view value,
                              const std::filesystem::path& base_dir) {
  std::filesystem::path p{std::string(value)};
  return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

}  // namespace

ExperimentFile ParseExperimentText(const std::string& text,
                                   const std::filesystem::path& base_dir) {
  ExperimentFile file;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = internal::Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) Bad(line_no, "expected key = value");
    const std::string key(internal::Trim(line.substr(0, eq)));
    std::string_view value = internal::Trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (!seen.insert(key).second) Bad(line_no, "duplicate key '" + key + "'");
    try {
      if (key == "ratings") {
        file.ratings = Resolve(value, base_dir);
      } else if (key == "features") {
        file.features = Resolve(value, base_dir);
      } else if (key == "out") {
        file.out = Resolve(value, base_dir);
      } else if (key == "task") {
        file.config.task = TaskSpec::Parse(value);
      } else if (key == "setting") {
        file.config.setting = ParseSetting(value);
      } else if (key == "model") {
        file.config.model = ParseModelKind(value);
      } else if (key == "n_pairs") {
        file.config.n_pairs = static_cast<int>(IntValue(value, line_no, 1));
      } else if (key == "runs") {
        file.config.runs = static_cast<int>(IntValue(value, line_no, 1));
      } else if (key == "base_seed") {
        file.config.base_seed =
            static_cast<uint64_t>(IntValue(value, line_no, 0));
      } else if (key == "raters") {
        file.config.raters = IntList(value, line_no);
      } else if (key == "workers") {
        file.config.workers = static_cast<int>(IntValue(value, line_no, 1));
      } else if (key == "hidden") {
        file.config.hidden = IntList(value, line_no);
      } else if (key == "epochs") {
        file.config.epochs = static_cast<int>(IntValue(value, line_no, 1));
      } else if (key == "batch_size") {
        file.config.batch_size = static_cast<int>(IntValue(value, line_no, 2));
      } else {
        Bad(line_no, "unknown key '" + key + "'");
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInvalidArgument) throw;
      if (e.message().starts_with("config line")) throw;
      Bad(line_no, e.message());
    }
  }
  for (const char* required : {"ratings", "features", "task", "setting",
                               "model"}) {
    if (!seen.contains(required)) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("config is missing '") + required + "'");
    }
  }
  return file;
}

ExperimentFile LoadExperimentFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseExperimentText(text.str(), path.parent_path());
}

}  // namespace artpref::harness
