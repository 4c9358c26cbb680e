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

#ifndef ARTPREF_HARNESS_CONFIG_H_
#define ARTPREF_HARNESS_CONFIG_H_

#include <filesystem>
#include <string>

#include "artpref/harness/experiment.h"

namespace artpref::harness {

// An experiment description read from a key = value file.
//
//   # comments and blank lines are ignored
//   ratings = data/ratings.csv
//   features = data/deep.csv
//   task = abstract_beauty
//   setting = average
//   model = deep
//   runs = 10
//   base_seed = 0
//   out = results.csv
//
// Optional keys: n_pairs, raters (comma list), workers, hidden (comma list),
// epochs, batch_size. Relative paths resolve against the file's directory.
struct ExperimentFile {
  ExperimentConfig config;
  std::filesystem::path ratings;
  std::filesystem::path features;
  std::filesystem::path out;
};

// Throws kIoFailure, or kInvalidArgument for unknown keys, bad values, or
// missing ratings/features/task/setting/model.
ExperimentFile LoadExperimentFile(const std::filesystem::path& path);
ExperimentFile ParseExperimentText(const std::string& text,
                                   const std::filesystem::path& base_dir);

}  // namespace artpref::harness

#endif  // ARTPREF_HARNESS_CONFIG_H_
