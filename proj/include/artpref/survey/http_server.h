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

#ifndef ARTPREF_SURVEY_HTTP_SERVER_H_
#define ARTPREF_SURVEY_HTTP_SERVER_H_

#include <filesystem>
#include <memory>
#include <string>

#include "artpref/survey/service.h"

namespace artpref::survey {

// Reads a stimulus directory laid out as <dir>/<category>/<item>.<png|jpg>.
// Item ids are file stems. Throws kIoFailure if the directory is missing,
// kDuplicateItem if a stem repeats.
StimulusPool LoadStimulusDirectory(const std::filesystem::path& dir);

// JSON API over a SurveyService:
//   POST /sessions                   {"participant_id", "counterbalance"?}
//   GET  /sessions/{id}/next         next task and its image URLs
//   POST /sessions/{id}/responses    {"task_index", "value", "elapsed_ms"}
//   GET  /export                     Survey JSON
//   GET  /stimuli/<category>/<file>  images, when a directory is given
class SurveyHttpServer {
 public:
  SurveyHttpServer(SurveyService& service,
                   std::filesystem::path stimulus_dir = {});
  ~SurveyHttpServer();
  SurveyHttpServer(const SurveyHttpServer&) = delete;
  SurveyHttpServer& operator=(const SurveyHttpServer&) = delete;

  // Binds; port 0 picks a free port. Returns the bound port or throws
  // kIoFailure.
  int Bind(const std::string& host, int port);
  // Serves until Stop() is called. Blocks.
  void Listen();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace artpref::survey

#endif  // ARTPREF_SURVEY_HTTP_SERVER_H_
