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

#ifndef ARTPREF_SURVEY_SERVICE_H_
#define ARTPREF_SURVEY_SERVICE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "artpref/survey/session.h"
#include "artpref/survey/types.h"

namespace artpref::survey {

struct ResponseEvent {
  std::string session_id;
  int task_index = 0;
  ResponseValue value = 1;
  double elapsed_ms = 0.0;         // measured by the client
  int64_t server_received_at = 0;  // ms since epoch, audit only
};

struct SurveySession {
  std::string session_id;
  std::string participant_id;
  std::vector<TaskItem> task_queue;
  int cursor = 0;
  int64_t created_at = 0;  // ms since epoch
};

struct ServiceConfig {
  StimulusPool pool;
  SurveyPlan plan = SurveyPlan::Default();
  uint64_t seed = 0;
  // Append-only JSON lines log; replayed on construction. Empty keeps
  // everything in memory.
  std::filesystem::path log_path;
};

// Session store for the survey. Sessions are independent: writes to one
// session are serialized by its own lock, and appends to the event log are
// serialized by a separate one.
class SurveyService {
 public:
  // Throws kIoFailure if the log cannot be opened, kMalformedRow if a log
  // line cannot be replayed.
  explicit SurveyService(ServiceConfig config);
  ~SurveyService();
  SurveyService(const SurveyService&) = delete;
  SurveyService& operator=(const SurveyService&) = delete;

  // Throws kPoolExhausted or kInvalidArgument.
  SurveySession CreateSession(const std::string& participant_id,
                              const SessionOptions& options = {});

  // Snapshot of a session; throws kUnknownSession.
  SurveySession GetSession(const std::string& session_id) const;

  // The task at the cursor, or nullopt once the queue is done.
  std::optional<TaskItem> NextTask(const std::string& session_id) const;

  // Persists the event and advances the cursor. Throws kUnknownSession,
  // kDuplicateResponse (index already answered), kOutOfOrder (index past
  // the cursor), kValueKindMismatch, or kInvalidArgument for elapsed_ms <= 0.
  // Returns the stored event with its server timestamp.
  ResponseEvent RecordResponse(ResponseEvent event);

  // All responses grouped by participant in order of first session.
  SurveyDataset Export() const;

  const ServiceConfig& config() const { return config_; }

 private:
  struct SessionState {
    mutable std::mutex mutex;
    SurveySession session;
    std::vector<ResponseEvent> events;
  };

  std::shared_ptr<SessionState> Find(const std::string& session_id) const;
  void AppendLog(const std::string& line);
  void Replay();

  ServiceConfig config_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<SessionState>> sessions_;
  std::vector<std::string> creation_order_;
  uint64_t next_session_ = 0;
  std::mutex log_mutex_;
  int log_fd_ = -1;
};

}  // namespace artpref::survey

#endif  // ARTPREF_SURVEY_SERVICE_H_
