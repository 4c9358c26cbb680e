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

#include "artpref/survey/service.h"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "artpref/error.h"
#include "artpref/random.h"
#include "artpref/survey/dataset.h"
#include "nlohmann/json.hpp"

namespace artpref::survey {
namespace {

using nlohmann::json;

int64_t NowMs() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string Hex(uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) {
    out[k] = kDigits[v & 0xf];
    v >>= 4;
  }
  return out;
}

json SessionToJson(const SurveySession& s, bool counterbalance) {
  json tasks = json::array();
  for (const auto& t : s.task_queue) tasks.push_back(TaskToJson(t));
  return json{{"type", "session"},
              {"session_id", s.session_id},
              {"participant_id", s.participant_id},
              {"counterbalance", counterbalance},
              {"created_at", s.created_at},
              {"tasks", std::move(tasks)}};
}

json EventToJson(const ResponseEvent& e) {
  return json{{"type", "response"},
              {"session_id", e.session_id},
              {"task_index", e.task_index},
              {"value", ValueToJson(e.value)},
              {"elapsed_ms", e.elapsed_ms},
              {"server_received_at", e.server_received_at}};
}

// Validates an event against the session state. Caller holds the lock.
void CheckEvent(const SurveySession& s, const ResponseEvent& e) {
  if (e.task_index < s.cursor) {
    throw Error(ErrorCode::kDuplicateResponse,
                "task " + std::to_string(e.task_index) + " of session " +
                    s.session_id + " already answered");
  }
  if (e.task_index > s.cursor ||
      e.task_index >= static_cast<int>(s.task_queue.size())) {
    throw Error(ErrorCode::kOutOfOrder,
                "expected task " + std::to_string(s.cursor) + ", got " +
                    std::to_string(e.task_index));
  }
  CheckValueKind(s.task_queue[e.task_index].kind, e.value);
  if (!std::isfinite(e.elapsed_ms) || e.elapsed_ms <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "elapsed_ms must be positive");
  }
}

}  // namespace

SurveyService::SurveyService(ServiceConfig config)
    : config_(std::move(config)) {
  next_session_ = std::random_device{}();
  next_session_ = (next_session_ << 32) ^ std::random_device{}();
  if (config_.log_path.empty()) return;
  Replay();
  log_fd_ = ::open(config_.log_path.c_str(), O_WRONLY | O_CREAT | O_APPEND,
                   0644);
  if (log_fd_ < 0) {
    throw Error(ErrorCode::kIoFailure, "cannot open " +
                                           config_.log_path.string() + ": " +
                                           std::strerror(errno));
  }
}

SurveyService::~SurveyService() {
  if (log_fd_ >= 0) ::close(log_fd_);
}

void SurveyService::Replay() {
  std::ifstream in(config_.log_path, std::ios::binary);
  if (!in) return;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  in.close();
  // A crash mid-append can leave a final line without its newline; drop it.
  const size_t complete = text.rfind('\n') == std::string::npos
                              ? 0
                              : text.rfind('\n') + 1;
  if (complete < text.size()) {
    std::filesystem::resize_file(config_.log_path, complete);
  }
  std::istringstream lines(text.substr(0, complete));
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (type == "session") {
        auto state = std::make_shared<SessionState>();
        state->session.session_id = j.at("session_id").get<std::string>();
        state->session.participant_id =
            j.at("participant_id").get<std::string>();
        state->session.created_at = j.at("created_at").get<int64_t>();
        for (const auto& t : j.at("tasks")) {
          state->session.task_queue.push_back(TaskFromJson(t));
        }
        creation_order_.push_back(state->session.session_id);
        sessions_[state->session.session_id] = std::move(state);
      } else if (type == "response") {
        ResponseEvent e;
        e.session_id = j.at("session_id").get<std::string>();
        e.task_index = j.at("task_index").get<int>();
        e.value = ValueFromJson(j.at("value"));
        e.elapsed_ms = j.at("elapsed_ms").get<double>();
        e.server_received_at = j.at("server_received_at").get<int64_t>();
        const auto it = sessions_.find(e.session_id);
        if (it == sessions_.end()) {
          throw Error(ErrorCode::kUnknownSession, e.session_id);
        }
        CheckEvent(it->second->session, e);
        it->second->events.push_back(e);
        ++it->second->session.cursor;
      } else {
        throw Error(ErrorCode::kMalformedRow, "unknown type " + type);
      }
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kMalformedRow,
                  config_.log_path.string() + " line " +
                      std::to_string(line_no) + ": " + e.what());
    }
  }
}

void SurveyService::AppendLog(const std::string& line) {
  if (log_fd_ < 0) return;
  std::lock_guard<std::mutex> lock(log_mutex_);
  const std::string data = line + "\n";
  size_t written = 0;
  while (written < data.size()) {
    const ssize_t n =
        ::write(log_fd_, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kIoFailure,
                  std::string("event log write failed: ") +
                      std::strerror(errno));
    }
    written += static_cast<size_t>(n);
  }
  if (::fsync(log_fd_) != 0) {
    throw Error(ErrorCode::kIoFailure,
                std::string("event log fsync failed: ") + std::strerror(errno));
  }
}

SurveySession SurveyService::CreateSession(const std::string& participant_id,
                                           const SessionOptions& options) {
  auto state = std::make_shared<SessionState>();
  state->session.participant_id = participant_id;
  state->session.task_queue = BuildTaskQueue(participant_id, config_.plan,
                                             config_.pool, config_.seed,
                                             options);
  state->session.created_at = NowMs();
  std::unique_lock<std::shared_mutex> lock(sessions_mutex_);
  do {
    state->session.session_id = Hex(MixSeed(next_session_++, 0));
  } while (sessions_.contains(state->session.session_id));
  AppendLog(SessionToJson(state->session, options.counterbalance).dump());
  creation_order_.push_back(state->session.session_id);
  sessions_[state->session.session_id] = state;
  return state->session;
}

std::shared_ptr<SurveyService::SessionState> SurveyService::Find(
    const std::string& session_id) const {
  std::shared_lock<std::shared_mutex> lock(sessions_mutex_);
  const auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    throw Error(ErrorCode::kUnknownSession, "no session " + session_id);
  }
  return it->second;
}

SurveySession SurveyService::GetSession(const std::string& session_id) const {
  const auto state = Find(session_id);
  std::lock_guard<std::mutex> lock(state->mutex);
  return state->session;
}

std::optional<TaskItem> SurveyService::NextTask(
    const std::string& session_id) const {
  const auto state = Find(session_id);
  std::lock_guard<std::mutex> lock(state->mutex);
  const SurveySession& s = state->session;
  if (s.cursor >= static_cast<int>(s.task_queue.size())) return std::nullopt;
  return s.task_queue[s.cursor];
}

ResponseEvent SurveyService::RecordResponse(ResponseEvent event) {
  const auto state = Find(event.session_id);
  std::lock_guard<std::mutex> lock(state->mutex);
  CheckEvent(state->session, event);
  event.server_received_at = NowMs();
  AppendLog(EventToJson(event).dump());
  state->events.push_back(event);
  ++state->session.cursor;
  return event;
}

SurveyDataset SurveyService::Export() const {
  std::vector<std::shared_ptr<SessionState>> states;
  {
    std::shared_lock<std::shared_mutex> lock(sessions_mutex_);
    for (const auto& id : creation_order_) states.push_back(sessions_.at(id));
  }
  SurveyDataset dataset;
  std::map<std::string, size_t> slot;
  for (const auto& state : states) {
    std::lock_guard<std::mutex> lock(state->mutex);
    const SurveySession& s = state->session;
    auto [it, inserted] = slot.emplace(s.participant_id,
                                       dataset.participants.size());
    if (inserted) dataset.participants.push_back({s.participant_id, {}});
    auto& responses = dataset.participants[it->second].responses;
    for (const auto& e : state->events) {
      const TaskItem& task = s.task_queue[e.task_index];
      responses.push_back(
          {task.kind, task.condition, task.stimuli, e.value, e.elapsed_ms});
    }
  }
  return dataset;
}

}  // namespace artpref::survey
