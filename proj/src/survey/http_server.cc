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

#include "artpref/survey/http_server.h"

#include <algorithm>
#include <map>

#include "artpref/error.h"
#include "artpref/survey/dataset.h"
#include "httplib.h"
#include "nlohmann/json.hpp"

namespace artpref::survey {
namespace {

using nlohmann::json;

bool IsImage(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownSession: return 404;
    case ErrorCode::kDuplicateResponse:
    case ErrorCode::kOutOfOrder: return 409;
    case ErrorCode::kValueKindMismatch:
    case ErrorCode::kPoolExhausted: return 422;
    default: break;
  }
  return code <= kLastValidationCode ? 400 : 500;
}

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void ReplyError(httplib::Response& res, int status, std::string_view code,
                const std::string& message) {
  Reply(res, status, json{{"error", code}, {"message", message}});
}

// Runs a handler and turns exceptions into JSON error replies.
template <typename F>
void Guard(httplib::Response& res, F&& handler) {
  try {
    handler();
  } catch (const Error& e) {
    ReplyError(res, StatusFor(e.code()), ErrorCodeName(e.code()), e.message());
  } catch (const json::exception& e) {
    ReplyError(res, 400, "BadRequest", e.what());
  } catch (const std::exception& e) {
    ReplyError(res, 500, "Internal", e.what());
  }
}

json ParseBody(const httplib::Request& req) {
  json body = json::parse(req.body);
  if (!body.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "request body must be an object");
  }
  return body;
}

}  // namespace

StimulusPool LoadStimulusDirectory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIoFailure, "no stimulus directory " + dir.string());
  }
  StimulusPool pool;
  std::map<std::string, std::string> seen;
  for (Category category : {Category::kAbstract, Category::kRepresentational}) {
    const auto sub = dir / std::string(harness::CategoryName(category));
    if (!std::filesystem::is_directory(sub)) continue;
    std::vector<std::string>& items = pool.items[category];
    for (const auto& entry : std::filesystem::directory_iterator(sub)) {
      if (!entry.is_regular_file() || !IsImage(entry.path())) continue;
      const std::string id = entry.path().stem().string();
      if (!seen.emplace(id, entry.path().string()).second) {
        throw Error(ErrorCode::kDuplicateItem, "stimulus " + id + " repeats");
      }
      items.push_back(id);
    }
    std::sort(items.begin(), items.end());
  }
  return pool;
}

struct SurveyHttpServer::Impl {
  SurveyService& service;
  httplib::Server server;
  // item id -> URL path of its image
  std::map<std::string, std::string> image_urls;

  explicit Impl(SurveyService& s) : service(s) {}

  json ImageUrls(const TaskItem& task) const {
    json urls = json::array();
    for (const auto& id : task.stimuli) {
      const auto it = image_urls.find(id);
      if (it != image_urls.end()) urls.push_back(it->second);
    }
    return urls;
  }

  void Routes() {
    server.Post("/sessions", [this](const httplib::Request& req,
                                    httplib::Response& res) {
      Guard(res, [&] {
        const json body = ParseBody(req);
        SessionOptions options;
        options.counterbalance = body.value("counterbalance", false);
        const SurveySession s = service.CreateSession(
            body.at("participant_id").get<std::string>(), options);
        Reply(res, 201,
              json{{"session_id", s.session_id},
                   {"participant_id", s.participant_id},
                   {"cursor", s.cursor},
                   {"total", s.task_queue.size()},
                   {"created_at", s.created_at}});
      });
    });
    server.Get(R"(/sessions/([^/]+)/next)", [this](const httplib::Request& req,
                                                   httplib::Response& res) {
      Guard(res, [&] {
        const std::string id = req.matches[1];
        const SurveySession s = service.GetSession(id);
        json body{{"session_id", id},
                  {"task_index", s.cursor},
                  {"total", s.task_queue.size()}};
        if (s.cursor >= static_cast<int>(s.task_queue.size())) {
          body["done"] = true;
        } else {
          const TaskItem& task = s.task_queue[s.cursor];
          body["done"] = false;
          body["task"] = TaskToJson(task);
          body["image_urls"] = ImageUrls(task);
        }
        Reply(res, 200, body);
      });
    });
    server.Post(R"(/sessions/([^/]+)/responses)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  Guard(res, [&] {
                    const json body = ParseBody(req);
                    ResponseEvent event;
                    event.session_id = req.matches[1];
                    event.task_index = body.at("task_index").get<int>();
                    event.value = ValueFromJson(body.at("value"));
                    event.elapsed_ms = body.at("elapsed_ms").get<double>();
                    const ResponseEvent stored = service.RecordResponse(event);
                    Reply(res, 200,
                          json{{"ok", true},
                               {"task_index", stored.task_index},
                               {"cursor", stored.task_index + 1},
                               {"server_received_at",
                                stored.server_received_at}});
                  });
                });
    server.Get("/export", [this](const httplib::Request&,
                                 httplib::Response& res) {
      Guard(res, [&] { Reply(res, 200, SurveyToJson(service.Export())); });
    });
  }
};

SurveyHttpServer::SurveyHttpServer(SurveyService& service,
                                   std::filesystem::path stimulus_dir)
    : impl_(std::make_unique<Impl>(service)) {
  impl_->Routes();
  if (stimulus_dir.empty()) return;
  LoadStimulusDirectory(stimulus_dir);  // validates the layout
  for (Category category : {Category::kAbstract, Category::kRepresentational}) {
    const std::string name(harness::CategoryName(category));
    const auto sub = stimulus_dir / name;
    if (!std::filesystem::is_directory(sub)) continue;
    for (const auto& entry : std::filesystem::directory_iterator(sub)) {
      if (!entry.is_regular_file() || !IsImage(entry.path())) continue;
      impl_->image_urls[entry.path().stem().string()] =
          "/stimuli/" + name + "/" + entry.path().filename().string();
    }
  }
  if (!impl_->server.set_mount_point("/stimuli", stimulus_dir.string())) {
    throw Error(ErrorCode::kIoFailure,
                "cannot serve " + stimulus_dir.string());
  }
}

SurveyHttpServer::~SurveyHttpServer() { Stop(); }

int SurveyHttpServer::Bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) {
      throw Error(ErrorCode::kIoFailure, "cannot bind " + host);
    }
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error(ErrorCode::kIoFailure,
                "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void SurveyHttpServer::Listen() { impl_->server.listen_after_bind(); }

void SurveyHttpServer::Stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace artpref::survey
