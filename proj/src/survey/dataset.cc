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

#include "artpref/survey/dataset.h"

#include <cmath>
#include <fstream>

#include "artpref/error.h"

namespace artpref::survey {
namespace {

using nlohmann::json;

[[noreturn]] void Malformed(const std::string& message) {
  throw Error(ErrorCode::kMalformedRow, "survey json: " + message);
}

SurveyResponse ResponseFromJson(const json& j) {
  if (!j.is_object()) Malformed("response is not an object");
  for (const char* key : {"kind", "condition", "stimuli", "value",
                          "elapsed_ms"}) {
    if (!j.contains(key)) Malformed(std::string("response lacks '") + key + "'");
  }
  SurveyResponse r;
  try {
    r.kind = ParseMethod(j.at("kind").get<std::string>());
    r.condition = Condition::Parse(j.at("condition").get<std::string>());
    r.stimuli = j.at("stimuli").get<std::vector<std::string>>();
    r.value = ValueFromJson(j.at("value"));
    CheckValueKind(r.kind, r.value);
    if (!j.at("elapsed_ms").is_number()) Malformed("elapsed_ms not a number");
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
  } catch (const json::exception& e) {
    Malformed(e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kMalformedRow) throw;
    Malformed(e.message());
  }
  const size_t want = r.kind == Method::kDirect ? 1 : 2;
  if (r.stimuli.size() != want) {
    Malformed("expected " + std::to_string(want) + " stimuli");
  }
  if (want == 2 && r.stimuli[0] == r.stimuli[1]) {
    Malformed("comparative stimuli must differ");
  }
  if (!std::isfinite(r.elapsed_ms) || r.elapsed_ms <= 0.0) {
    Malformed("elapsed_ms must be positive");
  }
  return r;
}

}  // namespace

json ValueToJson(const ResponseValue& value) {
  if (const int* rating = std::get_if<int>(&value)) return *rating;
  return std::string(ChoiceName(std::get<Choice>(value)));
}

ResponseValue ValueFromJson(const json& value) {
  if (value.is_number_integer()) {
    const auto rating = value.get<int64_t>();
    if (rating < 1 || rating > 10) {
      throw Error(ErrorCode::kValueKindMismatch,
                  "rating must be in 1..10, got " + value.dump());
    }
    return static_cast<int>(rating);
  }
  if (value.is_string()) return ParseChoice(value.get<std::string>());
  throw Error(ErrorCode::kValueKindMismatch,
              "value must be an integer rating or 'first'/'second', got " +
                  value.dump());
}

json TaskToJson(const TaskItem& task) {
  json j = json::object();
  j["kind"] = std::string(MethodName(task.kind));
  j["condition"] = task.condition.Name();
  j["category"] = std::string(harness::CategoryName(task.condition.category));
  j["dimension"] =
      std::string(harness::DimensionName(task.condition.dimension));
  j["stimuli"] = task.stimuli;
  return j;
}

TaskItem TaskFromJson(const json& j) {
  TaskItem task;
  try {
    task.kind = ParseMethod(j.at("kind").get<std::string>());
    task.condition = Condition::Parse(j.at("condition").get<std::string>());
    task.stimuli = j.at("stimuli").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    Malformed(e.what());
  } catch (const Error& e) {
    Malformed(e.message());
  }
  const size_t want = task.kind == Method::kDirect ? 1 : 2;
  if (task.stimuli.size() != want) Malformed("task has wrong stimulus count");
  return task;
}

json SurveyToJson(const SurveyDataset& dataset) {
  json participants = json::array();
  for (const auto& p : dataset.participants) {
    json responses = json::array();
    for (const auto& r : p.responses) {
      json entry = json::object();
      entry["kind"] = std::string(MethodName(r.kind));
      entry["condition"] = r.condition.Name();
      entry["stimuli"] = r.stimuli;
      entry["value"] = ValueToJson(r.value);
      entry["elapsed_ms"] = r.elapsed_ms;
      responses.push_back(std::move(entry));
    }
    json participant = json::object();
    participant["id"] = p.id;
    participant["responses"] = std::move(responses);
    participants.push_back(std::move(participant));
  }
  return json{{"participants", std::move(participants)}};
}

SurveyDataset SurveyFromJson(const json& j) {
  if (!j.is_object() || !j.contains("participants") ||
      !j.at("participants").is_array()) {
    Malformed("expected an object with a 'participants' array");
  }
  SurveyDataset dataset;
  for (const auto& p : j.at("participants")) {
    if (!p.is_object() || !p.contains("id") || !p.at("id").is_string() ||
        !p.contains("responses") || !p.at("responses").is_array()) {
      Malformed("participant needs a string 'id' and a 'responses' array");
    }
    ParticipantResponses participant;
    participant.id = p.at("id").get<std::string>();
    for (const auto& r : p.at("responses")) {
      participant.responses.push_back(ResponseFromJson(r));
    }
    dataset.participants.push_back(std::move(participant));
  }
  return dataset;
}

void ExportSurvey(const SurveyDataset& dataset,
                  const std::filesystem::path& path) {
  size_t responses = 0;
  for (const auto& p : dataset.participants) responses += p.responses.size();
  if (responses == 0) {
    throw Error(ErrorCode::kEmptyInput, "survey dataset has no responses");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  out << SurveyToJson(dataset).dump(2) << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
}

SurveyDataset ImportSurvey(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot read " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    Malformed(e.what());
  }
  return SurveyFromJson(j);
}

}  // namespace artpref::survey
