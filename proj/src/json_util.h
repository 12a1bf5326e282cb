// Copyright 2026 The Panpredict Authors.
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

#ifndef PANPREDICT_SRC_JSON_UTIL_H_
#define PANPREDICT_SRC_JSON_UTIL_H_

#include <charconv>
#include <initializer_list>
#include <string>
#include <string_view>

#include "json.hpp"
#include "panpredict/errors.h"

namespace panpredict::internal {

using Json = nlohmann::ordered_json;

// Rejects keys outside `allowed`.
inline void CheckKeys(const Json& obj, std::initializer_list<std::string_view> allowed,
                      const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ValidationError("unknown key '" + key + "' in " + where);
  }
}

inline const Json& Require(const Json& obj, const std::string& key,
                           const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError("missing key '" + key + "' in " + where);
  }
  return *it;
}

template <typename T>
T Get(const Json& obj, const std::string& key, const std::string& where) {
  try {
    return Require(obj, key, where).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("bad value for '" + key + "' in " + where + ": " +
                          e.what());
  }
}

template <typename T>
T GetOr(const Json& obj, const std::string& key, T fallback,
        const std::string& where) {
  if (!obj.contains(key)) return fallback;
  return Get<T>(obj, key, where);
}

inline Json ParseJson(std::string_view text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(where + " is not valid JSON: " + e.what());
  }
}

// Shortest decimal form that parses back to the same double.
inline std::string FormatDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline void CheckSchemaVersion(const Json& obj, int expected,
                               const std::string& where) {
  const int version = Get<int>(obj, "schema_version", where);
  if (version != expected) {
    throw ValidationError(where + " has schema_version " +
                          std::to_string(version) + ", expected " +
                          std::to_string(expected));
  }
}

}  // namespace panpredict::internal

#endif  // PANPREDICT_SRC_JSON_UTIL_H_
