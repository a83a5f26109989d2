/*
 * Copyright 2026 The pgwb Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace pgwb {

// An action is either the internal action tau or a basic action focus.method.
class Action {
 public:
  Action() = default;  // tau

  static Action tau() { return Action(); }
  // Throws std::invalid_argument if either identifier is empty.
  static Action basic(std::string focus, std::string method);

  bool is_tau() const noexcept { return focus_.empty(); }
  const std::string& focus() const noexcept { return focus_; }
  const std::string& method() const noexcept { return method_; }

  // "tau" or "focus.method".
  std::string str() const;

  friend bool operator==(const Action&, const Action&) = default;
  friend auto operator<=>(const Action&, const Action&) = default;

 private:
  std::string focus_;
  std::string method_;
};

// Identifier lexing shared by every text notation of the workbench.
bool is_ident_start(char c) noexcept;
bool is_ident_char(char c) noexcept;
bool is_identifier(std::string_view s) noexcept;

}  // namespace pgwb

template <>
struct std::hash<pgwb::Action> {
  std::size_t operator()(const pgwb::Action& a) const noexcept {
    std::size_t h = std::hash<std::string>{}(a.focus());
    return h * 31 + std::hash<std::string>{}(a.method());
  }
};
