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

#include "pgwb/action.hpp"

#include <cctype>
#include <stdexcept>

namespace pgwb {

Action Action::basic(std::string focus, std::string method) {
  if (focus.empty() || method.empty())
    throw std::invalid_argument("basic action needs a non-empty focus and method");
  Action a;
  a.focus_ = std::move(focus);
  a.method_ = std::move(method);
  return a;
}

std::string Action::str() const {
  if (is_tau()) return "tau";
  return focus_ + "." + method_;
}

bool is_ident_start(char c) noexcept {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '@';
}

bool is_ident_char(char c) noexcept {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
         c == '\'' || c == '@';
}

bool is_identifier(std::string_view s) noexcept {
  if (s.empty() || !is_ident_start(s.front())) return false;
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return true;
}

}  // namespace pgwb
