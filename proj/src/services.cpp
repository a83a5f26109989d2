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

#include "pgwb/services.hpp"

namespace pgwb {

char reply_char(Reply r) noexcept {
  switch (r) {
    case Reply::T: return 'T';
    case Reply::F: return 'F';
    case Reply::M: return 'M';
    case Reply::B: return 'B';
  }
  return '?';
}

std::string violation_kind_name(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::MeaninglessExclusivity: return "meaningless-exclusivity";
    case Violation::Kind::BlockedAbsorption: return "blocked-absorption";
    case Violation::Kind::ReplyActionCoupling: return "reply-action-coupling";
  }
  return "unknown";
}

}  // namespace pgwb
