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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgwb/services.hpp"

namespace pgwb {

inline constexpr std::uint32_t kDefaultMaxRegisters = 8;
inline constexpr std::uint32_t kDefaultMaxValue = 64;

// Register contents, registers[i - 1] for register i, or the divergent state.
struct RfState {
  bool divergent = false;
  std::vector<std::uint32_t> registers;

  friend bool operator==(const RfState&, const RfState&) = default;
};

}  // namespace pgwb

template <>
struct std::hash<pgwb::RfState> {
  std::size_t operator()(const pgwb::RfState& s) const noexcept;
};

namespace pgwb {

// set:i:n and eq:i:n with register i in [1, maxr] and value n in [0, maxn].
struct RfMethod {
  bool is_set = false;
  std::uint32_t reg = 0;
  std::uint32_t value = 0;
};

// The register file service family.
class RfService {
 public:
  using State = RfState;

  // Throws std::invalid_argument unless maxr >= 1 and maxn >= 1.
  RfService(std::uint32_t maxr = kDefaultMaxRegisters, std::uint32_t maxn = kDefaultMaxValue);

  std::uint32_t maxr() const noexcept { return maxr_; }
  std::uint32_t maxn() const noexcept { return maxn_; }

  // nullopt when m is not a method of the family.
  std::optional<RfMethod> parse_method(std::string_view m) const;
  std::vector<std::string> all_methods() const;
  // Every non-divergent state; (maxn + 1)^maxr of them.
  std::vector<RfState> all_states() const;

  Step<RfState> step(std::string_view method, const RfState& s) const;
  RfState divergent() const { return RfState{true, {}}; }
  bool is_divergent(const RfState& s) const { return s.divergent; }
  // All registers 0.
  RfState initial() const { return RfState{false, std::vector<std::uint32_t>(maxr_, 0)}; }

 private:
  std::uint32_t maxr_;
  std::uint32_t maxn_;
};

ServiceInstance<RfService> rf_init(std::uint32_t maxr = kDefaultMaxRegisters,
                                   std::uint32_t maxn = kDefaultMaxValue);

// `r<i> = <n>` per register in index order, or `divergent`.
std::string dump_state(const RfState& s);

}  // namespace pgwb
