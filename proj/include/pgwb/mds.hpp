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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pgwb/services.hpp"

namespace pgwb {

// Atoms are the proto-atoms 1, 2, 3, ... in creation order; 0 is the
// undefined content (bottom).
using AtomId = std::uint32_t;
inline constexpr AtomId kUndefined = 0;

// The ambient finite universes of a molecular dynamics service: spots (with
// the foci and methods among them), fields, and the proto-atom capacity.
// Spots are totally ordered by byte-wise comparison of their names.
class MdsUniverse {
 public:
  MdsUniverse(std::vector<std::string> foci, std::vector<std::string> methods,
              std::vector<std::string> other_spots, std::vector<std::string> fields,
              std::optional<std::size_t> capacity = std::nullopt);

  // Sorted, duplicate free.
  const std::vector<std::string>& spots() const noexcept { return spots_; }
  const std::vector<std::string>& fields() const noexcept { return fields_; }
  // Spot indices of the foci / methods, in spot order.
  const std::vector<std::uint32_t>& foci() const noexcept { return foci_; }
  const std::vector<std::uint32_t>& methods() const noexcept { return methods_; }
  // nullopt means unbounded.
  std::optional<std::size_t> capacity() const noexcept { return capacity_; }

  std::optional<std::uint32_t> spot_index(std::string_view name) const;
  std::optional<std::uint32_t> field_index(std::string_view name) const;

 private:
  std::vector<std::string> spots_;
  std::vector<std::string> fields_;
  std::vector<std::uint32_t> foci_;
  std::vector<std::uint32_t> methods_;
  std::optional<std::size_t> capacity_;
};

// <sigma, alpha> over a universe, or the divergent state. Atoms 1..atoms
// exist; `slots` holds, atom-major, one entry per field of the universe:
// kNoField when the atom lacks the field, otherwise the field contents.
struct MdsState {
  static constexpr std::uint32_t kNoField = UINT32_MAX;

  bool divergent = false;
  std::vector<AtomId> sigma;
  std::uint32_t atoms = 0;
  std::uint32_t field_count = 0;
  std::vector<std::uint32_t> slots;

  std::uint32_t slot(AtomId a, std::uint32_t field) const {
    return slots[static_cast<std::size_t>(a - 1) * field_count + field];
  }
  std::uint32_t& slot(AtomId a, std::uint32_t field) {
    return slots[static_cast<std::size_t>(a - 1) * field_count + field];
  }

  friend bool operator==(const MdsState&, const MdsState&) = default;
};

}  // namespace pgwb

template <>
struct std::hash<pgwb::MdsState> {
  std::size_t operator()(const pgwb::MdsState& s) const noexcept;
};

namespace pgwb {

enum class MdsOp : std::uint8_t {
  New, Set, Clear, Eq, Undef, AddField, RmField, HasField, SetField, GetField, GenAct
};

// A method of Meth_md. `a` and `b` are spot indices and `field` a field
// index, as used by the method's shape:
//   new:a  set:a:b  clear:a  eq:a:b  undef:a  addfield:a:v  rmfield:a:v
//   hasfield:a:v  setfield:a:v:b  getfield:a:b:v  genact:a:b
struct MdsMethod {
  MdsOp op;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint32_t field = 0;
};

// nullopt when `m` is not a method of the universe.
std::optional<MdsMethod> parse_mds_method(const MdsUniverse& u, std::string_view m);

// Every method of the universe, in a fixed order.
std::vector<std::string> all_mds_methods(const MdsUniverse& u);

// newatom: one past the largest existing atom, or nullopt (bottom) when the
// capacity is exhausted. The maximum of the empty set is taken to be 0.
std::optional<AtomId> newatom(std::span<const AtomId> existing,
                              std::optional<std::size_t> capacity = std::nullopt);

bool gacnd(const MdsUniverse& u, const MdsState& s, std::uint32_t spot1, std::uint32_t spot2);
// The action focus.method selected by genact. Throws std::invalid_argument
// when gacnd does not hold.
Action gares(const MdsUniverse& u, const MdsState& s, std::uint32_t spot1, std::uint32_t spot2);

// The molecular dynamics service family over a universe.
class MdsService {
 public:
  using State = MdsState;

  explicit MdsService(std::shared_ptr<const MdsUniverse> universe);

  Step<MdsState> step(std::string_view method, const MdsState& s) const;
  MdsState divergent() const;
  bool is_divergent(const MdsState& s) const { return s.divergent; }

  // All spots undefined, no atoms.
  MdsState initial() const;

  const MdsUniverse& universe() const noexcept { return *universe_; }
  const std::shared_ptr<const MdsUniverse>& universe_ptr() const noexcept { return universe_; }

  // Name-based inspection; throws std::invalid_argument on unknown names.
  AtomId spot(const MdsState& s, std::string_view name) const;
  // nullopt when `atom` lacks the field.
  std::optional<AtomId> field(const MdsState& s, AtomId atom, std::string_view name) const;

 private:
  std::shared_ptr<const MdsUniverse> universe_;
};

ServiceInstance<MdsService> mds_init(std::shared_ptr<const MdsUniverse> universe);

// Both well-formedness conditions: spot and field contents are existing atoms
// or undefined.
bool well_formed(const MdsState& s);

// Line-oriented dump: `spot <name> = <atom|_>` for every spot in spot order,
// then `atom <id>: <field>=<atom|_>,...` per atom with fields in name order.
// The divergent state dumps as the single line `divergent`.
std::string dump_state(const MdsUniverse& u, const MdsState& s);
// {"spots": [[name, atom|null], ...], "atoms": [[id, [[field, atom|null], ...]], ...]}
// with the same ordering; the divergent state is {"divergent": true}.
std::string dump_state_json(const MdsUniverse& u, const MdsState& s);

// A state read back from a dump. The universe consists of the dumped spots
// (none of them marked as focus or method) and the dumped field names.
struct DumpedState {
  std::shared_ptr<const MdsUniverse> universe;
  MdsState state;
};

// Accepts either dump format. Throws ParseError on malformed input.
DumpedState parse_dump(std::string_view text);

}  // namespace pgwb
