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

#include "pgwb/mds.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pgwb/error.hpp"

namespace pgwb {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::optional<std::uint32_t> find_sorted(const std::vector<std::string>& v, std::string_view name) {
  auto it = std::lower_bound(v.begin(), v.end(), name,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == v.end() || *it != name) return std::nullopt;
  return static_cast<std::uint32_t>(it - v.begin());
}

}  // namespace

MdsUniverse::MdsUniverse(std::vector<std::string> foci, std::vector<std::string> methods,
                         std::vector<std::string> other_spots, std::vector<std::string> fields,
                         std::optional<std::size_t> capacity)
    : fields_(sorted_unique(std::move(fields))), capacity_(capacity) {
  foci = sorted_unique(std::move(foci));
  methods = sorted_unique(std::move(methods));
  std::vector<std::string> all = foci;
  all.insert(all.end(), methods.begin(), methods.end());
  all.insert(all.end(), other_spots.begin(), other_spots.end());
  spots_ = sorted_unique(std::move(all));
  for (const auto& f : foci) foci_.push_back(*find_sorted(spots_, f));
  for (const auto& m : methods) methods_.push_back(*find_sorted(spots_, m));
}

std::optional<std::uint32_t> MdsUniverse::spot_index(std::string_view name) const {
  return find_sorted(spots_, name);
}

std::optional<std::uint32_t> MdsUniverse::field_index(std::string_view name) const {
  return find_sorted(fields_, name);
}

// Methods ----------------------------------------------------------------------

namespace {

enum class Arg { Spot, Field };

struct Shape {
  std::string_view head;
  MdsOp op;
  std::vector<Arg> args;
};

const std::vector<Shape>& shapes() {
  static const std::vector<Shape> all = {
      {"new", MdsOp::New, {Arg::Spot}},
      {"set", MdsOp::Set, {Arg::Spot, Arg::Spot}},
      {"clear", MdsOp::Clear, {Arg::Spot}},
      {"eq", MdsOp::Eq, {Arg::Spot, Arg::Spot}},
      {"undef", MdsOp::Undef, {Arg::Spot}},
      {"addfield", MdsOp::AddField, {Arg::Spot, Arg::Field}},
      {"rmfield", MdsOp::RmField, {Arg::Spot, Arg::Field}},
      {"hasfield", MdsOp::HasField, {Arg::Spot, Arg::Field}},
      {"setfield", MdsOp::SetField, {Arg::Spot, Arg::Field, Arg::Spot}},
      {"getfield", MdsOp::GetField, {Arg::Spot, Arg::Spot, Arg::Field}},
      {"genact", MdsOp::GenAct, {Arg::Spot, Arg::Spot}},
  };
  return all;
}

// Splits `rest` at colons into names matching `args`; names may themselves
// contain colons, the first consistent split wins.
bool split_args(const MdsUniverse& u, std::string_view rest, std::span<const Arg> args,
                std::vector<std::uint32_t>& out) {
  if (args.size() == 1) {
    auto idx = args[0] == Arg::Spot ? u.spot_index(rest) : u.field_index(rest);
    if (!idx) return false;
    out.push_back(*idx);
    return true;
  }
  for (std::size_t colon = rest.find(':'); colon != std::string_view::npos;
       colon = rest.find(':', colon + 1)) {
    std::string_view head = rest.substr(0, colon);
    auto idx = args[0] == Arg::Spot ? u.spot_index(head) : u.field_index(head);
    if (!idx) continue;
    out.push_back(*idx);
    if (split_args(u, rest.substr(colon + 1), args.subspan(1), out)) return true;
    out.pop_back();
  }
  return false;
}

}  // namespace

std::optional<MdsMethod> parse_mds_method(const MdsUniverse& u, std::string_view m) {
  const auto colon = m.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  const std::string_view head = m.substr(0, colon);
  for (const auto& shape : shapes()) {
    if (shape.head != head) continue;
    std::vector<std::uint32_t> idx;
    if (!split_args(u, m.substr(colon + 1), shape.args, idx)) return std::nullopt;
    MdsMethod out{shape.op};
    switch (shape.op) {
      case MdsOp::New:
      case MdsOp::Clear:
      case MdsOp::Undef: out.a = idx[0]; break;
      case MdsOp::Set:
      case MdsOp::Eq:
      case MdsOp::GenAct: out.a = idx[0]; out.b = idx[1]; break;
      case MdsOp::AddField:
      case MdsOp::RmField:
      case MdsOp::HasField: out.a = idx[0]; out.field = idx[1]; break;
      case MdsOp::SetField: out.a = idx[0]; out.field = idx[1]; out.b = idx[2]; break;
      case MdsOp::GetField: out.a = idx[0]; out.b = idx[1]; out.field = idx[2]; break;
    }
    return out;
  }
  return std::nullopt;
}

std::vector<std::string> all_mds_methods(const MdsUniverse& u) {
  std::vector<std::string> out;
  for (const auto& shape : shapes()) {
    std::vector<std::string> partial{std::string(shape.head)};
    for (Arg a : shape.args) {
      const auto& names = a == Arg::Spot ? u.spots() : u.fields();
      std::vector<std::string> next;
      for (const auto& p : partial)
        for (const auto& n : names) next.push_back(p + ":" + n);
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return out;
}

// Semantics ----------------------------------------------------------------------

std::optional<AtomId> newatom(std::span<const AtomId> existing, std::optional<std::size_t> capacity) {
  AtomId m = 0;
  for (AtomId a : existing) m = std::max(m, a);
  if (capacity && m >= *capacity) return std::nullopt;
  return m + 1;
}

bool gacnd(const MdsUniverse& u, const MdsState& s, std::uint32_t spot1, std::uint32_t spot2) {
  const AtomId x = s.sigma[spot1];
  const AtomId y = s.sigma[spot2];
  if (x == kUndefined || y == kUndefined) return false;
  auto holds = [&](const std::vector<std::uint32_t>& spots, AtomId a) {
    return std::any_of(spots.begin(), spots.end(), [&](std::uint32_t i) { return s.sigma[i] == a; });
  };
  return holds(u.foci(), x) && holds(u.methods(), y);
}

Action gares(const MdsUniverse& u, const MdsState& s, std::uint32_t spot1, std::uint32_t spot2) {
  if (!gacnd(u, s, spot1, spot2)) throw std::invalid_argument("gares: generate-action condition fails");
  // foci() and methods() are in spot order, so the first match is the least.
  auto least = [&](const std::vector<std::uint32_t>& spots, AtomId a) {
    return *std::find_if(spots.begin(), spots.end(), [&](std::uint32_t i) { return s.sigma[i] == a; });
  };
  const std::uint32_t f = least(u.foci(), s.sigma[spot1]);
  const std::uint32_t m = least(u.methods(), s.sigma[spot2]);
  return Action::basic(u.spots()[f], u.spots()[m]);
}

MdsService::MdsService(std::shared_ptr<const MdsUniverse> universe) : universe_(std::move(universe)) {
  if (!universe_) throw std::invalid_argument("MdsService needs a universe");
}

MdsState MdsService::divergent() const {
  MdsState s;
  s.divergent = true;
  s.field_count = static_cast<std::uint32_t>(universe_->fields().size());
  return s;
}

MdsState MdsService::initial() const {
  MdsState s;
  s.sigma.assign(universe_->spots().size(), kUndefined);
  s.field_count = static_cast<std::uint32_t>(universe_->fields().size());
  return s;
}

Step<MdsState> MdsService::step(std::string_view method, const MdsState& s) const {
  auto blocked = [&] { return Step<MdsState>{Reply::B, Action::tau(), divergent()}; };
  if (s.divergent) return blocked();
  auto parsed = parse_mds_method(*universe_, method);
  if (!parsed) return blocked();
  const MdsMethod& m = *parsed;
  auto reply = [&](bool ok, MdsState next) {
    return Step<MdsState>{ok ? Reply::T : Reply::F, Action::tau(), std::move(next)};
  };
  // Field slot of the atom in spot `spot`, or nullptr when the spot is
  // undefined or the atom lacks the field.
  auto slot_of = [&](const MdsState& st, std::uint32_t spot) -> const std::uint32_t* {
    const AtomId a = st.sigma[spot];
    if (a == kUndefined) return nullptr;
    const std::uint32_t& v = st.slots[static_cast<std::size_t>(a - 1) * st.field_count + m.field];
    return v == MdsState::kNoField ? nullptr : &v;
  };

  switch (m.op) {
    case MdsOp::New: {
      if (universe_->capacity() && s.atoms >= *universe_->capacity()) return reply(false, s);
      MdsState next = s;
      next.atoms += 1;
      next.slots.resize(static_cast<std::size_t>(next.atoms) * next.field_count, MdsState::kNoField);
      next.sigma[m.a] = next.atoms;
      return reply(true, std::move(next));
    }
    case MdsOp::Set: {
      MdsState next = s;
      next.sigma[m.a] = s.sigma[m.b];
      return reply(true, std::move(next));
    }
    case MdsOp::Clear: {
      MdsState next = s;
      next.sigma[m.a] = kUndefined;
      return reply(true, std::move(next));
    }
    case MdsOp::Eq: return reply(s.sigma[m.a] == s.sigma[m.b], s);
    case MdsOp::Undef: return reply(s.sigma[m.a] == kUndefined, s);
    case MdsOp::AddField: {
      const AtomId a = s.sigma[m.a];
      if (a == kUndefined || s.slot(a, m.field) != MdsState::kNoField) return reply(false, s);
      MdsState next = s;
      next.slot(a, m.field) = kUndefined;
      return reply(true, std::move(next));
    }
    case MdsOp::RmField: {
      if (!slot_of(s, m.a)) return reply(false, s);
      MdsState next = s;
      next.slot(s.sigma[m.a], m.field) = MdsState::kNoField;
      return reply(true, std::move(next));
    }
    case MdsOp::HasField: return reply(slot_of(s, m.a) != nullptr, s);
    case MdsOp::SetField: {
      if (!slot_of(s, m.a)) return reply(false, s);
      MdsState next = s;
      next.slot(s.sigma[m.a], m.field) = s.sigma[m.b];
      return reply(true, std::move(next));
    }
    case MdsOp::GetField: {
      const std::uint32_t* v = slot_of(s, m.b);
      if (!v) return reply(false, s);
      MdsState next = s;
      next.sigma[m.a] = *v;
      return reply(true, std::move(next));
    }
    case MdsOp::GenAct:
      if (!gacnd(*universe_, s, m.a, m.b)) return blocked();
      return {Reply::M, gares(*universe_, s, m.a, m.b), s};
  }
  return blocked();
}

AtomId MdsService::spot(const MdsState& s, std::string_view name) const {
  auto idx = universe_->spot_index(name);
  if (!idx) throw std::invalid_argument("unknown spot: " + std::string(name));
  if (s.divergent) return kUndefined;
  return s.sigma[*idx];
}

std::optional<AtomId> MdsService::field(const MdsState& s, AtomId atom, std::string_view name) const {
  auto idx = universe_->field_index(name);
  if (!idx) throw std::invalid_argument("unknown field: " + std::string(name));
  if (s.divergent || atom == kUndefined || atom > s.atoms) return std::nullopt;
  const std::uint32_t v = s.slot(atom, *idx);
  if (v == MdsState::kNoField) return std::nullopt;
  return v;
}

ServiceInstance<MdsService> mds_init(std::shared_ptr<const MdsUniverse> universe) {
  MdsService svc(std::move(universe));
  MdsState init = svc.initial();
  return make_instance(std::move(svc), std::move(init));
}

bool well_formed(const MdsState& s) {
  if (s.divergent) return true;
  if (s.slots.size() != static_cast<std::size_t>(s.atoms) * s.field_count) return false;
  for (AtomId a : s.sigma)
    if (a > s.atoms) return false;
  for (std::uint32_t v : s.slots)
    if (v != MdsState::kNoField && v > s.atoms) return false;
  return true;
}

// Dumps ----------------------------------------------------------------------------

namespace {

std::string atom_text(AtomId a) { return a == kUndefined ? "_" : std::to_string(a); }

nlohmann::ordered_json atom_json(AtomId a) {
  return a == kUndefined ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(a);
}

}  // namespace

std::string dump_state(const MdsUniverse& u, const MdsState& s) {
  if (s.divergent) return "divergent\n";
  std::ostringstream out;
  for (std::size_t i = 0; i < u.spots().size(); ++i)
    out << "spot " << u.spots()[i] << " = " << atom_text(s.sigma[i]) << '\n';
  for (AtomId a = 1; a <= s.atoms; ++a) {
    out << "atom " << a << ':';
    bool first = true;
    for (std::uint32_t f = 0; f < s.field_count; ++f) {
      const std::uint32_t v = s.slot(a, f);
      if (v == MdsState::kNoField) continue;
      out << (first ? " " : ",") << u.fields()[f] << '=' << atom_text(v);
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

std::string dump_state_json(const MdsUniverse& u, const MdsState& s) {
  nlohmann::ordered_json j;
  if (s.divergent) {
    j["divergent"] = true;
    return j.dump();
  }
  j["spots"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < u.spots().size(); ++i)
    j["spots"].push_back(nlohmann::ordered_json::array({u.spots()[i], atom_json(s.sigma[i])}));
  j["atoms"] = nlohmann::ordered_json::array();
  for (AtomId a = 1; a <= s.atoms; ++a) {
    nlohmann::ordered_json fields = nlohmann::ordered_json::array();
    for (std::uint32_t f = 0; f < s.field_count; ++f) {
      const std::uint32_t v = s.slot(a, f);
      if (v != MdsState::kNoField) fields.push_back(nlohmann::ordered_json::array({u.fields()[f], atom_json(v)}));
    }
    j["atoms"].push_back(nlohmann::ordered_json::array({a, fields}));
  }
  return j.dump();
}

namespace {

struct RawDump {
  std::vector<std::pair<std::string, AtomId>> spots;
  std::vector<std::pair<AtomId, std::vector<std::pair<std::string, AtomId>>>> atoms;
};

AtomId parse_atom_token(std::string_view tok, std::size_t offset) {
  if (tok == "_") return kUndefined;
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("dump: expected an atom id or '_'", offset);
  unsigned long v = std::stoul(std::string(tok));
  if (v == 0 || v > UINT32_MAX - 1) throw ParseError("dump: atom id out of range", offset);
  return static_cast<AtomId>(v);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

RawDump parse_text_dump(std::string_view text) {
  RawDump raw;
  std::size_t line_start = 0;
  while (line_start < text.size()) {
    std::size_t end = text.find('\n', line_start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(line_start, end - line_start));
    const std::size_t at = line_start;
    line_start = end + 1;
    if (line.empty()) continue;
    if (line.starts_with("spot ")) {
      std::string_view rest = line.substr(5);
      const auto eq = rest.find(" = ");
      if (eq == std::string_view::npos) throw ParseError("dump: expected 'spot <name> = <atom>'", at);
      std::string name(trim(rest.substr(0, eq)));
      if (!is_identifier(name)) throw ParseError("dump: bad spot name", at);
      raw.spots.emplace_back(std::move(name), parse_atom_token(trim(rest.substr(eq + 3)), at));
    } else if (line.starts_with("atom ")) {
      std::string_view rest = line.substr(5);
      const auto colon = rest.find(':');
      if (colon == std::string_view::npos) throw ParseError("dump: expected 'atom <id>:'", at);
      const AtomId id = parse_atom_token(trim(rest.substr(0, colon)), at);
      std::vector<std::pair<std::string, AtomId>> fields;
      std::string_view list = trim(rest.substr(colon + 1));
      while (!list.empty()) {
        const auto comma = list.find(',');
        std::string_view item = trim(list.substr(0, comma));
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw ParseError("dump: expected '<field>=<atom>'", at);
        fields.emplace_back(std::string(trim(item.substr(0, eq))), parse_atom_token(trim(item.substr(eq + 1)), at));
        list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
      }
      raw.atoms.emplace_back(id, std::move(fields));
    } else if (line == "divergent") {
      throw ParseError("dump: the divergent state holds no representation", at);
    } else {
      throw ParseError("dump: unrecognized line", at);
    }
  }
  return raw;
}

RawDump parse_json_dump(std::string_view text) {
  RawDump raw;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("dump: invalid JSON: ") + e.what(), e.byte);
  }
  auto atom_of = [](const nlohmann::json& v) -> AtomId {
    if (v.is_null()) return kUndefined;
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) throw ParseError("dump: bad atom id", 0);
    return v.get<AtomId>();
  };
  try {
    if (j.contains("divergent")) throw ParseError("dump: the divergent state holds no representation", 0);
    for (const auto& s : j.at("spots")) raw.spots.emplace_back(s.at(0).get<std::string>(), atom_of(s.at(1)));
    for (const auto& a : j.at("atoms")) {
      std::vector<std::pair<std::string, AtomId>> fields;
      for (const auto& f : a.at(1)) fields.emplace_back(f.at(0).get<std::string>(), atom_of(f.at(1)));
      raw.atoms.emplace_back(atom_of(a.at(0)), std::move(fields));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("dump: unexpected JSON layout: ") + e.what(), 0);
  }
  return raw;
}

}  // namespace

DumpedState parse_dump(std::string_view text) {
  const std::string_view body = trim(text);
  RawDump raw = !body.empty() && body.front() == '{' ? parse_json_dump(body) : parse_text_dump(text);

  std::vector<std::string> spot_names, field_names;
  for (const auto& [name, a] : raw.spots) spot_names.push_back(name);
  for (const auto& [id, fields] : raw.atoms)
    for (const auto& [f, v] : fields) field_names.push_back(f);
  auto universe = std::make_shared<const MdsUniverse>(std::vector<std::string>{}, std::vector<std::string>{},
                                                      spot_names, field_names);
  MdsService svc(universe);
  MdsState s = svc.initial();
  if (universe->spots().size() != raw.spots.size()) throw ParseError("dump: duplicate spot", 0);
  s.atoms = static_cast<std::uint32_t>(raw.atoms.size());
  s.slots.assign(static_cast<std::size_t>(s.atoms) * s.field_count, MdsState::kNoField);
  for (std::size_t i = 0; i < raw.atoms.size(); ++i) {
    const auto& [id, fields] = raw.atoms[i];
    if (id != i + 1) throw ParseError("dump: atoms must be numbered 1, 2, ... in order", 0);
    for (const auto& [f, v] : fields) {
      auto& slot = s.slot(id, *universe->field_index(f));
      if (slot != MdsState::kNoField) throw ParseError("dump: duplicate field " + f, 0);
      slot = v;
    }
  }
  for (const auto& [name, a] : raw.spots) s.sigma[*universe->spot_index(name)] = a;
  if (!well_formed(s)) throw ParseError("dump: reference to a nonexistent atom", 0);
  return {universe, std::move(s)};
}

}  // namespace pgwb

std::size_t std::hash<pgwb::MdsState>::operator()(const pgwb::MdsState& s) const noexcept {
  std::size_t h = s.divergent ? 0x9e3779b97f4a7c15ull : 0;
  auto mix = [&](std::uint64_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
  for (auto a : s.sigma) mix(a);
  mix(s.atoms);
  for (auto v : s.slots) mix(v);
  return h;
}
