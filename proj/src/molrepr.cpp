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

#include "pgwb/molrepr.hpp"

#include <algorithm>
#include <unordered_map>

#include "pgwb/error.hpp"

namespace pgwb {

namespace {

const std::string kFocusField = "focus";
const std::string kMethodField = "method";
const std::string kPosField = "pos";
const std::string kNegField = "neg";
const std::string kAjmpField = "ajmp";
const std::string kStopField = "stop";
const std::string kRegField = "reg";
const std::string kContField = "cont";
const std::string kNextField = "next";

PrimInstr md(std::string method) { return PrimInstr::plain(Action::basic(std::string(kMdFocus), std::move(method))); }
PrimInstr md_test(std::string method) {
  return PrimInstr::pos_test(Action::basic(std::string(kMdFocus), std::move(method)));
}

std::string pos(std::size_t j) { return ReprLayout::position_spot(j); }

PrimInstr creatom(const std::string& spot) { return md("new:" + spot); }
PrimInstr addfield(const std::string& spot, const std::string& f) { return md("addfield:" + spot + ":" + f); }
PrimInstr setfield(const std::string& spot, const std::string& f, const std::string& to) {
  return md("setfield:" + spot + ":" + f + ":" + to);
}

template <class Fn>
void for_each_distinct(const std::vector<LdInstr>& instrs, Fn name_of, std::vector<std::string>& out) {
  for (const auto& u : instrs) {
    if (!u.has_action()) continue;
    const std::string& n = name_of(u.action);
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  }
}

std::vector<std::string> distinct_foci(const std::vector<LdInstr>& instrs) {
  std::vector<std::string> out;
  for_each_distinct(instrs, [](const Action& a) -> const std::string& { return a.focus(); }, out);
  return out;
}

std::vector<std::string> distinct_methods(const std::vector<LdInstr>& instrs) {
  std::vector<std::string> out;
  for_each_distinct(instrs, [](const Action& a) -> const std::string& { return a.method(); }, out);
  return out;
}

std::vector<PrimInstr> block_for(const LdInstr& u, std::size_t j, std::size_t k) {
  const std::string sj = pos(j);
  switch (u.kind) {
    case LdKind::Plain:
    case LdKind::PosTest:
    case LdKind::NegTest: {
      std::string on_pos = pos(j + 1), on_neg = pos(j + 1);
      if (u.kind == LdKind::PosTest) on_neg = pos(j + 2);
      if (u.kind == LdKind::NegTest) on_pos = pos(j + 2);
      return {addfield(sj, kFocusField), addfield(sj, kMethodField), addfield(sj, kPosField),
              addfield(sj, kNegField), setfield(sj, kFocusField, u.action.focus()),
              setfield(sj, kMethodField, u.action.method()), setfield(sj, kPosField, on_pos),
              setfield(sj, kNegField, on_neg)};
    }
    case LdKind::AbsJump:
      if (u.target >= 1 && u.target <= k) return {addfield(sj, kAjmpField), setfield(sj, kAjmpField, pos(u.target))};
      return {addfield(sj, kStopField)};
    case LdKind::RegSet: {
      const std::string cont = u.value >= 1 && u.value <= k ? pos(u.value) : pos(k + 2);
      return {addfield(sj, kRegField), addfield(sj, kContField), addfield(sj, kNextField),
              setfield(sj, kRegField, ReprLayout::register_spot(u.target)), setfield(sj, kContField, cont),
              setfield(sj, kNextField, pos(j + 1))};
    }
    case LdKind::IndJump:
      return {addfield(sj, kAjmpField), setfield(sj, kAjmpField, ReprLayout::register_spot(u.target))};
  }
  return {};
}

ConstructionParts construction(const std::vector<LdInstr>& instrs, std::uint32_t registers) {
  check_reserved_foci(instrs);
  const std::size_t k = instrs.size();
  ConstructionParts parts;
  for (const auto& f : distinct_foci(instrs)) parts.creations.push_back(creatom(f));
  for (const auto& m : distinct_methods(instrs)) parts.creations.push_back(creatom(m));
  for (std::size_t j = 1; j <= k + 2; ++j) parts.creations.push_back(creatom(pos(j)));
  for (std::uint32_t i = 1; i <= registers; ++i) parts.creations.push_back(creatom(ReprLayout::register_spot(i)));
  for (std::size_t j = 1; j <= k; ++j) parts.blocks.push_back(block_for(instrs[j - 1], j, k));
  parts.closing.push_back(addfield(pos(k + 1), kStopField));
  parts.closing.push_back(addfield(pos(k + 2), kStopField));
  for (std::uint32_t i = 1; i <= registers; ++i) {
    parts.closing.push_back(addfield(ReprLayout::register_spot(i), kAjmpField));
    parts.closing.push_back(setfield(ReprLayout::register_spot(i), kAjmpField, pos(k + 2)));
  }
  parts.closing.push_back(md("set:" + std::string(kCursorSpot) + ":" + pos(1)));
  parts.closing.push_back(PrimInstr::halt());
  return parts;
}

}  // namespace

const std::vector<std::string>& repr_fields() {
  static const std::vector<std::string> fields = {kFocusField, kMethodField, kPosField, kNegField, kAjmpField,
                                                  kStopField,  kRegField,    kContField, kNextField};
  return fields;
}

std::string ReprLayout::position_spot(std::size_t j) { return "@s" + std::to_string(j); }
std::string ReprLayout::register_spot(std::uint32_t i) { return "@r" + std::to_string(i); }

std::vector<std::string> ReprLayout::reserved_spots() const {
  std::vector<std::string> out{std::string(kCursorSpot), std::string(kScratchSpotU), std::string(kScratchSpotV)};
  for (std::size_t j = 1; j <= k + 2; ++j) out.push_back(position_spot(j));
  for (std::uint32_t i = 1; i <= registers; ++i) out.push_back(register_spot(i));
  return out;
}

std::shared_ptr<const MdsUniverse> repr_universe(const std::vector<LdInstr>& instrs, std::uint32_t registers,
                                                 std::optional<std::size_t> capacity) {
  return std::make_shared<const MdsUniverse>(distinct_foci(instrs), distinct_methods(instrs),
                                             ReprLayout{instrs.size(), registers}.reserved_spots(), repr_fields(),
                                             capacity);
}

InstrSeq ConstructionParts::program() const {
  std::vector<PrimInstr> all = creations;
  for (const auto& b : blocks) all.insert(all.end(), b.begin(), b.end());
  all.insert(all.end(), closing.begin(), closing.end());
  return InstrSeq(std::move(all));
}

ConstructionParts pgld_construction(const PgldProgram& p) { return construction(p.instrs(), 0); }

InstrSeq pgld_to_md(const PgldProgram& p) { return pgld_construction(p).program(); }

ConstructionParts pgldij_construction(const PgldijProgram& p, std::uint32_t maxr, std::uint32_t maxn) {
  // Same preconditions as the projection to PGLD.
  pgldij_to_pgld(p, maxr, maxn);
  return construction(p.instrs(), maxr);
}

InstrSeq pgldij_to_md(const PgldijProgram& p, std::uint32_t maxr, std::uint32_t maxn) {
  return pgldij_construction(p, maxr, maxn).program();
}

ServiceInstance<MdsService> build_repr(const PgldProgram& p, std::optional<std::size_t> capacity) {
  const Thread t = extract_thread(pgld_to_md(p));
  return apply_compose(t, kMdFocus, mds_init(repr_universe(p.instrs(), 0, capacity)));
}

ServiceInstance<MdsService> build_repr_ij(const PgldijProgram& p, std::uint32_t maxr, std::uint32_t maxn,
                                          std::optional<std::size_t> capacity) {
  const Thread t = extract_thread(pgldij_to_md(p, maxr, maxn));
  return apply_compose(t, kMdFocus, mds_init(repr_universe(p.instrs(), maxr, capacity)));
}

InstrSeq pgld_interpreter() {
  static const InstrSeq program = InstrSeq(
      {}, {md_test("hasfield:@s:stop"), PrimInstr::halt(), md_test("hasfield:@s:ajmp"), PrimInstr::jump(9),
           md("getfield:@u:@s:focus"), md("getfield:@v:@s:method"), md_test("genact:@u:@v"), PrimInstr::jump(3),
           md("getfield:@s:@s:neg"), PrimInstr::jump(4), md("getfield:@s:@s:pos"), PrimInstr::jump(2),
           md("getfield:@s:@s:ajmp")});
  return program;
}

InstrSeq pgldij_interpreter() {
  static const InstrSeq program = InstrSeq(
      {}, {md_test("hasfield:@s:stop"), PrimInstr::halt(), md_test("hasfield:@s:ajmp"), PrimInstr::jump(16),
           md_test("hasfield:@s:reg"), PrimInstr::jump(9), md("getfield:@u:@s:focus"), md("getfield:@v:@s:method"),
           md_test("genact:@u:@v"), PrimInstr::jump(3), md("getfield:@s:@s:neg"), PrimInstr::jump(9),
           md("getfield:@s:@s:pos"), PrimInstr::jump(7), md("getfield:@u:@s:reg"), md("getfield:@v:@s:cont"),
           md("setfield:@u:ajmp:@v"), md("getfield:@s:@s:next"), PrimInstr::jump(2), md("getfield:@s:@s:ajmp")});
  return program;
}

Thread interpret_from(const InstrSeq& interpreter, const ServiceInstance<MdsService>& svc) {
  return abstract(use_compose(extract_thread(interpreter), kMdFocus, svc));
}

Thread interpret(const PgldProgram& p, std::optional<std::size_t> capacity) {
  return interpret_from(pgld_interpreter(), build_repr(p, capacity));
}

Thread interpret_ij(const PgldijProgram& p, std::uint32_t maxr, std::uint32_t maxn,
                    std::optional<std::size_t> capacity) {
  return interpret_from(pgldij_interpreter(), build_repr_ij(p, maxr, maxn, capacity));
}

Trace trace_interpretation(const InstrSeq& interpreter, const ServiceInstance<MdsService>& svc,
                           const std::vector<bool>& external_replies, std::size_t max_steps) {
  const Thread t = extract_thread(interpreter);
  const auto cursor_spot = svc.descr.universe().spot_index(kCursorSpot);
  std::unordered_map<MdsState, std::uint32_t> ids;
  std::size_t next_reply = 0;
  auto external = [&] {
    const bool r = next_reply < external_replies.size() ? external_replies[next_reply] : true;
    ++next_reply;
    return r;
  };

  Trace trace;
  StateId ts = t.root();
  MdsState cur = svc.current;
  while (trace.steps.size() < max_steps) {
    const ThreadNode& n = t.node(ts);
    if (n.kind != NodeKind::Post) {
      trace.end = n.kind;
      return trace;
    }
    if (n.action.is_tau()) {
      ts = n.on_true;
      continue;
    }
    TraceStep step;
    step.thread_state = ts;
    step.service_state = ids.emplace(cur, static_cast<std::uint32_t>(ids.size())).first->second;
    step.cursor = cursor_spot && !cur.divergent ? cur.sigma[*cursor_spot] : kUndefined;
    step.method = n.action.method();
    if (n.action.focus() != kMdFocus) {
      const bool r = external();
      step.reply = r ? Reply::T : Reply::F;
      step.action = n.action;
      trace.steps.push_back(std::move(step));
      ts = r ? n.on_true : n.on_false;
      continue;
    }
    auto st = svc.descr.step(n.action.method(), cur);
    step.reply = st.reply;
    step.action = st.action;
    trace.steps.push_back(step);
    cur = std::move(st.next);
    switch (st.reply) {
      case Reply::T: ts = n.on_true; break;
      case Reply::F: ts = n.on_false; break;
      case Reply::B: trace.end = NodeKind::Deadlock; return trace;
      case Reply::M: {
        if (st.action.is_tau()) {
          ts = n.on_true;
          break;
        }
        const bool r = external();
        TraceStep ext = step;
        ext.method = st.action.method();
        ext.reply = r ? Reply::T : Reply::F;
        trace.steps.push_back(std::move(ext));
        ts = r ? n.on_true : n.on_false;
        break;
      }
    }
  }
  trace.end = NodeKind::Post;
  return trace;
}

PgldProgram decompile(const MdsUniverse& u, const MdsState& s, std::size_t k) {
  if (s.divergent) throw RepresentationError("divergent state holds no representation");
  if (k == 0) throw RepresentationError("program length must be at least 1");
  auto sigma = [&](const std::string& name) {
    auto idx = u.spot_index(name);
    if (!idx) throw RepresentationError("missing spot " + name);
    return s.sigma[*idx];
  };
  auto field = [&](AtomId a, const std::string& name) -> std::optional<AtomId> {
    auto f = u.field_index(name);
    if (!f || a == kUndefined || a > s.atoms) return std::nullopt;
    const std::uint32_t v = s.slot(a, *f);
    if (v == MdsState::kNoField) return std::nullopt;
    return v;
  };

  std::unordered_map<AtomId, std::size_t> position_of;
  std::vector<AtomId> atoms(k + 3, kUndefined);
  for (std::size_t j = 1; j <= k + 2; ++j) {
    atoms[j] = sigma(pos(j));
    if (atoms[j] == kUndefined) throw RepresentationError("spot " + pos(j) + " is undefined");
    if (!position_of.emplace(atoms[j], j).second)
      throw RepresentationError("spot " + pos(j) + " shares its atom with another position");
  }
  if (sigma(std::string(kCursorSpot)) != atoms[1]) throw RepresentationError("cursor @s does not hold @s1");

  auto name_of = [&](AtomId a, std::size_t j, const char* what) {
    for (std::size_t i = 0; i < u.spots().size(); ++i)
      if (u.spots()[i].front() != '@' && s.sigma[i] == a) return u.spots()[i];
    throw RepresentationError("position " + std::to_string(j) + ": no " + what + " spot holds the linked atom");
  };
  auto position = [&](std::optional<AtomId> a) -> std::size_t {
    if (!a) return 0;
    auto it = position_of.find(*a);
    return it == position_of.end() ? 0 : it->second;
  };

  std::vector<LdInstr> out;
  for (std::size_t j = 1; j <= k; ++j) {
    const AtomId a = atoms[j];
    const std::string where = "position " + std::to_string(j) + ": ";
    if (field(a, kStopField)) {
      out.push_back(LdInstr::jump(0));
      continue;
    }
    if (auto target = field(a, kAjmpField)) {
      const std::size_t l = position(target);
      if (l < 1 || l > k) throw RepresentationError(where + "jump target is not a position in [1, k]");
      out.push_back(LdInstr::jump(static_cast<std::uint32_t>(l)));
      continue;
    }
    auto focus = field(a, kFocusField), method = field(a, kMethodField);
    if (!focus || !method || *focus == kUndefined || *method == kUndefined)
      throw RepresentationError(where + "no instruction fields");
    Action action = Action::basic(name_of(*focus, j, "focus"), name_of(*method, j, "method"));
    const std::size_t on_pos = position(field(a, kPosField)), on_neg = position(field(a, kNegField));
    if (on_pos == j + 1 && on_neg == j + 1)
      out.push_back(LdInstr::plain(std::move(action)));
    else if (on_pos == j + 1 && on_neg == j + 2)
      out.push_back(LdInstr::pos_test(std::move(action)));
    else if (on_pos == j + 2 && on_neg == j + 1)
      out.push_back(LdInstr::neg_test(std::move(action)));
    else
      throw RepresentationError(where + "pos/neg links match no instruction");
  }
  return PgldProgram(std::move(out));
}

MdsState clear_aux_spots(const MdsUniverse& u, MdsState s) {
  if (s.divergent) return s;
  for (auto name : {kScratchSpotU, kScratchSpotV})
    if (auto idx = u.spot_index(name)) s.sigma[*idx] = kUndefined;
  return s;
}

}  // namespace pgwb
