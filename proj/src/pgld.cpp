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

#include "pgwb/pgld.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

#include "pgwb/error.hpp"
#include "pgwb/services.hpp"

namespace pgwb {

std::string LdInstr::str() const {
  switch (kind) {
    case LdKind::Plain: return action.str();
    case LdKind::PosTest: return "+" + action.str();
    case LdKind::NegTest: return "-" + action.str();
    case LdKind::AbsJump: return "##" + std::to_string(target);
    case LdKind::RegSet: return "set:" + std::to_string(target) + ":" + std::to_string(value);
    case LdKind::IndJump: return "i##" + std::to_string(target);
  }
  return {};
}

PgldProgram::PgldProgram(std::vector<LdInstr> instrs) : instrs_(std::move(instrs)) {
  if (instrs_.empty()) throw std::invalid_argument("empty PGLD program");
  for (const auto& u : instrs_)
    if (u.kind == LdKind::RegSet || u.kind == LdKind::IndJump)
      throw std::invalid_argument("register instruction in a PGLD program: " + u.str());
}

PgldijProgram::PgldijProgram(std::vector<LdInstr> instrs) : instrs_(std::move(instrs)) {
  if (instrs_.empty()) throw std::invalid_argument("empty PGLDij program");
}

bool PgldijProgram::uses_registers() const {
  return std::any_of(instrs_.begin(), instrs_.end(), [](const LdInstr& u) {
    return u.kind == LdKind::RegSet || u.kind == LdKind::IndJump;
  });
}

// Parsing ------------------------------------------------------------------------

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::uint32_t parse_number(std::string_view s, std::size_t offset) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (!all_digits(s) || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError("expected a natural number", offset);
  return v;
}

void check_name(std::string_view name, std::size_t offset, const char* what) {
  if (!is_identifier(name)) throw ParseError(std::string("malformed ") + what, offset);
  if (name.front() == '@') throw ParseError(std::string(what) + " may not start with '@'", offset);
}

LdInstr parse_instr(std::string_view tok, std::size_t offset) {
  if (tok.starts_with("##")) return LdInstr::jump(parse_number(tok.substr(2), offset + 2));
  if (tok.starts_with("i##")) return LdInstr::ind_jump(parse_number(tok.substr(3), offset + 3));
  if (tok.starts_with("set:") && tok.find('.') == std::string_view::npos) {
    std::string_view rest = tok.substr(4);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected set:<register>:<value>", offset);
    return LdInstr::reg_set(parse_number(rest.substr(0, colon), offset + 4),
                            parse_number(rest.substr(colon + 1), offset + 5 + colon));
  }
  LdKind kind = LdKind::Plain;
  std::size_t skip = 0;
  if (tok.front() == '+' || tok.front() == '-') {
    kind = tok.front() == '+' ? LdKind::PosTest : LdKind::NegTest;
    skip = 1;
  }
  std::string_view act = tok.substr(skip);
  const auto dot = act.find('.');
  if (dot == std::string_view::npos) throw ParseError("expected an instruction", offset);
  std::string_view focus = act.substr(0, dot);
  std::string_view method = act.substr(dot + 1);
  check_name(focus, offset + skip, "focus");
  check_name(method, offset + skip + dot + 1, "method");
  if (focus == kMdFocus || focus == kRfFocus)
    throw ParseError("focus " + std::string(focus) + " is reserved", offset + skip);
  return {kind, Action::basic(std::string(focus), std::string(method)), 0, 0};
}

std::vector<LdInstr> parse_instrs(std::string_view text, bool allow_registers) {
  std::vector<LdInstr> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = text.find(';', pos);
    if (end == std::string_view::npos) end = text.size();
    std::size_t b = pos, e = end;
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    if (b == e) throw ParseError("empty instruction", b);
    for (std::size_t i = b; i < e; ++i)
      if (std::isspace(static_cast<unsigned char>(text[i]))) throw ParseError("unexpected whitespace", i);
    LdInstr u = parse_instr(text.substr(b, e - b), b);
    if (!allow_registers && (u.kind == LdKind::RegSet || u.kind == LdKind::IndJump))
      throw ParseError("register instruction outside PGLDij", b);
    out.push_back(std::move(u));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

}  // namespace

PgldProgram parse_pgld(std::string_view text) { return PgldProgram(parse_instrs(text, false)); }

PgldijProgram parse_pgldij(std::string_view text) { return PgldijProgram(parse_instrs(text, true)); }

bool is_pgldij_text(std::string_view text) { return parse_pgldij(text).uses_registers(); }

namespace {

std::string join(const std::vector<LdInstr>& instrs) {
  std::string out;
  for (std::size_t j = 0; j < instrs.size(); ++j) {
    if (j) out += ';';
    out += instrs[j].str();
  }
  return out;
}

}  // namespace

std::string print_pgld(const PgldProgram& p) { return join(p.instrs()); }
std::string print_pgldij(const PgldijProgram& p) { return join(p.instrs()); }

void check_reserved_foci(const std::vector<LdInstr>& instrs) {
  for (std::size_t j = 0; j < instrs.size(); ++j) {
    const auto& u = instrs[j];
    if (u.has_action() && (u.action.focus() == kMdFocus || u.action.focus() == kRfFocus))
      throw TranslationError("instruction " + std::to_string(j + 1) + " uses reserved focus " +
                             u.action.focus());
  }
}

// Projections ----------------------------------------------------------------------

InstrSeq pgld_to_pga(const PgldProgram& p) {
  const std::uint32_t k = static_cast<std::uint32_t>(p.size());
  std::vector<PrimInstr> loop;
  loop.reserve(k + 2);
  for (std::uint32_t j = 1; j <= k; ++j) {
    const LdInstr& u = p[j - 1];
    switch (u.kind) {
      case LdKind::Plain: loop.push_back(PrimInstr::plain(u.action)); break;
      case LdKind::PosTest: loop.push_back(PrimInstr::pos_test(u.action)); break;
      case LdKind::NegTest: loop.push_back(PrimInstr::neg_test(u.action)); break;
      case LdKind::AbsJump: {
        const std::uint32_t l = u.target;
        if (l == 0 || l > k)
          loop.push_back(PrimInstr::halt());
        else if (l >= j)
          loop.push_back(PrimInstr::jump(l - j));
        else
          loop.push_back(PrimInstr::jump(k + 2 - (j - l)));
        break;
      }
      case LdKind::RegSet:
      case LdKind::IndJump: throw std::logic_error("register instruction in a PGLD program");
    }
  }
  loop.push_back(PrimInstr::halt());
  loop.push_back(PrimInstr::halt());
  return InstrSeq({}, std::move(loop));
}

Thread pgld_behavior(const PgldProgram& p) { return extract_thread(pgld_to_pga(p)); }

std::uint32_t dispatch_entry(std::size_t k, std::uint32_t i, std::uint32_t maxn) {
  const std::uint32_t n = static_cast<std::uint32_t>(std::min<std::size_t>(k, maxn));
  return static_cast<std::uint32_t>(k) + 3 + (2 * n + 1) * (i - 1);
}

PgldProgram pgldij_to_pgld(const PgldijProgram& p, std::uint32_t maxr, std::uint32_t maxn) {
  if (maxr < 1 || maxn < 1) throw TranslationError("maxr and maxn must be at least 1");
  check_reserved_foci(p.instrs());
  const std::size_t k = p.size();
  const std::uint32_t n = static_cast<std::uint32_t>(std::min<std::size_t>(k, maxn));
  const std::string rf(kRfFocus);
  std::vector<LdInstr> out;
  out.reserve(k + 2 + maxr * (2 * n + 1));
  for (std::size_t j = 0; j < k; ++j) {
    const LdInstr& u = p[j];
    const std::string where = "instruction " + std::to_string(j + 1) + ": ";
    if ((u.kind == LdKind::RegSet || u.kind == LdKind::IndJump) && (u.target < 1 || u.target > maxr))
      throw TranslationError(where + "register " + std::to_string(u.target) + " outside [1, " +
                             std::to_string(maxr) + "]");
    switch (u.kind) {
      case LdKind::AbsJump: out.push_back(LdInstr::jump(u.target <= k ? u.target : 0)); break;
      case LdKind::RegSet:
        if (u.value < 1 || u.value > maxn)
          throw TranslationError(where + "value " + std::to_string(u.value) + " outside [1, " +
                                 std::to_string(maxn) + "]");
        out.push_back(LdInstr::plain(
            Action::basic(rf, "set:" + std::to_string(u.target) + ":" + std::to_string(u.value))));
        break;
      case LdKind::IndJump: out.push_back(LdInstr::jump(dispatch_entry(k, u.target, maxn))); break;
      default: out.push_back(u); break;
    }
  }
  out.push_back(LdInstr::jump(0));
  out.push_back(LdInstr::jump(0));
  for (std::uint32_t i = 1; i <= maxr; ++i) {
    for (std::uint32_t v = 1; v <= n; ++v) {
      out.push_back(LdInstr::pos_test(
          Action::basic(rf, "eq:" + std::to_string(i) + ":" + std::to_string(v))));
      out.push_back(LdInstr::jump(v));
    }
    out.push_back(LdInstr::jump(0));
  }
  return PgldProgram(std::move(out));
}

Thread pgldij_behavior(const PgldijProgram& p, std::uint32_t maxr, std::uint32_t maxn) {
  const Thread t = pgld_behavior(pgldij_to_pgld(p, maxr, maxn));
  return abstract(use_compose(t, kRfFocus, rf_init(maxr, maxn)));
}

}  // namespace pgwb
