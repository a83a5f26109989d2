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

#include "pgwb/pga.hpp"

#include <cctype>
#include <stdexcept>
#include <unordered_set>

#include "pgwb/error.hpp"

namespace pgwb {

PrimInstr PrimInstr::plain(Action a) {
  if (a.is_tau()) throw std::invalid_argument("basic instruction needs a basic action");
  PrimInstr u;
  u.kind_ = InstrKind::Plain;
  u.action_ = std::move(a);
  return u;
}

PrimInstr PrimInstr::pos_test(Action a) {
  PrimInstr u = plain(std::move(a));
  u.kind_ = InstrKind::PosTest;
  return u;
}

PrimInstr PrimInstr::neg_test(Action a) {
  PrimInstr u = plain(std::move(a));
  u.kind_ = InstrKind::NegTest;
  return u;
}

PrimInstr PrimInstr::jump(std::uint32_t offset) {
  PrimInstr u;
  u.kind_ = InstrKind::Jump;
  u.offset_ = offset;
  return u;
}

PrimInstr PrimInstr::halt() { return PrimInstr(); }

std::string PrimInstr::str() const {
  switch (kind_) {
    case InstrKind::Plain: return action_.str();
    case InstrKind::PosTest: return "+" + action_.str();
    case InstrKind::NegTest: return "-" + action_.str();
    case InstrKind::Jump: return "#" + std::to_string(offset_);
    case InstrKind::Halt: return "!";
  }
  return {};
}

InstrSeq::InstrSeq(std::vector<PrimInstr> prefix, std::vector<PrimInstr> loop)
    : prefix_(std::move(prefix)), loop_(std::move(loop)) {
  if (prefix_.empty() && loop_.empty())
    throw std::invalid_argument("instruction sequence must be non-empty");
}

const PrimInstr& InstrSeq::at(std::size_t p) const {
  return p < prefix_.size() ? prefix_.at(p) : loop_.at(p - prefix_.size());
}

InstrSeq concat(const InstrSeq& x, const InstrSeq& y) {
  if (x.has_loop()) return x;
  std::vector<PrimInstr> prefix = x.prefix();
  prefix.insert(prefix.end(), y.prefix().begin(), y.prefix().end());
  return InstrSeq(std::move(prefix), y.loop());
}

InstrSeq repeat(const InstrSeq& x) {
  if (x.has_loop()) return x;
  return InstrSeq({}, x.prefix());
}

namespace {

// Position reached by moving `distance` instructions forward from canonical
// position `p` in the unrolled sequence.
std::optional<std::size_t> advance(const InstrSeq& x, std::size_t p, std::uint64_t distance) {
  const std::uint64_t q = p + distance;
  if (q < x.length()) return static_cast<std::size_t>(q);
  if (!x.has_loop()) return std::nullopt;
  const std::size_t base = x.prefix().size();
  return base + static_cast<std::size_t>((q - base) % x.loop().size());
}

struct ChainEnd {
  enum Kind { Instr, Dead, PastEnd } kind;
  std::size_t position = 0;   // for Instr
  std::uint64_t distance = 0;  // accumulated offset, for PastEnd
};

// Follows the jump chain starting at `p` (p may be a non-jump).
ChainEnd follow_chain(const InstrSeq& x, std::size_t p) {
  std::unordered_set<std::size_t> visited;
  std::uint64_t distance = 0;
  while (x.at(p).is_jump()) {
    if (!visited.insert(p).second) return {ChainEnd::Dead};
    const std::uint32_t offset = x.at(p).offset();
    if (offset == 0) return {ChainEnd::Dead};
    distance += offset;
    auto q = advance(x, p, offset);
    if (!q) return {ChainEnd::PastEnd, 0, distance};
    p = *q;
  }
  return {ChainEnd::Instr, p};
}

}  // namespace

InstrSeq normalize_chains(const InstrSeq& x) {
  auto rewrite = [&](std::size_t p) {
    const PrimInstr& u = x.at(p);
    if (!u.is_jump() || u.offset() == 0) return u;
    ChainEnd end = follow_chain(x, p);
    switch (end.kind) {
      case ChainEnd::Dead: return PrimInstr::jump(0);
      case ChainEnd::PastEnd: return PrimInstr::jump(static_cast<std::uint32_t>(end.distance));
      case ChainEnd::Instr: break;
    }
    std::size_t d = end.position > p ? end.position - p : end.position + x.loop().size() - p;
    return PrimInstr::jump(static_cast<std::uint32_t>(d));
  };
  std::vector<PrimInstr> prefix, loop;
  for (std::size_t p = 0; p < x.prefix().size(); ++p) prefix.push_back(rewrite(p));
  for (std::size_t p = x.prefix().size(); p < x.length(); ++p) loop.push_back(rewrite(p));
  return InstrSeq(std::move(prefix), std::move(loop));
}

Thread extract_thread(const InstrSeq& x) {
  const std::size_t n = x.length();
  const auto deadlock = static_cast<StateId>(n);
  auto state_of = [&](std::size_t p) -> StateId {
    ChainEnd end = follow_chain(x, p);
    return end.kind == ChainEnd::Instr ? static_cast<StateId>(end.position) : deadlock;
  };
  auto continuation = [&](std::size_t p, std::uint64_t d) -> StateId {
    auto q = advance(x, p, d);
    return q ? state_of(*q) : deadlock;
  };

  std::vector<ThreadNode> nodes(n + 1, ThreadNode::deadlock());
  for (std::size_t p = 0; p < n; ++p) {
    const PrimInstr& u = x.at(p);
    switch (u.kind()) {
      case InstrKind::Plain: {
        StateId next = continuation(p, 1);
        nodes[p] = ThreadNode::post(u.action(), next, next);
        break;
      }
      case InstrKind::PosTest:
        nodes[p] = ThreadNode::post(u.action(), continuation(p, 1), continuation(p, 2));
        break;
      case InstrKind::NegTest:
        nodes[p] = ThreadNode::post(u.action(), continuation(p, 2), continuation(p, 1));
        break;
      case InstrKind::Halt: nodes[p] = ThreadNode::stop(); break;
      case InstrKind::Jump: break;  // never a state of its own
    }
  }
  return Thread::from_nodes(std::move(nodes), state_of(0));
}

// Text ------------------------------------------------------------------------

namespace {

class PgaParser {
 public:
  PgaParser(std::string_view text, std::string_view default_focus)
      : text_(text), default_focus_(default_focus) {}

  InstrSeq parse() {
    InstrSeq x = sequence();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return x;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("PGA syntax error: " + what, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  InstrSeq sequence() {
    InstrSeq x = term();
    while (eat(';')) x = concat(x, term());
    return x;
  }

  InstrSeq term() {
    if (eat('(')) {
      InstrSeq inner = sequence();
      if (!eat(')')) fail("expected ')'");
      if (eat('*')) return repeat(inner);
      return inner;
    }
    return InstrSeq::single(instruction());
  }

  PrimInstr instruction() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected an instruction");
    char c = text_[pos_];
    if (c == '!') {
      ++pos_;
      return PrimInstr::halt();
    }
    if (c == '#') {
      ++pos_;
      return PrimInstr::jump(number());
    }
    if (c == '+') {
      ++pos_;
      return PrimInstr::pos_test(action());
    }
    if (c == '-') {
      ++pos_;
      return PrimInstr::neg_test(action());
    }
    return PrimInstr::plain(action());
  }

  std::uint32_t number() {
    std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > UINT32_MAX) fail("jump offset too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected a jump offset");
    return static_cast<std::uint32_t>(v);
  }

  std::string identifier() {
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) fail("expected an identifier");
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Action action() {
    std::string first = identifier();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      return Action::basic(std::move(first), identifier());
    }
    return Action::basic(std::string(default_focus_), std::move(first));
  }

  std::string_view text_;
  std::string_view default_focus_;
  std::size_t pos_ = 0;
};

}  // namespace

InstrSeq parse_pga(std::string_view text, std::string_view default_focus) {
  return PgaParser(text, default_focus).parse();
}

std::string print_pga(const InstrSeq& x) {
  std::string out;
  for (const auto& u : x.prefix()) {
    if (!out.empty()) out += ';';
    out += u.str();
  }
  if (x.has_loop()) {
    if (!out.empty()) out += ';';
    out += '(';
    for (std::size_t i = 0; i < x.loop().size(); ++i) {
      if (i) out += ';';
      out += x.loop()[i].str();
    }
    out += ")*";
  }
  return out;
}

}  // namespace pgwb
