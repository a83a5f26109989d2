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

#include "pgwb/rf.hpp"

#include <charconv>
#include <stdexcept>

namespace pgwb {

namespace {

std::optional<std::uint32_t> parse_nat(std::string_view s) {
  if (s.empty() || (s.size() > 1 && s.front() == '0')) return std::nullopt;
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

RfService::RfService(std::uint32_t maxr, std::uint32_t maxn) : maxr_(maxr), maxn_(maxn) {
  if (maxr < 1 || maxn < 1) throw std::invalid_argument("register file needs maxr >= 1 and maxn >= 1");
}

std::optional<RfMethod> RfService::parse_method(std::string_view m) const {
  RfMethod out;
  if (m.starts_with("set:")) {
    out.is_set = true;
    m.remove_prefix(4);
  } else if (m.starts_with("eq:")) {
    m.remove_prefix(3);
  } else {
    return std::nullopt;
  }
  const auto colon = m.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  auto reg = parse_nat(m.substr(0, colon));
  auto value = parse_nat(m.substr(colon + 1));
  if (!reg || !value || *reg < 1 || *reg > maxr_ || *value > maxn_) return std::nullopt;
  out.reg = *reg;
  out.value = *value;
  return out;
}

std::vector<std::string> RfService::all_methods() const {
  std::vector<std::string> out;
  for (const char* head : {"set:", "eq:"})
    for (std::uint32_t i = 1; i <= maxr_; ++i)
      for (std::uint32_t n = 0; n <= maxn_; ++n)
        out.push_back(head + std::to_string(i) + ":" + std::to_string(n));
  return out;
}

std::vector<RfState> RfService::all_states() const {
  std::vector<RfState> out;
  RfState s = initial();
  while (true) {
    out.push_back(s);
    std::size_t i = 0;
    while (i < maxr_ && s.registers[i] == maxn_) s.registers[i++] = 0;
    if (i == maxr_) return out;
    ++s.registers[i];
  }
}

Step<RfState> RfService::step(std::string_view method, const RfState& s) const {
  auto m = s.divergent ? std::nullopt : parse_method(method);
  if (!m) return {Reply::B, Action::tau(), divergent()};
  if (m->is_set) {
    RfState next = s;
    next.registers[m->reg - 1] = m->value;
    return {Reply::T, Action::tau(), std::move(next)};
  }
  return {s.registers[m->reg - 1] == m->value ? Reply::T : Reply::F, Action::tau(), s};
}

ServiceInstance<RfService> rf_init(std::uint32_t maxr, std::uint32_t maxn) {
  RfService svc(maxr, maxn);
  RfState init = svc.initial();
  return make_instance(std::move(svc), std::move(init));
}

std::string dump_state(const RfState& s) {
  if (s.divergent) return "divergent\n";
  std::string out;
  for (std::size_t i = 0; i < s.registers.size(); ++i)
    out += "r" + std::to_string(i + 1) + " = " + std::to_string(s.registers[i]) + "\n";
  return out;
}

}  // namespace pgwb

std::size_t std::hash<pgwb::RfState>::operator()(const pgwb::RfState& s) const noexcept {
  std::size_t h = s.divergent ? 1 : 0;
  for (auto v : s.registers) h = h * 1000003u + v;
  return h;
}
