#include "leap/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "leap/errors.hpp"

namespace leap {

Alphabet::Alphabet(std::vector<std::string> events) : events_(std::move(events)) {
  std::set<std::string> seen;
  for (const auto& e : events_) {
    if (!is_identifier(e)) throw ParseError("invalid event name '" + e + "'", 0);
    if (!seen.insert(e).second) throw ParseError("duplicate event '" + e + "'", 0);
  }
}

std::optional<EventId> Alphabet::find(std::string_view event) const {
  auto it = std::find(events_.begin(), events_.end(), event);
  if (it == events_.end()) return std::nullopt;
  return static_cast<EventId>(it - events_.begin());
}

EventId Alphabet::at(std::string_view event) const {
  if (auto id = find(event)) return *id;
  throw UnknownEvent("unknown event '" + std::string(event) + "'");
}

EventId Alphabet::clock(std::string_view clock) const {
  if (clock.size() > 2 && clock.substr(0, 2) == "x_") {
    if (auto id = find(clock.substr(2))) return *id;
  }
  throw UnknownClock("unknown clock '" + std::string(clock) + "'");
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s.front())) && s.front() != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace leap
