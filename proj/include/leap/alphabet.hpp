#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace leap {

using EventId = int;

/// Ordered event set. The order fixes the clock order x_{e0} < x_{e1} < ... used by every
/// total order in the library.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> events);

  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }
  const std::vector<std::string>& events() const noexcept { return events_; }
  const std::string& name(EventId e) const { return events_.at(static_cast<std::size_t>(e)); }
  std::string clock_name(EventId e) const { return "x_" + name(e); }

  std::optional<EventId> find(std::string_view event) const;
  /// Throws UnknownEvent.
  EventId at(std::string_view event) const;
  /// Resolves "x_<event>". Throws UnknownClock.
  EventId clock(std::string_view clock) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> events_;
};

bool is_identifier(std::string_view s);

}  // namespace leap
