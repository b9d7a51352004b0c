#include "posskc/degree.hpp"

#include <stdexcept>

#include "posskc/error.hpp"

namespace posskc {

Degree Degree::parse(std::string_view text) {
  const std::string shown(text);
  if (text.empty()) throw InputError("empty degree literal");

  std::size_t pos = 0;
  std::uint64_t integral = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    integral = integral * 10 + static_cast<std::uint64_t>(text[pos] - '0');
    if (integral > 1) throw InputError("degree '" + shown + "' outside [0,1]");
    ++pos;
  }
  if (pos == 0) throw InputError("malformed degree '" + shown + "'");

  std::uint64_t fraction = 0;
  int digits = 0;
  if (pos < text.size()) {
    if (text[pos] != '.') throw InputError("malformed degree '" + shown + "'");
    ++pos;
    if (pos == text.size()) throw InputError("malformed degree '" + shown + "'");
    for (; pos < text.size(); ++pos) {
      const char c = text[pos];
      if (c < '0' || c > '9') throw InputError("malformed degree '" + shown + "'");
      if (++digits > kFractionDigits)
        throw InputError("degree '" + shown + "' has more than 9 fraction digits");
      fraction = fraction * 10 + static_cast<std::uint64_t>(c - '0');
    }
  }
  for (int i = digits; i < kFractionDigits; ++i) fraction *= 10;

  const std::uint64_t scaled = integral * kScale + fraction;
  if (scaled > kScale) throw InputError("degree '" + shown + "' outside [0,1]");
  return from_scaled(static_cast<std::uint32_t>(scaled));
}

std::string Degree::str() const {
  if (scaled_ == 0) return "0";
  if (scaled_ == kScale) return "1";
  std::string digits = std::to_string(scaled_);
  digits.insert(0, static_cast<std::size_t>(kFractionDigits) - digits.size(), '0');
  while (digits.back() == '0') digits.pop_back();
  return "0." + digits;
}

Degree min_condition(Degree pi_joint, Degree pi_evidence) {
  if (pi_evidence < pi_joint)
    throw std::logic_error("min_condition: joint " + pi_joint.str() + " exceeds evidence " + pi_evidence.str());
  return pi_joint < pi_evidence ? pi_joint : Degree::one();
}

std::ostream& operator<<(std::ostream& os, Degree d) { return os << d.str(); }

}  // namespace posskc
