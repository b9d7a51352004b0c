#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace posskc {

// A possibility or necessity value in [0,1], stored exactly as a count of
// billionths. Only comparison, min, max and 1 - d are ever needed in the
// min-based setting, and all of them are closed over this representation.
class Degree {
public:
  static constexpr std::uint32_t kScale = 1'000'000'000;
  static constexpr int kFractionDigits = 9;

  constexpr Degree() = default;

  static constexpr Degree zero() { return Degree{}; }
  static constexpr Degree one() { return from_scaled(kScale); }

  // Throws std::out_of_range when scaled > kScale.
  static constexpr Degree from_scaled(std::uint32_t scaled) {
    if (scaled > kScale) throw std::out_of_range("degree above 1");
    Degree d;
    d.scaled_ = scaled;
    return d;
  }

  // Accepts `0`, `1`, or a decimal with 1..9 fraction digits in [0,1].
  // Throws InputError otherwise.
  static Degree parse(std::string_view text);

  constexpr std::uint32_t scaled() const { return scaled_; }
  constexpr bool is_zero() const { return scaled_ == 0; }
  constexpr bool is_one() const { return scaled_ == kScale; }

  // Canonical decimal: "0", "1", or "0.xyz" without trailing zeros.
  std::string str() const;

  double to_double() const { return static_cast<double>(scaled_) / kScale; }

  friend constexpr auto operator<=>(Degree, Degree) = default;

private:
  std::uint32_t scaled_ = 0;
};

inline Degree parse_degree(std::string_view text) { return Degree::parse(text); }

constexpr Degree min(Degree a, Degree b) { return b < a ? b : a; }
constexpr Degree max(Degree a, Degree b) { return a < b ? b : a; }

// 1 - d.
constexpr Degree complement(Degree d) { return Degree::from_scaled(Degree::kScale - d.scaled()); }

// Min-based (qualitative) conditioning: pi_joint if strictly below
// pi_evidence, 1 otherwise. Requires pi_joint <= pi_evidence; a violation
// means the two values did not come from one distribution and throws
// std::logic_error.
Degree min_condition(Degree pi_joint, Degree pi_evidence);

std::ostream& operator<<(std::ostream& os, Degree d);

}  // namespace posskc

template <>
struct std::hash<posskc::Degree> {
  std::size_t operator()(posskc::Degree d) const noexcept { return std::hash<std::uint32_t>{}(d.scaled()); }
};
