#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "entcost/spectrum.hpp"

namespace entcost {

/// Parsed state descriptor:
///   uniform:<d> | twolevel:<p> | embezzler:<n> | list:<p1>,<p2>,...
///   | file:<path> (JSON array of reals) | power:<inner>^<n>
/// where <inner> is any descriptor except another power.
struct StateDescriptor {
  enum class Kind { Uniform, TwoLevel, Embezzler, Explicit, Power };

  Kind kind = Kind::Uniform;
  std::uint64_t d = 0;
  double p = 0.0;
  std::vector<double> probs;
  /// Base of a power, stored as a one-element vector.
  std::vector<StateDescriptor> base;
  std::uint32_t power = 1;
  std::string text;

  /// Throws ParseError on malformed text and DomainError on out-of-range
  /// parameters. `file:` descriptors are read here.
  static StateDescriptor parse(const std::string& text);

  bool is_power() const noexcept { return kind == Kind::Power; }
  /// Dense spectrum of a non-power descriptor.
  Spectrum spectrum() const;
};

using ResolvedState = std::variant<Spectrum, GroupedSpectrum>;

/// Dense spectrum, or the grouped tensor power for power descriptors.
ResolvedState resolve(const StateDescriptor& desc);
GroupedSpectrum resolve_grouped(const StateDescriptor& desc);

}  // namespace entcost
