#include "entcost/state_descriptor.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "entcost/errors.hpp"
#include "entcost/tensor_power.hpp"

namespace entcost {

namespace {

double parse_real(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("invalid " + what + " '" + s + "'");
  }
  return v;
}

std::uint64_t parse_count(const std::string& s, const std::string& what) {
  std::uint64_t v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("invalid " + what + " '" + s + "'");
  }
  return v;
}

std::vector<double> read_json_array(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open state file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("state file '" + path + "': " + e.what());
  }
  if (!j.is_array()) throw ParseError("state file '" + path + "' must hold a JSON array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw ParseError("state file '" + path + "' has a non-numeric entry");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

StateDescriptor StateDescriptor::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ParseError("state descriptor '" + text + "' lacks a ':' (e.g. uniform:4)");
  }
  const std::string head = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);

  StateDescriptor s;
  s.text = text;
  if (head == "uniform") {
    s.kind = Kind::Uniform;
    s.d = parse_count(body, "dimension");
    if (s.d == 0) throw DomainError("uniform:<d> needs d >= 1");
  } else if (head == "twolevel") {
    s.kind = Kind::TwoLevel;
    s.p = parse_real(body, "probability");
    if (!(s.p > 0.0 && s.p < 1.0)) throw DomainError("twolevel:<p> needs 0 < p < 1");
  } else if (head == "embezzler") {
    s.kind = Kind::Embezzler;
    s.d = parse_count(body, "size");
    if (s.d == 0) throw DomainError("embezzler:<n> needs n >= 1");
  } else if (head == "list") {
    s.kind = Kind::Explicit;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) s.probs.push_back(parse_real(item, "list entry"));
    if (s.probs.empty() || body.back() == ',') throw ParseError("list:<p1>,<p2>,... is malformed");
  } else if (head == "file") {
    s.kind = Kind::Explicit;
    s.probs = read_json_array(body);
  } else if (head == "power") {
    s.kind = Kind::Power;
    const auto caret = body.rfind('^');
    if (caret == std::string::npos) throw ParseError("power:<inner>^<n> lacks '^'");
    StateDescriptor inner = parse(body.substr(0, caret));
    if (inner.is_power()) throw ParseError("nested power descriptors are not supported");
    const std::uint64_t n = parse_count(body.substr(caret + 1), "exponent");
    if (n == 0 || n > UINT32_MAX) throw DomainError("power exponent must be in [1, 2^32)");
    s.power = static_cast<std::uint32_t>(n);
    s.base.push_back(std::move(inner));
  } else {
    throw ParseError("unknown state kind '" + head + "'");
  }
  if (s.kind == Kind::Explicit) {
    // Validate now so that errors surface at parse time.
    (void)Spectrum::from_probs(s.probs);
  }
  return s;
}

Spectrum StateDescriptor::spectrum() const {
  switch (kind) {
    case Kind::Uniform:
      return uniform_spectrum(d);
    case Kind::TwoLevel:
      return two_level_spectrum(p);
    case Kind::Embezzler:
      return embezzler_spectrum(d);
    case Kind::Explicit:
      return Spectrum::from_probs(probs);
    case Kind::Power:
      break;
  }
  throw DomainError("power descriptor '" + text + "' has no dense spectrum; resolve it grouped");
}

namespace {

// One level of d equal eigenvalues; needs no dense storage.
GroupedSpectrum flat_grouped(std::uint64_t d) {
  const double ld = std::log2(static_cast<double>(d));
  return GroupedSpectrum::from_groups({Group{-ld, 1.0 / static_cast<double>(d), ld, d, 1.0}});
}

}  // namespace

ResolvedState resolve(const StateDescriptor& desc) {
  if (desc.is_power()) return power_grouped_spectrum(desc.base.front().spectrum(), desc.power);
  if (desc.kind == StateDescriptor::Kind::Uniform && desc.d > kDenseProductLimit) {
    return flat_grouped(desc.d);
  }
  return desc.spectrum();
}

GroupedSpectrum resolve_grouped(const StateDescriptor& desc) {
  if (desc.is_power()) return power_grouped_spectrum(desc.base.front().spectrum(), desc.power);
  if (desc.kind == StateDescriptor::Kind::Uniform) return flat_grouped(desc.d);
  return group(desc.spectrum());
}

}  // namespace entcost
