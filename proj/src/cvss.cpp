#include "svcrisk/cvss.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "svcrisk/error.hpp"

namespace svcrisk::cvss {

double weight(AccessVector v) {
  switch (v) {
    case AccessVector::Local: return 0.395;
    case AccessVector::Adjacent: return 0.646;
    case AccessVector::Network: return 1.0;
  }
  return 0.0;
}

double weight(AccessComplexity v) {
  switch (v) {
    case AccessComplexity::High: return 0.35;
    case AccessComplexity::Medium: return 0.61;
    case AccessComplexity::Low: return 0.71;
  }
  return 0.0;
}

double weight(Authentication v) {
  switch (v) {
    case Authentication::Multiple: return 0.45;
    case Authentication::Single: return 0.56;
    case Authentication::None: return 0.704;
  }
  return 0.0;
}

double weight(ImpactLevel v) {
  switch (v) {
    case ImpactLevel::None: return 0.0;
    case ImpactLevel::Partial: return 0.275;
    case ImpactLevel::Complete: return 0.660;
  }
  return 0.0;
}

double exploitability(const CvssV2Base& base) {
  const double score = 20.0 * weight(base.access_vector) * weight(base.access_complexity) *
                       weight(base.authentication);
  return std::clamp(score / 10.0, 0.0, 1.0);
}

double impact(const CvssV2Base& base) {
  return 10.41 * (1.0 - (1.0 - weight(base.confidentiality)) * (1.0 - weight(base.integrity)) *
                            (1.0 - weight(base.availability)));
}

namespace {

[[noreturn]] void fail(std::string_view text, const std::string& why) {
  throw ParseError("invalid CVSS v2 vector '" + std::string(text) + "': " + why, 1, 1);
}

std::optional<ImpactLevel> impact_level(std::string_view v) {
  if (v == "N") return ImpactLevel::None;
  if (v == "P") return ImpactLevel::Partial;
  if (v == "C") return ImpactLevel::Complete;
  return std::nullopt;
}

}  // namespace

CvssV2Base parse_vector(std::string_view text) {
  std::string_view body = text;
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') {
    body = body.substr(1, body.size() - 2);
  }

  CvssV2Base base;
  std::array<bool, 6> seen{};
  while (!body.empty()) {
    const auto slash = body.find('/');
    const std::string_view part = body.substr(0, slash);
    body = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);

    const auto colon = part.find(':');
    if (colon == std::string_view::npos) fail(text, "component without ':'");
    const std::string_view key = part.substr(0, colon);
    const std::string_view val = part.substr(colon + 1);

    auto mark = [&](std::size_t slot) {
      if (seen[slot]) fail(text, "duplicate component " + std::string(key));
      seen[slot] = true;
    };

    if (key == "AV") {
      mark(0);
      if (val == "L") base.access_vector = AccessVector::Local;
      else if (val == "A") base.access_vector = AccessVector::Adjacent;
      else if (val == "N") base.access_vector = AccessVector::Network;
      else fail(text, "bad AV value");
    } else if (key == "AC") {
      mark(1);
      if (val == "H") base.access_complexity = AccessComplexity::High;
      else if (val == "M") base.access_complexity = AccessComplexity::Medium;
      else if (val == "L") base.access_complexity = AccessComplexity::Low;
      else fail(text, "bad AC value");
    } else if (key == "Au") {
      mark(2);
      if (val == "M") base.authentication = Authentication::Multiple;
      else if (val == "S") base.authentication = Authentication::Single;
      else if (val == "N") base.authentication = Authentication::None;
      else fail(text, "bad Au value");
    } else if (key == "C" || key == "I" || key == "A") {
      const std::size_t slot = key == "C" ? 3 : key == "I" ? 4 : 5;
      mark(slot);
      const auto level = impact_level(val);
      if (!level) fail(text, "bad " + std::string(key) + " value");
      (slot == 3 ? base.confidentiality : slot == 4 ? base.integrity : base.availability) = *level;
    } else {
      fail(text, "unknown component " + std::string(key));
    }
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
    fail(text, "missing base components");
  }
  return base;
}

std::string to_string(const CvssV2Base& base) {
  auto lvl = [](ImpactLevel l) {
    switch (l) {
      case ImpactLevel::None: return "N";
      case ImpactLevel::Partial: return "P";
      case ImpactLevel::Complete: return "C";
    }
    return "N";
  };
  std::string out = "AV:";
  out += base.access_vector == AccessVector::Local      ? "L"
         : base.access_vector == AccessVector::Adjacent ? "A"
                                                        : "N";
  out += "/AC:";
  out += base.access_complexity == AccessComplexity::High     ? "H"
         : base.access_complexity == AccessComplexity::Medium ? "M"
                                                              : "L";
  out += "/Au:";
  out += base.authentication == Authentication::Multiple ? "M"
         : base.authentication == Authentication::Single ? "S"
                                                         : "N";
  out += "/C:";
  out += lvl(base.confidentiality);
  out += "/I:";
  out += lvl(base.integrity);
  out += "/A:";
  out += lvl(base.availability);
  return out;
}

}  // namespace svcrisk::cvss
