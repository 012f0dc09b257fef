#pragma once

#include <string>
#include <string_view>

namespace svcrisk::cvss {

enum class AccessVector { Local, Adjacent, Network };
enum class AccessComplexity { High, Medium, Low };
enum class Authentication { Multiple, Single, None };
enum class ImpactLevel { None, Partial, Complete };

// CVSS v2 base metric group. Temporal and environmental metrics are not modelled.
struct CvssV2Base {
  AccessVector access_vector = AccessVector::Network;
  AccessComplexity access_complexity = AccessComplexity::Low;
  Authentication authentication = Authentication::None;
  ImpactLevel confidentiality = ImpactLevel::None;
  ImpactLevel integrity = ImpactLevel::None;
  ImpactLevel availability = ImpactLevel::None;

  friend bool operator==(const CvssV2Base&, const CvssV2Base&) = default;
};

double weight(AccessVector v);
double weight(AccessComplexity v);
double weight(Authentication v);
double weight(ImpactLevel v);

/// Exploitability subscore divided by 10, i.e. a probability in [0, 1].
double exploitability(const CvssV2Base& base);

/// Impact subscore, 10.41 * (1 - (1-C)(1-I)(1-A)); range [0, 10.00085].
double impact(const CvssV2Base& base);

/// Parses "AV:N/AC:L/Au:N/C:C/I:C/A:C" (optionally parenthesised). Throws ParseError.
CvssV2Base parse_vector(std::string_view text);

std::string to_string(const CvssV2Base& base);

}  // namespace svcrisk::cvss
