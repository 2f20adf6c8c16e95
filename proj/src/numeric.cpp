#include "carpet/numeric.hpp"

#include "carpet/error.hpp"

#include <cmath>

namespace carpet {

BigInt ipow(std::uint64_t base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1U) result *= b;
    exp >>= 1U;
    if (exp > 0) b *= b;
  }
  return result;
}

std::string to_fraction_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_fraction_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::MalformedInput, "zero denominator in '" + s + "'");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e) != nullptr) throw;
    throw Error(ErrorCode::MalformedInput, "not a fraction: '" + s + "'");
  }
}

std::string to_decimal_string(const Rational& r, unsigned fraction_digits) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  bool negative = num < 0;
  if (negative) num = -num;
  BigInt whole = num / den;
  BigInt rest = num % den;
  std::string out = negative ? "-" : "";
  out += whole.str();
  if (fraction_digits == 0 || rest == 0) return out;
  BigInt scaled = rest * ipow(10, fraction_digits) / den;
  std::string frac = scaled.str();
  frac.insert(0, fraction_digits - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (!frac.empty()) out += "." + frac;
  return out;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BaseOrder: return "BaseOrder";
    case ErrorCode::DigitRange: return "DigitRange";
    case ErrorCode::DuplicateDigit: return "DuplicateDigit";
    case ErrorCode::TrivialCarpet: return "TrivialCarpet";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::NotUniform: return "NotUniform";
    case ErrorCode::NotInHypothesis: return "NotInHypothesis";
    case ErrorCode::DepthBudgetExceeded: return "DepthBudgetExceeded";
    case ErrorCode::IndistinguishableAtDepth: return "IndistinguishableAtDepth";
    case ErrorCode::ZeroGap: return "ZeroGap";
    case ErrorCode::DepthNotMultiple: return "DepthNotMultiple";
    case ErrorCode::NoSuchP: return "NoSuchP";
    case ErrorCode::InfeasibleSplit: return "InfeasibleSplit";
    case ErrorCode::InfeasiblePartition: return "InfeasiblePartition";
    case ErrorCode::L0Exceeded: return "L0Exceeded";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::OutsideClass: return "OutsideClass";
  }
  return "Unknown";
}

}  // namespace carpet
