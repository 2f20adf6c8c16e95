#include "carpet/carpet.hpp"

#include "carpet/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace carpet {

bool DigitSet::contains(std::uint32_t i, std::uint32_t j) const noexcept {
  return std::binary_search(digits_.begin(), digits_.end(), Digit{i, j});
}

DigitSet build_carpet(std::uint32_t n, std::uint32_t m, std::vector<Digit> digits) {
  if (!(2 <= m && m < n)) {
    throw Error(ErrorCode::BaseOrder,
                "need 2 <= m < n, got n=" + std::to_string(n) + " m=" + std::to_string(m));
  }
  for (const auto& d : digits) {
    if (d.i >= n || d.j >= m) {
      throw Error(ErrorCode::DigitRange, "digit (" + std::to_string(d.i) + "," + std::to_string(d.j) +
                                             ") outside the " + std::to_string(n) + "x" +
                                             std::to_string(m) + " grid");
    }
  }
  std::sort(digits.begin(), digits.end());
  if (auto dup = std::adjacent_find(digits.begin(), digits.end()); dup != digits.end()) {
    throw Error(ErrorCode::DuplicateDigit,
                "digit (" + std::to_string(dup->i) + "," + std::to_string(dup->j) + ") listed twice");
  }
  if (digits.size() <= 1) {
    throw Error(ErrorCode::TrivialCarpet, "need at least two digits, got " + std::to_string(digits.size()));
  }
  DigitSet c;
  c.n_ = n;
  c.m_ = m;
  c.digits_ = std::move(digits);
  return c;
}

FiberProfile fiber_profile(const DigitSet& c) {
  FiberProfile f;
  f.a.assign(c.m(), 0);
  f.columns_by_row.assign(c.m(), {});
  for (const auto& d : c.digits()) {
    ++f.a[d.j];
    f.columns_by_row[d.j].push_back(d.i);
  }
  for (std::uint32_t j = 0; j < c.m(); ++j) {
    std::sort(f.columns_by_row[j].begin(), f.columns_by_row[j].end());
    if (f.a[j] > 0) f.rows.push_back(j);
  }
  f.s = f.rows.size();
  return f;
}

bool is_doubling(const std::vector<std::uint64_t>& a) {
  const std::size_t m = a.size();
  if (m == 0) return false;
  if (a.front() * a.back() == 0) return true;
  if (a.front() == a.back()) return true;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    if (a[j] * a[j + 1] != 0) return false;
  }
  return true;
}

bool has_uniform_fibers(const std::vector<std::uint64_t>& a) {
  std::uint64_t value = 0;
  for (auto x : a) {
    if (x == 0) continue;
    if (value == 0) value = x;
    if (x != value) return false;
  }
  return true;
}

ClassLabel classify(const DigitSet& c) {
  const auto f = fiber_profile(c);
  ClassLabel label;
  label.vacant = f.s < c.m();
  label.doubling = is_doubling(f.a);
  label.regular = has_uniform_fibers(f.a);

  if (label.vacant) {
    bool all_short = std::all_of(f.a.begin(), f.a.end(), [&](auto x) { return x < c.n(); });
    label.totally_disconnected = all_short ? Tristate::Yes : Tristate::No;
  } else {
    // The row-length criterion only applies when some row is vacant.
    label.totally_disconnected = Tristate::Undecided;
  }

  if (label.totally_disconnected == Tristate::No) {
    label.subclass = Subclass::NotTotallyDisconnected;
  } else if (label.vacant) {
    label.subclass = label.regular ? Subclass::TVR : label.doubling ? Subclass::TVDNotR : Subclass::TVNotD;
  } else {
    label.subclass = label.regular ? Subclass::TNotVR : label.doubling ? Subclass::TNotVDNotR : Subclass::TNotVNotD;
  }
  return label;
}

std::string_view to_string(Subclass s) {
  switch (s) {
    case Subclass::TVR: return "t.v.r";
    case Subclass::TVDNotR: return "t.v.d.not-r";
    case Subclass::TVNotD: return "t.v.not-d";
    case Subclass::TNotVR: return "t.not-v.r";
    case Subclass::TNotVDNotR: return "t.not-v.d.not-r";
    case Subclass::TNotVNotD: return "t.not-v.not-d";
    case Subclass::NotTotallyDisconnected: return "not-totally-disconnected";
  }
  return "unknown";
}

std::string_view to_string(Tristate t) {
  switch (t) {
    case Tristate::No: return "no";
    case Tristate::Yes: return "yes";
    case Tristate::Undecided: return "undecided";
  }
  return "unknown";
}

Dimensions dimensions(const DigitSet& c) {
  const auto f = fiber_profile(c);
  const double sigma = std::log(static_cast<double>(c.m())) / std::log(static_cast<double>(c.n()));
  double sum = 0.0;
  for (auto x : f.a) {
    if (x > 0) sum += std::pow(static_cast<double>(x), sigma);
  }
  const double log_m = std::log(static_cast<double>(c.m()));
  const double log_n = std::log(static_cast<double>(c.n()));
  Dimensions d;
  d.hausdorff = std::log(sum) / log_m;
  d.box = std::log(static_cast<double>(f.s)) / log_m +
          std::log(static_cast<double>(c.size()) / static_cast<double>(f.s)) / log_n;
  return d;
}

}  // namespace carpet
