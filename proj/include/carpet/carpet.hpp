#pragma once

#include <compare>
#include <cstdint>
#include <string_view>
#include <vector>

namespace carpet {

/// A digit (i, j): column i in [0, n), row j in [0, m).
struct Digit {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  auto operator<=>(const Digit&) const = default;
};

/// Validated digit set of a Bedford-McMullen carpet with contraction diag(1/n, 1/m).
/// Digits are kept sorted by (i, j); the object is immutable after construction.
class DigitSet {
 public:
  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t m() const noexcept { return m_; }
  std::size_t size() const noexcept { return digits_.size(); }
  const std::vector<Digit>& digits() const noexcept { return digits_; }
  bool contains(std::uint32_t i, std::uint32_t j) const noexcept;

  friend DigitSet build_carpet(std::uint32_t n, std::uint32_t m, std::vector<Digit> digits);
  friend bool operator==(const DigitSet&, const DigitSet&) = default;

 private:
  DigitSet() = default;
  std::uint32_t n_ = 0;
  std::uint32_t m_ = 0;
  std::vector<Digit> digits_;
};

/// Throws Error{BaseOrder, DigitRange, DuplicateDigit, TrivialCarpet}.
DigitSet build_carpet(std::uint32_t n, std::uint32_t m, std::vector<Digit> digits);

struct FiberProfile {
  std::vector<std::uint64_t> a;                        // distribution sequence, size m
  std::uint64_t s = 0;                                 // non-vacant rows
  std::vector<std::uint32_t> rows;                     // non-vacant row indices, ascending
  std::vector<std::vector<std::uint32_t>> columns_by_row;  // D_j for every j, ascending
};

FiberProfile fiber_profile(const DigitSet& c);

enum class Tristate { No, Yes, Undecided };

enum class Subclass {
  TVR,          // totally disconnected, vacant rows, uniform fibers
  TVDNotR,
  TVNotD,
  TNotVR,
  TNotVDNotR,
  TNotVNotD,
  NotTotallyDisconnected,
};

std::string_view to_string(Subclass s);
std::string_view to_string(Tristate t);

struct ClassLabel {
  Tristate totally_disconnected = Tristate::Undecided;
  bool vacant = false;
  bool doubling = false;
  bool regular = false;
  Subclass subclass = Subclass::NotTotallyDisconnected;

  bool in_tvr() const noexcept { return subclass == Subclass::TVR; }
};

ClassLabel classify(const DigitSet& c);

/// Doubling criterion for the uniform Bernoulli measure on the distribution sequence.
bool is_doubling(const std::vector<std::uint64_t>& a);
bool has_uniform_fibers(const std::vector<std::uint64_t>& a);

struct Dimensions {
  double hausdorff = 0.0;
  double box = 0.0;
};

Dimensions dimensions(const DigitSet& c);

}  // namespace carpet
