#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "carpet/carpet.hpp"
#include "carpet/numeric.hpp"

namespace carpet {

/// sigma = p/q with n^p = m^q, p and q coprime.
struct RationalExponent {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
};

struct SigmaProfile {
  double sigma = 0.0;                       // log m / log n
  std::int64_t inv_floor = 0;               // floor(1/sigma)
  double alpha = 0.0;                       // 1/sigma - floor(1/sigma)
  std::optional<RationalExponent> rational; // empty when sigma is irrational
  std::optional<Rational> alpha_exact;      // (q mod p)/p when rational

  bool is_rational() const noexcept { return rational.has_value(); }
};

SigmaProfile sigma_profile(std::uint32_t n, std::uint32_t m);
inline SigmaProfile sigma_profile(const DigitSet& c) { return sigma_profile(c.n(), c.m()); }

/// Prime factorization by trial division, ascending primes.
std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t x);

/// ell(k) = floor(k/sigma): the unique ell with m^ell <= n^k < m^(ell+1), decided in exact arithmetic.
std::int64_t ell(std::uint32_t n, std::uint32_t m, std::int64_t k);

struct LevelParams {
  std::int64_t k = 0;
  std::int64_t ell = 0;
  std::int64_t ell_prev = 0;  // ell(k-1), with ell(0) = 0
  int delta = 0;              // floor(k alpha) - floor((k-1) alpha)
  BigInt n_k;                 // N s^(floor(1/sigma) + delta_k - 1)
  Rational theta;             // 1 / (N^k s^(ell(k) - k))
};

LevelParams level_params(const DigitSet& c, std::int64_t k);

/// Walks k = 1, 2, ... keeping n^k and m^(ell+1) as running products, so each step costs
/// a couple of bignum-by-word multiplications instead of fresh powers.
class LevelSequence {
 public:
  explicit LevelSequence(const DigitSet& c);

  /// Parameters of the next level (the first call yields k = 1).
  LevelParams next();

  /// N^k s^(ell(k) - k) for the most recent level, i.e. 1/theta_k.
  const BigInt& theta_denominator() const noexcept { return theta_den_; }

 private:
  std::uint32_t n_;
  std::uint32_t m_;
  std::uint64_t big_n_;
  std::uint64_t s_;
  std::int64_t inv_floor_;
  std::int64_t k_ = 0;
  std::int64_t ell_ = 0;
  BigInt n_pow_k_ = 1;
  BigInt m_pow_next_;  // m^(ell+1)
  BigInt theta_den_ = 1;
};

/// ell(k) for k = 0..K inclusive.
std::vector<std::int64_t> ell_table(std::uint32_t n, std::uint32_t m, std::int64_t K);

/// theta_k = 1/(N^k s^(ell(k)-k)) for a profile; requires ell(k) from the caller.
Rational theta(std::uint64_t big_n, std::uint64_t s, std::int64_t k, std::int64_t ell_k);

/// Branch counts n_1..n_K of the homogeneous tree attached to the carpet.
std::vector<std::uint64_t> branch_counts(const DigitSet& c, std::int64_t K);

}  // namespace carpet
