#include "carpet/sigma.hpp"

#include "carpet/error.hpp"

#include <cmath>
#include <numeric>

namespace carpet {

std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t x) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  for (std::uint64_t p = 2; p * p <= x; ++p) {
    std::uint32_t e = 0;
    while (x % p == 0) {
      x /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (x > 1) out.emplace_back(x, 1);
  return out;
}

namespace {

std::optional<RationalExponent> common_base_exponents(std::uint32_t n, std::uint32_t m) {
  const auto fn = factorize(n);
  const auto fm = factorize(m);
  if (fn.size() != fm.size()) return std::nullopt;
  for (std::size_t i = 0; i < fn.size(); ++i) {
    if (fn[i].first != fm[i].first) return std::nullopt;
  }
  // p * e_n = q * e_m componentwise
  const std::uint64_t a = fn[0].second;
  const std::uint64_t b = fm[0].second;
  const std::uint64_t g = std::gcd(a, b);
  const std::uint64_t p = b / g;
  const std::uint64_t q = a / g;
  for (std::size_t i = 0; i < fn.size(); ++i) {
    if (p * fn[i].second != q * fm[i].second) return std::nullopt;
  }
  if (ipow(n, p) != ipow(m, q)) return std::nullopt;
  return RationalExponent{p, q};
}

}  // namespace

std::int64_t ell(std::uint32_t n, std::uint32_t m, std::int64_t k) {
  if (k <= 0) return 0;
  const BigInt nk = ipow(n, static_cast<std::uint64_t>(k));
  const long double estimate =
      static_cast<long double>(k) * std::log(static_cast<long double>(n)) / std::log(static_cast<long double>(m));
  std::int64_t e = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(estimate)) - 1);
  BigInt mp = ipow(m, static_cast<std::uint64_t>(e));
  while (mp > nk) {
    mp /= m;
    --e;
  }
  while (mp * m <= nk) {
    mp *= m;
    ++e;
  }
  return e;
}

std::vector<std::int64_t> ell_table(std::uint32_t n, std::uint32_t m, std::int64_t K) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(K) + 1, 0);
  BigInt nk = 1;
  BigInt m_next = m;
  std::int64_t e = 0;
  for (std::int64_t k = 1; k <= K; ++k) {
    nk *= n;
    while (m_next <= nk) {
      m_next *= m;
      ++e;
    }
    out[static_cast<std::size_t>(k)] = e;
  }
  return out;
}

SigmaProfile sigma_profile(std::uint32_t n, std::uint32_t m) {
  SigmaProfile sp;
  sp.sigma = std::log(static_cast<double>(m)) / std::log(static_cast<double>(n));
  sp.inv_floor = ell(n, m, 1);
  sp.rational = common_base_exponents(n, m);
  if (sp.rational) {
    const auto [p, q] = *sp.rational;
    sp.alpha_exact = Rational(static_cast<long long>(q % p), static_cast<long long>(p));
    sp.alpha = to_double(*sp.alpha_exact);
  } else {
    sp.alpha = std::log(static_cast<double>(n)) / std::log(static_cast<double>(m)) - static_cast<double>(sp.inv_floor);
  }
  return sp;
}

Rational theta(std::uint64_t big_n, std::uint64_t s, std::int64_t k, std::int64_t ell_k) {
  BigInt den = ipow(big_n, static_cast<std::uint64_t>(k)) * ipow(s, static_cast<std::uint64_t>(ell_k - k));
  return Rational(BigInt(1), den);
}

LevelParams level_params(const DigitSet& c, std::int64_t k) {
  if (k < 1) throw Error(ErrorCode::MalformedInput, "level_params needs k >= 1");
  const auto f = fiber_profile(c);
  const std::int64_t inv_floor = ell(c.n(), c.m(), 1);
  LevelParams lp;
  lp.k = k;
  lp.ell = ell(c.n(), c.m(), k);
  lp.ell_prev = ell(c.n(), c.m(), k - 1);
  // floor(j alpha) = ell(j) - j floor(1/sigma), exactly
  const std::int64_t floor_k_alpha = lp.ell - k * inv_floor;
  const std::int64_t floor_prev_alpha = lp.ell_prev - (k - 1) * inv_floor;
  lp.delta = static_cast<int>(floor_k_alpha - floor_prev_alpha);
  lp.n_k = BigInt(c.size()) * ipow(f.s, static_cast<std::uint64_t>(inv_floor + lp.delta - 1));
  lp.theta = theta(c.size(), f.s, k, lp.ell);
  return lp;
}

LevelSequence::LevelSequence(const DigitSet& c)
    : n_(c.n()),
      m_(c.m()),
      big_n_(c.size()),
      s_(fiber_profile(c).s),
      inv_floor_(ell(c.n(), c.m(), 1)),
      m_pow_next_(c.m()) {}

LevelParams LevelSequence::next() {
  LevelParams lp;
  lp.ell_prev = ell_;
  ++k_;
  n_pow_k_ *= n_;
  while (m_pow_next_ <= n_pow_k_) {
    m_pow_next_ *= m_;
    ++ell_;
  }
  lp.k = k_;
  lp.ell = ell_;
  lp.delta = static_cast<int>((lp.ell - k_ * inv_floor_) - (lp.ell_prev - (k_ - 1) * inv_floor_));
  lp.n_k = BigInt(big_n_) * ipow(s_, static_cast<std::uint64_t>(inv_floor_ + lp.delta - 1));
  // closed form N^k s^(ell-k), advanced one factor of N and s^(ell-ell_prev-1) at a time
  theta_den_ *= big_n_;
  theta_den_ *= ipow(s_, static_cast<std::uint64_t>(lp.ell - lp.ell_prev - 1));
  lp.theta = Rational(BigInt(1), theta_den_);
  return lp;
}

std::vector<std::uint64_t> branch_counts(const DigitSet& c, std::int64_t K) {
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(K, 0)));
  LevelSequence seq(c);
  for (std::int64_t k = 1; k <= K; ++k) {
    const auto lp = seq.next();
    if (lp.n_k > BigInt(std::numeric_limits<std::int64_t>::max())) {
      throw Error(ErrorCode::DepthBudgetExceeded, "branch count at level " + std::to_string(k) + " overflows 63 bits");
    }
    out.push_back(lp.n_k.convert_to<std::uint64_t>());
  }
  return out;
}

}  // namespace carpet
