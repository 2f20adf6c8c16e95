#include "carpet/equivalence.hpp"

#include "carpet/error.hpp"
#include "carpet/sigma.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace carpet {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Equivalent: return "equivalent";
    case Verdict::NotEquivalent: return "not-equivalent";
    case Verdict::OutsideClass: return "outside-class";
  }
  return "unknown";
}

std::string_view to_string(VerdictReason r) {
  switch (r) {
    case VerdictReason::RationalDimension: return "rational-dimension";
    case VerdictReason::IrrationalPermutation: return "irrational-permutation";
    case VerdictReason::ClassMembership: return "class-membership";
  }
  return "unknown";
}

std::optional<BigInt> n_star(const DigitSet& c) {
  const auto sp = sigma_profile(c);
  if (!sp.rational) return std::nullopt;
  const auto [p, q] = *sp.rational;
  return ipow(c.size(), p) * ipow(fiber_profile(c).s, q - p);
}

EquivalenceVerdict decide_equivalence(const DigitSet& first, const DigitSet& second) {
  EquivalenceVerdict v;
  if (first.n() != second.n() || first.m() != second.m()) {
    v.detail = "the carpets use different bases";
    return v;
  }
  const bool in_first = classify(first).in_tvr();
  const bool in_second = classify(second).in_tvr();
  if (!in_first || !in_second) {
    v.detail = std::string(in_first ? "second" : "first") + " carpet is not totally disconnected with vacant rows and uniform fibers";
    return v;
  }
  if (auto a = n_star(first)) {
    v.reason = VerdictReason::RationalDimension;
    v.n_star_first = *a;
    v.n_star_second = *n_star(second);
    v.verdict = *v.n_star_first == *v.n_star_second ? Verdict::Equivalent : Verdict::NotEquivalent;
    v.detail = "N* " + v.n_star_first->str() + " vs " + v.n_star_second->str();
    return v;
  }
  v.reason = VerdictReason::IrrationalPermutation;
  v.profile_first = fiber_profile(first).a;
  v.profile_second = fiber_profile(second).a;
  std::sort(v.profile_first.begin(), v.profile_first.end());
  std::sort(v.profile_second.begin(), v.profile_second.end());
  v.verdict = v.profile_first == v.profile_second ? Verdict::Equivalent : Verdict::NotEquivalent;
  v.detail = v.verdict == Verdict::Equivalent ? "distribution sequences are permutations of each other"
                                              : "distribution sequences differ as multisets";
  return v;
}

std::int64_t choose_p(const DigitSet& c, std::uint64_t L0) {
  const BigInt cube = BigInt(L0) * L0 * L0;
  BigInt power = 1;  // N^(p-1)
  for (std::int64_t p = 2; p <= 10'001; ++p) {
    power *= c.size();
    if (power >= cube && ell(c.n(), c.m(), p - 1) > p - 1) return p;
  }
  throw Error(ErrorCode::NoSuchP, "no p up to 10001 satisfies the growth conditions");
}

CoinSplit coin_split(const ComponentTree& tree, std::int64_t k, std::uint32_t component) {
  const auto& c = tree.carpet();
  if (ell(c.n(), c.m(), k) <= k) {
    throw Error(ErrorCode::NotInHypothesis, "the split needs ell(k) > k, which fails at k=" + std::to_string(k));
  }
  if (k + 1 > tree.depth()) throw Error(ErrorCode::DepthBudgetExceeded, "tree is too shallow for a split at rank " + std::to_string(k));
  const auto kids = tree.children(k, component);
  const auto lp = level_params(c, k + 1);
  if (lp.n_k > BigInt(100'000'000)) throw Error(ErrorCode::DepthBudgetExceeded, "split target " + lp.n_k.str() + " is too large");
  const auto target = lp.n_k.convert_to<std::size_t>();

  const auto& next = tree.level(k + 1);
  std::vector<std::size_t> parts;
  for (auto id : kids) parts.push_back(next.member_count(id));

  // reach[i][t]: some subset of the first i parts sums to t
  std::vector<std::vector<char>> reach(parts.size() + 1, std::vector<char>(target + 1, 0));
  reach[0][0] = 1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t t = 0; t <= target; ++t) {
      reach[i + 1][t] = reach[i][t] || (t >= parts[i] && reach[i][t - parts[i]]);
    }
  }
  CoinSplit out;
  out.rank = k;
  out.component = component;
  if (!reach[parts.size()][target]) {
    throw Error(ErrorCode::InfeasibleSplit, "no offspring components of rank-" + std::to_string(k) + " component " +
                                                std::to_string(component) + " add up to " + std::to_string(target));
  }
  // walking back, skip an item whenever the earlier ones already reach the remainder
  std::size_t t = target;
  for (std::size_t i = parts.size(); i-- > 0;) {
    if (reach[i][t]) continue;
    out.selected.push_back(kids[i]);
    t -= parts[i];
  }
  std::reverse(out.selected.begin(), out.selected.end());
  out.selected_measure = 0;
  for (auto id : out.selected) out.selected_measure += next.measure(id);
  if (out.selected_measure != tree.level(k).measure(component) / Rational(tree.level(k).member_count(component))) {
    throw Error(ErrorCode::InfeasibleSplit, "selected measure " + to_fraction_string(out.selected_measure) + " is not theta_k");
  }
  return out;
}

namespace {

std::optional<std::vector<std::uint32_t>> first_fit_decreasing(const std::vector<std::uint64_t>& values, std::uint64_t bins,
                                                               std::uint64_t target) {
  std::vector<std::uint32_t> order(values.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] > values[b]; });
  std::vector<std::uint64_t> room(bins, target);
  std::vector<std::uint32_t> group(values.size());
  for (auto i : order) {
    auto it = std::find_if(room.begin(), room.end(), [&](auto r) { return r >= values[i]; });
    if (it == room.end()) return std::nullopt;
    *it -= values[i];
    group[i] = static_cast<std::uint32_t>(it - room.begin());
  }
  return group;
}

/// Exact search over how many items of each distinct value go into each bin.
class MultisetPacker {
 public:
  MultisetPacker(std::vector<std::uint64_t> distinct, std::uint64_t target) : value_(std::move(distinct)), target_(target) {}

  bool solve(std::vector<std::uint64_t>& counts, std::uint64_t bins, std::vector<std::vector<std::uint64_t>>& plan) {
    if (bins == 0) return std::all_of(counts.begin(), counts.end(), [](auto c) { return c == 0; });
    if (dead_.contains(counts)) return false;
    std::vector<std::uint64_t> take(counts.size(), 0);
    if (fill(counts, take, 0, target_, bins, plan)) return true;
    dead_.insert(counts);
    return false;
  }

 private:
  bool fill(std::vector<std::uint64_t>& counts, std::vector<std::uint64_t>& take, std::size_t i, std::uint64_t left,
            std::uint64_t bins, std::vector<std::vector<std::uint64_t>>& plan) {
    if (left == 0) {
      plan.push_back(take);
      if (solve(counts, bins - 1, plan)) return true;
      plan.pop_back();
      return false;
    }
    if (i == value_.size()) return false;
    const std::uint64_t most = std::min(counts[i], left / value_[i]);
    for (std::uint64_t x = most + 1; x-- > 0;) {
      take[i] = x;
      counts[i] -= x;
      const bool ok = fill(counts, take, i + 1, left - x * value_[i], bins, plan);
      counts[i] += x;
      if (ok) return true;
    }
    take[i] = 0;
    return false;
  }

  std::vector<std::uint64_t> value_;
  std::uint64_t target_;
  std::set<std::vector<std::uint64_t>> dead_;
};

}  // namespace

std::optional<std::vector<std::uint32_t>> equal_bins(const std::vector<std::uint64_t>& values, std::uint64_t bins,
                                                     std::uint64_t target) {
  BigInt total = 0;
  for (auto v : values) total += v;
  if (total != BigInt(bins) * target) return std::nullopt;
  if (std::any_of(values.begin(), values.end(), [&](auto v) { return v == 0 || v > target; })) return std::nullopt;
  if (auto greedy = first_fit_decreasing(values, bins, target)) return greedy;

  std::map<std::uint64_t, std::vector<std::uint32_t>, std::greater<>> by_value;
  for (std::uint32_t i = 0; i < values.size(); ++i) by_value[values[i]].push_back(i);
  std::vector<std::uint64_t> distinct, counts;
  for (const auto& [v, items] : by_value) {
    distinct.push_back(v);
    counts.push_back(items.size());
  }
  MultisetPacker packer(distinct, target);
  std::vector<std::vector<std::uint64_t>> plan;
  if (!packer.solve(counts, bins, plan)) return std::nullopt;

  std::vector<std::uint32_t> group(values.size());
  std::vector<std::size_t> cursor(distinct.size(), 0);
  for (std::uint32_t b = 0; b < plan.size(); ++b) {
    std::size_t d = 0;
    for (const auto& [v, items] : by_value) {
      for (std::uint64_t x = 0; x < plan[b][d]; ++x) group[items[cursor[d]++]] = b;
      ++d;
    }
  }
  return group;
}

BundlePartition partition_offsprings(const ComponentTree& tree, std::int64_t level, std::uint32_t component, std::int64_t p) {
  if (level + p > tree.depth()) {
    throw Error(ErrorCode::DepthBudgetExceeded, "tree depth " + std::to_string(tree.depth()) + " is below level " + std::to_string(level + p));
  }
  std::vector<std::uint32_t> frontier{component};
  for (std::int64_t k = level; k < level + p; ++k) {
    std::vector<std::uint32_t> next;
    for (auto v : frontier) {
      const auto kids = tree.children(k, v);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    frontier = std::move(next);
  }
  std::sort(frontier.begin(), frontier.end());

  const auto& up = tree.level(level);
  const auto& down = tree.level(level + p);
  BundlePartition out;
  out.level = level;
  out.component = component;
  out.g = up.member_count(component);

  const Rational unit_up = up.measure(component) / Rational(out.g);
  Rational unit_down = 0;
  std::vector<std::uint64_t> values;
  for (auto id : frontier) {
    values.push_back(down.member_count(id));
    if (unit_down == 0) unit_down = down.measure(id) / Rational(values.back());
  }
  const Rational ratio = unit_up / unit_down;
  if (denominator(ratio) != 1) {
    throw Error(ErrorCode::InfeasiblePartition, "theta ratio " + to_fraction_string(ratio) + " is not an integer");
  }
  const auto target = numerator(ratio).convert_to<std::uint64_t>();
  const auto assignment = equal_bins(values, out.g, target);
  if (!assignment) {
    throw Error(ErrorCode::InfeasiblePartition, "offsprings of level-" + std::to_string(level) + " component " +
                                                    std::to_string(component) + " do not split into " +
                                                    std::to_string(out.g) + " groups of " + std::to_string(target));
  }
  out.groups.assign(out.g, {});
  for (std::size_t i = 0; i < frontier.size(); ++i) out.groups[(*assignment)[i]].push_back(frontier[i]);
  for (const auto& grp : out.groups) {
    Rational m = 0;
    for (auto id : grp) m += down.measure(id);
    if (m != unit_up) throw Error(ErrorCode::InfeasiblePartition, "group measure " + to_fraction_string(m) + " differs from theta");
    out.group_measures.push_back(m);
  }
  return out;
}

}  // namespace carpet
