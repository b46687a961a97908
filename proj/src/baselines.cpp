#include "bowfire/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bowfire {

namespace {

constexpr int kMaxRounds = 100;
// Upper bound on k * d^2 for the exact solver; 8-bit channels stay far below.
constexpr double kExactBudget = 5e7;

// Nearest mean, lower index on ties.
int nearest(const std::vector<double>& means, double v) {
  int best = 0;
  double best_d = std::abs(v - means[0]);
  for (int c = 1; c < static_cast<int>(means.size()); ++c) {
    const double d = std::abs(v - means[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

// Weighted within-cluster sum of squares of an assignment over distinct values.
double within_ss(const std::vector<double>& uniq, const std::vector<long>& weight,
                 const std::vector<int>& assign, int k) {
  std::vector<double> sum(k, 0.0), count(k, 0.0);
  for (std::size_t u = 0; u < uniq.size(); ++u) {
    sum[assign[u]] += uniq[u] * static_cast<double>(weight[u]);
    count[assign[u]] += static_cast<double>(weight[u]);
  }
  double ss = 0.0;
  for (std::size_t u = 0; u < uniq.size(); ++u) {
    const double dv = uniq[u] - sum[assign[u]] / count[assign[u]];
    ss += dv * dv * static_cast<double>(weight[u]);
  }
  return ss;
}

// Globally optimal contiguous k-split of the sorted distinct values by
// dynamic programming over weighted prefix sums.
std::vector<int> optimal_split(const std::vector<double>& uniq, const std::vector<long>& weight,
                               int k) {
  const int d = static_cast<int>(uniq.size());
  // Centered values keep the prefix sums well conditioned.
  const double shift = uniq[d / 2];
  std::vector<double> w(d + 1, 0.0), s(d + 1, 0.0), q(d + 1, 0.0);
  for (int u = 0; u < d; ++u) {
    const double x = uniq[u] - shift, n = static_cast<double>(weight[u]);
    w[u + 1] = w[u] + n;
    s[u + 1] = s[u] + n * x;
    q[u + 1] = q[u] + n * x * x;
  }
  // Cost of the segment [i, j).
  const auto cost = [&](int i, int j) {
    const double sw = w[j] - w[i], ss = s[j] - s[i];
    return std::max(0.0, (q[j] - q[i]) - ss * ss / sw);
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best(k + 1, std::vector<double>(d + 1, inf));
  std::vector<std::vector<int>> cut(k + 1, std::vector<int>(d + 1, 0));
  best[0][0] = 0.0;
  for (int c = 1; c <= k; ++c)
    for (int j = c; j <= d - (k - c); ++j)
      for (int i = c - 1; i < j; ++i) {
        const double v = best[c - 1][i] + cost(i, j);
        if (v < best[c][j]) {
          best[c][j] = v;
          cut[c][j] = i;
        }
      }
  std::vector<int> assign(d);
  for (int c = k, j = d; c >= 1; --c) {
    const int i = cut[c][j];
    for (int u = i; u < j; ++u) assign[u] = c - 1;
    j = i;
  }
  return assign;
}

} // namespace

std::string_view to_string(ClusterChannel channel) {
  return channel == ClusterChannel::YuvV ? "yuv-v" : "ycbcr-cb";
}

KMeans1D kmeans_1d(std::span<const double> values, int k) {
  if (k < 1) throw ParameterError("cluster count must be >= 1");

  // Lloyd's over the distinct values weighted by multiplicity; identical to
  // running on the raw list, but cost depends only on the value range.
  std::vector<double> sorted(values.begin(), values.end());
  std::ranges::sort(sorted);
  std::vector<double> uniq;
  std::vector<long> weight;
  for (double v : sorted) {
    if (uniq.empty() || v != uniq.back()) {
      uniq.push_back(v);
      weight.push_back(0);
    }
    ++weight.back();
  }
  const int d = static_cast<int>(uniq.size());
  if (d < k)
    throw DegenerateInput("k-means needs at least " + std::to_string(k) +
                          " distinct values, got " + std::to_string(d));

  std::vector<double> means(k);
  const auto n = static_cast<double>(sorted.size());
  for (int i = 0; i < k; ++i)
    means[i] = sorted[static_cast<std::size_t>(std::floor((i + 0.5) / k * n))];
  if (std::adjacent_find(means.begin(), means.end()) != means.end()) {
    // Heavy ties collapsed some quantiles; spread over distinct values instead.
    for (int i = 0; i < k; ++i)
      means[i] = uniq[static_cast<std::size_t>(std::floor((i + 0.5) * d / k))];
  }

  std::vector<int> assign(d, -1);
  const auto update_means = [&] {
    std::vector<double> sum(k, 0.0);
    std::vector<long> count(k, 0);
    for (int u = 0; u < d; ++u) {
      sum[assign[u]] += uniq[u] * static_cast<double>(weight[u]);
      count[assign[u]] += weight[u];
    }
    for (int c = 0; c < k; ++c)
      if (count[c] > 0) means[c] = sum[c] / static_cast<double>(count[c]);
  };

  for (int round = 0; round < kMaxRounds; ++round) {
    bool changed = false;
    for (int u = 0; u < d; ++u) {
      const int c = nearest(means, uniq[u]);
      changed |= c != assign[u];
      assign[u] = c;
    }
    if (!changed) break;
    update_means();
  }

  // Lloyd's can stop in a local optimum. When the exact contiguous split is
  // affordable and strictly better, return it instead; a global optimum is
  // itself a Lloyd fixpoint, so the result still satisfies the update rule.
  if (static_cast<double>(k) * d * d <= kExactBudget) {
    std::vector<int> exact = optimal_split(uniq, weight, k);
    const double lloyd_ss = within_ss(uniq, weight, assign, k);
    const double exact_ss = within_ss(uniq, weight, exact, k);
    if (exact_ss < lloyd_ss - 1e-12 * (1.0 + lloyd_ss)) {
      assign = std::move(exact);
      update_means();
    }
  }

  KMeans1D out;
  out.means = means;
  out.assignment.reserve(values.size());
  for (double v : values) {
    const auto u = std::ranges::lower_bound(uniq, v) - uniq.begin();
    out.assignment.push_back(assign[u]);
  }
  return out;
}

std::vector<double> cluster_channel(const ImageRGB& img, ClusterChannel channel) {
  std::vector<double> out(static_cast<std::size_t>(img.size()));
  for (Eigen::Index i = 0; i < img.size(); ++i) {
    const Rgb p = img.pixel(i);
    out[i] = channel == ClusterChannel::YuvV ? rgb_to_yuv_v(p) : double(rgb_to_ycbcr(p).cb);
  }
  return out;
}

BinaryMask cluster_segment(const ImageRGB& img, const ClusterSpec& spec) {
  if (spec.cluster_count < 2) throw ParameterError("cluster_count must be >= 2");
  const auto values = cluster_channel(img, spec.channel);
  const KMeans1D km = kmeans_1d(values, spec.cluster_count);

  std::vector<bool> used(km.means.size(), false);
  for (int c : km.assignment) used[c] = true;
  int fire = -1;
  for (int c = 0; c < static_cast<int>(km.means.size()); ++c) {
    if (!used[c]) continue;
    const bool better = fire < 0 || (spec.fire_rule == FireRule::HighestMean
                                         ? km.means[c] > km.means[fire]
                                         : km.means[c] < km.means[fire]);
    if (better) fire = c;
  }

  BinaryMask mask(img.width(), img.height());
  for (Eigen::Index i = 0; i < img.size(); ++i) mask.set(i, km.assignment[i] == fire);
  return mask;
}

} // namespace bowfire
