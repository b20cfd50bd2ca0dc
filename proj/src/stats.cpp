#include "rspr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rspr {

namespace {

double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int i = 1; i < 10000; ++i) {
    term *= x / (a + i);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz's continued fraction for Q(a, x), stable for x > a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = std::numeric_limits<double>::min() / 1e-30;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_p(double chi2, int df) {
  if (df <= 0) throw std::invalid_argument("chi_square_p: df must be positive");
  return gamma_q(df / 2.0, chi2 / 2.0);
}

GeomFit geometric_tail_fit(const std::map<long, long>& counts, long threshold) {
  GeomFit fit;
  double sum = 0.0;
  long max_k = 0;
  std::map<long, long> tail;
  for (const auto& [step, count] : counts) {
    if (step <= threshold || count <= 0) continue;
    const long k = step - threshold;
    tail[k] += count;
    fit.tail_count += count;
    sum += static_cast<double>(k) * static_cast<double>(count);
    max_k = std::max(max_k, k);
  }
  if (fit.tail_count < 50)
    throw std::invalid_argument("geometric_tail_fit: too few tail observations");

  fit.q = static_cast<double>(fit.tail_count) / sum;

  // Walk k upward, closing a bin once its expected mass reaches 5; the final
  // open-ended bin absorbs the remaining geometric mass.
  const double n = static_cast<double>(fit.tail_count);
  double expected_bin = 0.0;
  long observed_bin = 0;
  double mass_left = 1.0;  // P(K >= k) at the current k
  int bins = 0;
  double chi2 = 0.0;
  for (long k = 1; k <= max_k; ++k) {
    const double pk = mass_left * fit.q;
    mass_left -= pk;
    expected_bin += n * pk;
    auto it = tail.find(k);
    observed_bin += (it == tail.end()) ? 0 : it->second;
    const bool last = (k == max_k);
    if (expected_bin >= 5.0 && !last) {
      const double diff = observed_bin - expected_bin;
      chi2 += diff * diff / expected_bin;
      ++bins;
      expected_bin = 0.0;
      observed_bin = 0;
    } else if (last) {
      expected_bin += n * mass_left;  // everything beyond max_k
      const double diff = observed_bin - expected_bin;
      chi2 += diff * diff / expected_bin;
      ++bins;
    }
  }
  fit.chi2 = chi2;
  fit.df = bins - 2;
  if (fit.df < 1)
    throw std::invalid_argument("geometric_tail_fit: too few bins for a test");
  fit.p_value = chi_square_p(fit.chi2, fit.df);
  return fit;
}

namespace {

std::vector<double> midranks(const std::vector<double>& xs) {
  const int n = static_cast<int>(xs.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(n);
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double rank = (i + j) / 2.0 + 1.0;
    for (int k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const int n = static_cast<int>(a.size());
  double ma = 0.0, mb = 0.0;
  for (int i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (int i = 0; i < n; ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0)
    throw std::invalid_argument("spearman: constant input");
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

SpearmanResult spearman_positive(const std::vector<double>& xs,
                                 const std::vector<double>& ys,
                                 long permutations, Rng& rng) {
  if (xs.size() != ys.size() || xs.size() < 3)
    throw std::invalid_argument("spearman: need at least 3 paired values");
  if (permutations < 1)
    throw std::invalid_argument("spearman: need at least one permutation");
  const std::vector<double> rx = midranks(xs);
  std::vector<double> ry = midranks(ys);

  SpearmanResult out;
  out.rho = pearson(rx, ry);
  out.permutations = permutations;

  long at_least = 0;
  std::vector<double> shuffled = ry;
  for (long rep = 0; rep < permutations; ++rep) {
    for (int i = static_cast<int>(shuffled.size()) - 1; i > 0; --i)
      std::swap(shuffled[i], shuffled[rng.below(i + 1)]);
    if (pearson(rx, shuffled) >= out.rho - 1e-12) ++at_least;
  }
  out.p_value = static_cast<double>(1 + at_least) / static_cast<double>(1 + permutations);
  return out;
}

}  // namespace rspr
