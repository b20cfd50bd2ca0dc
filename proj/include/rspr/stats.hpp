#pragma once

#include <map>
#include <vector>

#include "rspr/rng.hpp"

namespace rspr {

// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

// Upper tail probability of a chi-square distribution with df degrees of
// freedom.
double chi_square_p(double chi2, int df);

// Fit of a geometric law to the histogram tail strictly beyond threshold.
// Observations are shifted to k = t - threshold, the rate is the MLE
// q = 1/mean, and bins are pooled from the right until each holds an
// expected count of at least 5.  df = bins - 2 (one estimated parameter).
struct GeomFit {
  double q = 0.0;
  double chi2 = 0.0;
  int df = 0;
  double p_value = 0.0;
  long tail_count = 0;
};

GeomFit geometric_tail_fit(const std::map<long, long>& counts, long threshold);

// Spearman rank correlation with a one-sided permutation test of
// H1: rho > 0.  Ties get midranks.  The permutation p-value uses the
// add-one estimate (1 + #{rho_perm >= rho}) / (1 + permutations).
struct SpearmanResult {
  double rho = 0.0;
  double p_value = 1.0;
  long permutations = 0;
};

SpearmanResult spearman_positive(const std::vector<double>& xs,
                                 const std::vector<double>& ys,
                                 long permutations, Rng& rng);

}  // namespace rspr
