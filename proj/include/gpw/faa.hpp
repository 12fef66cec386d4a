#pragma once

#include <utility>
#include <vector>

#include "gpw/taylor2d.hpp"

namespace gpw {

class PdeOperator;

/// One term of the bivariate Faa di Bruno sum: a multiset of nonzero
/// multi-indices, listed in strictly increasing graded order, each with a
/// positive multiplicity. `s` is the number of distinct parts and `mu` the
/// total multiplicity.
struct Partition {
  std::vector<std::pair<int, MultiIndex>> parts;  // (k_m, (i_m, j_m))
  int s = 0;
  int mu = 0;
};

/// All partitions of `target` with total multiplicity `mu`
/// (1 <= mu <= |target|). Order is lexicographic in the parts list.
std::vector<Partition> enumerate_partitions(MultiIndex target, int mu);

/// d^target(e^P) / e^P at the center of P, in the unscaled derivative
/// convention: i! j! * sum over partitions of prod_m (D^{(i_m,j_m)}P)^{k_m} / k_m!.
Complex faa_di_bruno_exp_derivative(const TaylorSeries2& P, MultiIndex target);

/// Same quantity as a series about the center, truncated at `order`.
/// Requires P.order >= order + |target|.
TaylorSeries2 faa_di_bruno_exp_derivative_series(const TaylorSeries2& P, MultiIndex target,
                                                 int order);

enum class FaaTerms { linear, nonlinear, all };

/// sum_{1 <= k+l <= M} alpha_{k,l} d^k d^l e^P / e^P assembled from partitions.
/// `linear` keeps only mu = 1 partitions, `nonlinear` only mu >= 2.
TaylorSeries2 faa_phase_operator(const PdeOperator& op, const TaylorSeries2& P, int order,
                                 FaaTerms terms = FaaTerms::all);

}  // namespace gpw
