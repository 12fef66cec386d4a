#include "gpw/faa.hpp"

#include <algorithm>
#include <stdexcept>

#include "gpw/pde_operator.hpp"

namespace gpw {

namespace {

double factorial(int n) {
  double r = 1.0;
  for (int t = 2; t <= n; ++t) r *= t;
  return r;
}

// Nonzero multi-indices below `target` componentwise, in graded order.
std::vector<MultiIndex> candidate_parts(MultiIndex target) {
  std::vector<MultiIndex> out;
  for (int i = 0; i <= target.i; ++i)
    for (int j = 0; j <= target.j; ++j)
      if (i + j > 0) out.push_back({i, j});
  std::sort(out.begin(), out.end(),
            [](MultiIndex a, MultiIndex b) { return mi_compare(a, b) < 0; });
  return out;
}

void extend(const std::vector<MultiIndex>& cands, std::size_t from, MultiIndex rest, int mu_left,
            Partition& current, std::vector<Partition>& out) {
  if (rest.i == 0 && rest.j == 0) {
    if (mu_left == 0) out.push_back(current);
    return;
  }
  if (mu_left == 0) return;
  for (std::size_t c = from; c < cands.size(); ++c) {
    const MultiIndex part = cands[c];
    for (int k = 1; k <= mu_left; ++k) {
      const MultiIndex left{rest.i - k * part.i, rest.j - k * part.j};
      if (left.i < 0 || left.j < 0) break;
      current.parts.emplace_back(k, part);
      ++current.s;
      current.mu += k;
      extend(cands, c + 1, left, mu_left - k, current, out);
      current.parts.pop_back();
      --current.s;
      current.mu -= k;
    }
  }
}

TaylorSeries2 partition_product(const TaylorSeries2& P, const Partition& part, int order) {
  TaylorSeries2 term = TaylorSeries2::constant(P.center(), order, 1.0);
  for (const auto& [k, idx] : part.parts) {
    const TaylorSeries2 d = derive(P, idx).resized(order);
    term = multiply(term, pow_series(d, k, order), order);
    term *= 1.0 / factorial(k);
  }
  return term;
}

TaylorSeries2 exp_derivative_series(const TaylorSeries2& P, MultiIndex target, int order,
                                    int mu_min, int mu_max) {
  TaylorSeries2 sum(P.center(), order);
  if (target.length() == 0) {
    if (mu_min <= 0) sum[{0, 0}] = 1.0;
    return sum;
  }
  for (int mu = std::max(mu_min, 1); mu <= std::min(mu_max, target.length()); ++mu)
    for (const Partition& part : enumerate_partitions(target, mu))
      sum += partition_product(P, part, order);
  sum *= factorial(target.i) * factorial(target.j);
  return sum;
}

}  // namespace

std::vector<Partition> enumerate_partitions(MultiIndex target, int mu) {
  if (target.i < 0 || target.j < 0 || target.length() < 1)
    throw std::invalid_argument("enumerate_partitions: target must be nonzero");
  if (mu < 1 || mu > target.length())
    throw std::invalid_argument("enumerate_partitions: mu out of range");
  std::vector<Partition> out;
  Partition current;
  extend(candidate_parts(target), 0, target, mu, current, out);
  return out;
}

Complex faa_di_bruno_exp_derivative(const TaylorSeries2& P, MultiIndex target) {
  if (target.length() > P.order())
    throw std::invalid_argument("faa_di_bruno_exp_derivative: insufficient order");
  if (target.length() == 0) return 1.0;
  Complex sum = 0.0;
  for (int mu = 1; mu <= target.length(); ++mu) {
    for (const Partition& part : enumerate_partitions(target, mu)) {
      Complex term = 1.0;
      for (const auto& [k, idx] : part.parts) {
        const Complex d = P[idx];
        Complex pw = 1.0;
        for (int t = 0; t < k; ++t) pw *= d;
        term *= pw / factorial(k);
      }
      sum += term;
    }
  }
  return sum * (factorial(target.i) * factorial(target.j));
}

TaylorSeries2 faa_di_bruno_exp_derivative_series(const TaylorSeries2& P, MultiIndex target,
                                                 int order) {
  if (order < 0 || P.order() < order + target.length())
    throw std::invalid_argument("faa_di_bruno_exp_derivative_series: insufficient order");
  return exp_derivative_series(P, target, order, 0, target.length());
}

TaylorSeries2 faa_phase_operator(const PdeOperator& op, const TaylorSeries2& P, int order,
                                 FaaTerms terms) {
  const int M = op.order();
  if (P.order() < order + M) throw std::invalid_argument("faa_phase_operator: insufficient order");
  if (op.coefficient_order() < order)
    throw std::invalid_argument("faa_phase_operator: coefficient order too low");
  const int mu_min = terms == FaaTerms::nonlinear ? 2 : 1;
  const int mu_max = terms == FaaTerms::linear ? 1 : M;
  TaylorSeries2 sum(P.center(), order);
  for (int n = 1; n <= M; ++n) {
    for (int l = 0; l <= n; ++l) {
      const MultiIndex kl{n - l, l};
      const TaylorSeries2 ratio = exp_derivative_series(P, kl, order, mu_min, mu_max);
      sum += multiply(op.alpha(kl.i, kl.j), ratio, order);
    }
  }
  return sum;
}

}  // namespace gpw
