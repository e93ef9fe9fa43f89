#pragma once

#include <string>
#include <vector>

#include "hyperdyn/bounded_function.hpp"
#include "hyperdyn/homeomorphism.hpp"
#include "hyperdyn/interval_set.hpp"
#include "hyperdyn/weight_sequence.hpp"

namespace hyperdyn {

/// Which iterate of alpha the backward product evaluates factor i at:
/// alpha^{i-1} (default) or alpha^{-i}.
enum class BackwardExponent { i_minus_1, minus_i };

BackwardExponent parse_backward_exponent(const std::string& s);
std::string to_string(BackwardExponent e);

/// Supremum of a product of |values| over the grid of a compact set.
/// Products are carried as mantissa/exponent pairs, so they never underflow
/// internally and agree bit for bit with plain multiplication whenever that
/// stays in the normal range. `value` is 0 (and `underflow` set) below 1e-300;
/// `log10` stays finite unless some factor is exactly zero.
struct ProductSup {
  double value = 1.0;
  double log10 = 0.0;
  bool underflow = false;
  double at = 0.0;  ///< grid point attaining the supremum
};

/// sup_{t in K} prod_{i=1}^{r} |w_{i+j}(alpha^{-i}(t))|; r == 0 gives 1.
ProductSup forward_product(const WeightSequence& w, const Homeomorphism& alpha, long j, long r,
                           const CompactSet& K);

/// sup_{t in K} prod_{i=1}^{r} |w_{j+1-i}(alpha^{i-1}(t))|^{-1}, or with
/// alpha^{-i}. Throws NonInvertibleWeights.
ProductSup backward_product(const WeightSequence& w, const Homeomorphism& alpha, long j, long r,
                            const CompactSet& K,
                            BackwardExponent e = BackwardExponent::i_minus_1);

/// Entries r = 1..r_max of forward_product / backward_product, computed
/// incrementally in one sweep.
std::vector<ProductSup> forward_trace(const WeightSequence& w, const Homeomorphism& alpha, long j,
                                      long r_max, const CompactSet& K);
std::vector<ProductSup> backward_trace(const WeightSequence& w, const Homeomorphism& alpha, long j,
                                       long r_max, const CompactSet& K,
                                       BackwardExponent e = BackwardExponent::i_minus_1);

enum class ReportKind { bilateral, mixing, multiplier };
enum class Verdict { subsequence_found, full_sequence_decay, not_found_within_budget };

std::string to_string(ReportKind k);
std::string to_string(Verdict v);

struct TraceRow {
  long r = 0;
  std::vector<ProductSup> forward;   ///< one per index (a single entry for multipliers)
  std::vector<ProductSup> backward;
  double forward_max = 0.0;
  double backward_max = 0.0;
};

struct CriterionReport {
  ReportKind kind = ReportKind::bilateral;
  std::vector<long> indices;
  std::vector<TraceRow> trace;
  std::vector<double> thresholds;
  std::vector<long> subsequence;  ///< r_k at which thresholds[k] was first met
  Verdict verdict = Verdict::not_found_within_budget;
};

/// Greedy scan r = 1..r_max: r_k is the first r > r_{k-1} at which both
/// products, maximized over I, are <= thresholds[k].
CriterionReport find_subsequence(const WeightSequence& w, const Homeomorphism& alpha,
                                 const std::vector<long>& indices, const CompactSet& K,
                                 const std::vector<double>& thresholds, long r_max,
                                 BackwardExponent e = BackwardExponent::i_minus_1);

/// full_sequence_decay iff both maxima stay <= threshold for every r in
/// [r_max - r_window, r_max]; subsequence_found if they only meet it somewhere.
CriterionReport check_mixing(const WeightSequence& w, const Homeomorphism& alpha,
                             const std::vector<long>& indices, const CompactSet& K,
                             double threshold, long r_window, long r_max,
                             BackwardExponent e = BackwardExponent::i_minus_1);

struct MultiplierProducts {
  ProductSup forward;   ///< sup_K prod_{m=1}^{n} |b(alpha^{-m} t)|
  ProductSup backward;  ///< sup_K prod_{j=0}^{n-1} |b(alpha^{j} t)|^{-1}
};

/// Throws NonInvertibleWeight when b fails the positivity floor.
MultiplierProducts multiplier_products(const BoundedFunction& b, const Homeomorphism& alpha,
                                       const CompactSet& K, long n,
                                       double floor = kDefaultPositivityFloor);
/// n = 1..n_max in one sweep.
std::vector<MultiplierProducts> multiplier_trace(const BoundedFunction& b,
                                                 const Homeomorphism& alpha, const CompactSet& K,
                                                 long n_max,
                                                 double floor = kDefaultPositivityFloor);
CriterionReport find_multiplier_subsequence(const BoundedFunction& b, const Homeomorphism& alpha,
                                            const CompactSet& K,
                                            const std::vector<double>& thresholds, long n_max,
                                            double floor = kDefaultPositivityFloor);

struct RunawayResult {
  bool found = false;
  long N = 0;
  std::vector<bool> disjoint;  ///< entry n-1: alpha^n(K) and K are disjoint
};

/// Smallest N with alpha^n(K) disjoint from K for every n in [N, n_max].
RunawayResult runaway_check(const Homeomorphism& alpha, const CompactSet& K, long n_max);

/// The concrete family: for j >= 1, w_j = 1+eps on (-inf,-1], 1-eps on
/// [0,inf), linear between; for j <= 0, w_j = 1+eps on (-inf,0], 1-eps on
/// [1,inf). Requires M > 1, eps > 0, 1+eps < M, 1-eps > 1/M, and
/// (1+eps)/(1-eps) < M so that ||w_j|| ||w_j^{-1}|| < M.
WeightSequence ex1_weights(double M, double eps);

}  // namespace hyperdyn
