#include "hyperdyn/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "hyperdyn/error.hpp"

namespace hyperdyn {

namespace {

constexpr double kUnderflow = 1e-300;

// Mantissa in [0.5, 1) times 2^e; zero is sticky.
struct Scaled {
  double m = 0.5;
  long e = 1;
  bool zero = false;

  void mul(double v) {
    v = std::abs(v);
    if (v == 0.0 || zero) {
      zero = true;
      return;
    }
    int ex = 0;
    m = std::frexp(m * v, &ex);
    e += ex;
  }
  bool less(const Scaled& o) const {
    if (zero != o.zero) return zero;
    if (zero) return false;
    return e != o.e ? e < o.e : m < o.m;
  }
  double log10() const {
    if (zero) return -std::numeric_limits<double>::infinity();
    return (std::log(m) + static_cast<double>(e) * std::log(2.0)) / std::log(10.0);
  }
};

ProductSup to_sup(const Scaled& s, double at) {
  ProductSup out;
  out.at = at;
  out.log10 = s.log10();
  if (s.zero) {
    out.value = 0.0;
    return out;
  }
  if (s.e < -1100) {
    out.value = 0.0;
  } else {
    out.value = std::ldexp(s.m, static_cast<int>(s.e));
  }
  if (out.value < kUnderflow) {
    out.value = 0.0;
    out.underflow = true;
  }
  return out;
}

// factor(i, t) for i = 1..n, accumulated per grid point; entry i-1 holds the sup after i factors.
std::vector<ProductSup> sweep(const CompactSet& K, long n,
                              const std::function<double(long, double)>& factor) {
  const auto grid = K.grid();
  std::vector<Scaled> acc(grid.size());
  std::vector<ProductSup> out;
  out.reserve(static_cast<std::size_t>(std::max(0L, n)));
  for (long i = 1; i <= n; ++i) {
    std::size_t best = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      acc[g].mul(factor(i, grid[g]));
      if (acc[best].less(acc[g])) best = g;
    }
    out.push_back(to_sup(acc[best], grid[best]));
  }
  return out;
}

std::vector<Affine> powers(const Homeomorphism& alpha, long from, long to) {
  std::vector<Affine> out;
  for (long k = from; k <= to; ++k) out.push_back(alpha.power(k).map());
  return out;
}

ProductSup last_or_one(const std::vector<ProductSup>& t, const CompactSet& K) {
  if (t.empty()) {
    ProductSup one;
    one.at = K.intervals().front().lo;
    return one;
  }
  return t.back();
}

void check_thresholds(const std::vector<double>& th) {
  if (th.empty()) throw InvalidParameters("threshold ladder is empty");
  for (std::size_t k = 0; k < th.size(); ++k) {
    if (!(th[k] > 0.0)) throw InvalidParameters("thresholds must be positive");
    if (k > 0 && !(th[k] < th[k - 1])) {
      throw InvalidParameters("thresholds must be strictly decreasing");
    }
  }
}

std::vector<TraceRow> bilateral_rows(const WeightSequence& w, const Homeomorphism& alpha,
                                     const std::vector<long>& indices, const CompactSet& K,
                                     long r_max, BackwardExponent e) {
  if (indices.empty()) throw InvalidParameters("index set is empty");
  if (r_max < 1) throw InvalidParameters("r_max must be >= 1");
  std::vector<std::vector<ProductSup>> fw, bw;
  for (long j : indices) {
    fw.push_back(forward_trace(w, alpha, j, r_max, K));
    bw.push_back(backward_trace(w, alpha, j, r_max, K, e));
  }
  std::vector<TraceRow> rows;
  for (long r = 1; r <= r_max; ++r) {
    TraceRow row;
    row.r = r;
    for (std::size_t q = 0; q < indices.size(); ++q) {
      row.forward.push_back(fw[q][r - 1]);
      row.backward.push_back(bw[q][r - 1]);
      row.forward_max = std::max(row.forward_max, fw[q][r - 1].value);
      row.backward_max = std::max(row.backward_max, bw[q][r - 1].value);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void ladder(CriterionReport& rep) {
  std::size_t k = 0;
  for (const auto& row : rep.trace) {
    if (k == rep.thresholds.size()) break;
    if (row.forward_max <= rep.thresholds[k] && row.backward_max <= rep.thresholds[k]) {
      rep.subsequence.push_back(row.r);
      ++k;
    }
  }
  rep.verdict = k == rep.thresholds.size() ? Verdict::subsequence_found
                                          : Verdict::not_found_within_budget;
}

}  // namespace

BackwardExponent parse_backward_exponent(const std::string& s) {
  if (s == "i-1") return BackwardExponent::i_minus_1;
  if (s == "-i") return BackwardExponent::minus_i;
  throw InvalidParameters("backward exponent must be 'i-1' or '-i', got '" + s + "'");
}

std::string to_string(BackwardExponent e) { return e == BackwardExponent::i_minus_1 ? "i-1" : "-i"; }

std::string to_string(ReportKind k) {
  switch (k) {
    case ReportKind::bilateral: return "bilateral";
    case ReportKind::mixing: return "mixing";
    case ReportKind::multiplier: return "multiplier";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::subsequence_found: return "subsequence_found";
    case Verdict::full_sequence_decay: return "full_sequence_decay";
    case Verdict::not_found_within_budget: return "not_found_within_budget";
  }
  return "?";
}

std::vector<ProductSup> forward_trace(const WeightSequence& w, const Homeomorphism& alpha, long j,
                                      long r_max, const CompactSet& K) {
  const auto maps = powers(alpha, -r_max, -1);  // maps[r_max - i] = alpha^{-i}
  return sweep(K, r_max, [&](long i, double t) {
    return w.at(i + j)(maps[static_cast<std::size_t>(r_max - i)](t));
  });
}

std::vector<ProductSup> backward_trace(const WeightSequence& w, const Homeomorphism& alpha, long j,
                                       long r_max, const CompactSet& K, BackwardExponent e) {
  if (!w.invertible()) throw NonInvertibleWeights("backward product needs invertible weights");
  std::vector<Affine> maps;
  if (e == BackwardExponent::i_minus_1) {
    maps = powers(alpha, 0, r_max - 1);  // maps[i-1] = alpha^{i-1}
  } else {
    auto neg = powers(alpha, -r_max, -1);
    maps.assign(neg.rbegin(), neg.rend());  // maps[i-1] = alpha^{-i}
  }
  return sweep(K, r_max, [&](long i, double t) {
    return w.inverse_at(j + 1 - i)(maps[static_cast<std::size_t>(i - 1)](t));
  });
}

ProductSup forward_product(const WeightSequence& w, const Homeomorphism& alpha, long j, long r,
                           const CompactSet& K) {
  if (r < 0) throw InvalidParameters("product length must be >= 0");
  return last_or_one(forward_trace(w, alpha, j, r, K), K);
}

ProductSup backward_product(const WeightSequence& w, const Homeomorphism& alpha, long j, long r,
                            const CompactSet& K, BackwardExponent e) {
  if (r < 0) throw InvalidParameters("product length must be >= 0");
  if (!w.invertible()) throw NonInvertibleWeights("backward product needs invertible weights");
  return last_or_one(backward_trace(w, alpha, j, r, K, e), K);
}

CriterionReport find_subsequence(const WeightSequence& w, const Homeomorphism& alpha,
                                 const std::vector<long>& indices, const CompactSet& K,
                                 const std::vector<double>& thresholds, long r_max,
                                 BackwardExponent e) {
  check_thresholds(thresholds);
  CriterionReport rep;
  rep.kind = ReportKind::bilateral;
  rep.indices = indices;
  rep.thresholds = thresholds;
  rep.trace = bilateral_rows(w, alpha, indices, K, r_max, e);
  ladder(rep);
  return rep;
}

CriterionReport check_mixing(const WeightSequence& w, const Homeomorphism& alpha,
                             const std::vector<long>& indices, const CompactSet& K,
                             double threshold, long r_window, long r_max, BackwardExponent e) {
  if (!(threshold > 0.0)) throw InvalidParameters("mixing threshold must be positive");
  if (r_window < 0 || r_window >= r_max) {
    throw InvalidParameters("mixing window must satisfy 0 <= r_window < r_max");
  }
  CriterionReport rep;
  rep.kind = ReportKind::mixing;
  rep.indices = indices;
  rep.thresholds = {threshold};
  rep.trace = bilateral_rows(w, alpha, indices, K, r_max, e);
  bool all = true;
  for (const auto& row : rep.trace) {
    const bool ok = row.forward_max <= threshold && row.backward_max <= threshold;
    if (ok && rep.subsequence.empty()) rep.subsequence.push_back(row.r);
    if (row.r >= r_max - r_window && !ok) all = false;
  }
  if (all) {
    rep.verdict = Verdict::full_sequence_decay;
  } else if (!rep.subsequence.empty()) {
    rep.verdict = Verdict::subsequence_found;
  } else {
    rep.verdict = Verdict::not_found_within_budget;
  }
  return rep;
}

std::vector<MultiplierProducts> multiplier_trace(const BoundedFunction& b,
                                                 const Homeomorphism& alpha, const CompactSet& K,
                                                 long n_max, double floor) {
  if (n_max < 0) throw InvalidParameters("product length must be >= 0");
  const BoundedFunction inv = b.reciprocal(floor);
  const auto neg = powers(alpha, -n_max, -1);    // neg[n_max - m] = alpha^{-m}
  const auto pos = powers(alpha, 0, n_max - 1);  // pos[j] = alpha^{j}
  auto fw = sweep(K, n_max, [&](long m, double t) {
    return b(neg[static_cast<std::size_t>(n_max - m)](t));
  });
  auto bw = sweep(K, n_max, [&](long i, double t) {
    return inv(pos[static_cast<std::size_t>(i - 1)](t));
  });
  std::vector<MultiplierProducts> out;
  for (long n = 0; n < n_max; ++n) out.push_back({fw[n], bw[n]});
  return out;
}

MultiplierProducts multiplier_products(const BoundedFunction& b, const Homeomorphism& alpha,
                                       const CompactSet& K, long n, double floor) {
  auto t = multiplier_trace(b, alpha, K, n, floor);
  if (t.empty()) {
    ProductSup one;
    one.at = K.intervals().front().lo;
    return {one, one};
  }
  return t.back();
}

CriterionReport find_multiplier_subsequence(const BoundedFunction& b, const Homeomorphism& alpha,
                                            const CompactSet& K,
                                            const std::vector<double>& thresholds, long n_max,
                                            double floor) {
  check_thresholds(thresholds);
  if (n_max < 1) throw InvalidParameters("n_max must be >= 1");
  CriterionReport rep;
  rep.kind = ReportKind::multiplier;
  rep.thresholds = thresholds;
  auto t = multiplier_trace(b, alpha, K, n_max, floor);
  for (long n = 1; n <= n_max; ++n) {
    TraceRow row;
    row.r = n;
    row.forward = {t[n - 1].forward};
    row.backward = {t[n - 1].backward};
    row.forward_max = t[n - 1].forward.value;
    row.backward_max = t[n - 1].backward.value;
    rep.trace.push_back(std::move(row));
  }
  ladder(rep);
  return rep;
}

RunawayResult runaway_check(const Homeomorphism& alpha, const CompactSet& K, long n_max) {
  if (n_max < 1) throw InvalidParameters("n_max must be >= 1");
  RunawayResult res;
  for (long n = 1; n <= n_max; ++n) {
    const IntervalSet img = K.set().image(alpha.power(n).map());
    res.disjoint.push_back(!img.intersects(K.set()));
  }
  long N = n_max + 1;
  while (N > 1 && res.disjoint[N - 2]) --N;
  res.found = N <= n_max;
  res.N = res.found ? N : 0;
  return res;
}

WeightSequence ex1_weights(double M, double eps) {
  if (!(M > 1.0)) throw InvalidParameters("ex1 needs M > 1");
  if (!(eps > 0.0)) throw InvalidParameters("ex1 needs eps > 0");
  if (!(1.0 + eps < M)) throw InvalidParameters("ex1 needs 1 + eps < M");
  if (!(1.0 - eps > 1.0 / M)) throw InvalidParameters("ex1 needs 1 - eps > 1/M");
  // ||w_j|| ||w_j^{-1}|| = (1+eps)/(1-eps) for this family
  if (!((1.0 + eps) / (1.0 - eps) < M)) {
    throw InvalidParameters("ex1 needs (1 + eps)/(1 - eps) < M for this weight family");
  }
  WeightSequence::Rules r;
  r.right = {BoundedFunction::piecewise_linear({{-1.0, 1.0 + eps}, {0.0, 1.0 - eps}})};
  r.left = {BoundedFunction::piecewise_linear({{0.0, 1.0 + eps}, {1.0, 1.0 - eps}})};
  r.left_end = 0;
  r.right_start = 1;
  return WeightSequence(std::move(r));
}

}  // namespace hyperdyn
