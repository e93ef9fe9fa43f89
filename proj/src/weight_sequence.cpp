#include "hyperdyn/weight_sequence.hpp"

#include <algorithm>

#include "hyperdyn/error.hpp"

namespace hyperdyn {

namespace {

long floor_mod(long a, long p) {
  long r = a % p;
  return r < 0 ? r + p : r;
}

template <class Fn>
void for_each_weight(WeightSequence::Rules& r, Fn&& fn) {
  for (auto& [j, w] : r.table) fn(w);
  for (auto& w : r.left) fn(w);
  for (auto& w : r.right) fn(w);
}

}  // namespace

WeightSequence::WeightSequence(Rules rules, const Options& opts) : rules_(std::move(rules)) {
  if (rules_.left.empty() || rules_.right.empty()) {
    throw InvalidParameters("weight sequence needs nonempty left and right rules");
  }
  if (rules_.left_end >= rules_.right_start) {
    throw InvalidParameters("weight sequence needs left_end < right_start");
  }
  for (long j = rules_.left_end + 1; j < rules_.right_start; ++j) {
    if (!rules_.table.contains(j)) {
      throw InvalidParameters("weight table is missing index " + std::to_string(j));
    }
  }
  for (const auto& [j, w] : rules_.table) {
    if (j <= rules_.left_end || j >= rules_.right_start) {
      throw InvalidParameters("weight table index " + std::to_string(j) +
                              " overlaps a default rule");
    }
  }
  for_each_weight(rules_, [&](BoundedFunction& w) {
    bound_ = std::max(bound_, w.sup_norm(opts.sampling));
  });
  if (!(bound_ <= opts.bound_cap)) {
    throw InvalidParameters("weight sequence bound exceeds the declared cap");
  }
  if (opts.certify_invertible) {
    Rules inv = rules_;
    for_each_weight(inv, [&](BoundedFunction& w) {
      w = w.reciprocal(opts.positivity_floor, opts.sampling);
      inverse_bound_ = std::max(inverse_bound_, w.sup_norm(opts.sampling));
    });
    if (!(inverse_bound_ <= opts.bound_cap)) {
      throw InvalidParameters("inverse weight bound exceeds the declared cap");
    }
    inverse_rules_ = std::move(inv);
    invertible_ = true;
  }
}

WeightSequence WeightSequence::constant(double c, bool invertible) {
  return uniform(BoundedFunction::constant(c), invertible);
}

WeightSequence WeightSequence::uniform(const BoundedFunction& f, bool invertible) {
  Rules r;
  r.left = {f};
  r.right = {f};
  r.left_end = 0;
  r.right_start = 1;
  Options o;
  o.certify_invertible = invertible;
  return WeightSequence(std::move(r), o);
}

const BoundedFunction& WeightSequence::pick(const Rules& r, long j) {
  if (j >= r.right_start) {
    return r.right[floor_mod(j - r.right_start, static_cast<long>(r.right.size()))];
  }
  if (j <= r.left_end) {
    return r.left[floor_mod(r.left_end - j, static_cast<long>(r.left.size()))];
  }
  return r.table.at(j);
}

const BoundedFunction& WeightSequence::at(long j) const { return pick(rules_, j); }

const BoundedFunction& WeightSequence::inverse_at(long j) const {
  if (!inverse_rules_) throw NonInvertibleWeights("weight sequence is not certified invertible");
  return pick(*inverse_rules_, j);
}

double WeightSequence::inverse_bound() const {
  if (!invertible_) throw NonInvertibleWeights("weight sequence is not certified invertible");
  return inverse_bound_;
}

}  // namespace hyperdyn
