#pragma once

#include <string>

namespace hyperdyn {

/// x -> scale * x + shift. scale is never zero for maps built by Homeomorphism.
struct Affine {
  double scale = 1.0;
  double shift = 0.0;

  double operator()(double x) const { return scale * x + shift; }

  Affine inverse() const { return {1.0 / scale, -shift / scale}; }

  /// (*this)(inner(x)).
  Affine after(const Affine& inner) const {
    return {scale * inner.scale, scale * inner.shift + shift};
  }

  bool operator==(const Affine&) const = default;
};

/// Strictly monotone self-map of the real line with an exact inverse.
///
/// Translation(c) is the map x -> x - c, so composing a function with it
/// moves the graph to the right by c. Affine(a, b) is x -> a x + b.
class Homeomorphism {
 public:
  enum class Kind { translation, affine };

  static Homeomorphism identity() { return translation(0.0); }
  static Homeomorphism translation(double c);
  /// Throws InvalidParameters when a == 0.
  static Homeomorphism affine(double a, double b);

  Kind kind() const { return kind_; }
  const Affine& map() const { return map_; }

  double operator()(double x) const { return map_(x); }
  Homeomorphism inverse() const;
  /// n-fold iterate; n < 0 iterates the inverse, n == 0 is the identity.
  Homeomorphism power(long n) const;

  bool is_identity() const { return map_.scale == 1.0 && map_.shift == 0.0; }
  bool is_increasing() const { return map_.scale > 0.0; }

  std::string describe() const;

 private:
  Homeomorphism(Kind kind, Affine map) : kind_(kind), map_(map) {}

  Kind kind_;
  Affine map_;
};

}  // namespace hyperdyn
