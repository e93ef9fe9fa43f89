#include "hyperdyn/homeomorphism.hpp"

#include <cstdio>

#include "hyperdyn/error.hpp"

namespace hyperdyn {

Homeomorphism Homeomorphism::translation(double c) {
  return Homeomorphism(Kind::translation, Affine{1.0, -c});
}

Homeomorphism Homeomorphism::affine(double a, double b) {
  if (a == 0.0) throw InvalidParameters("affine homeomorphism needs a nonzero slope");
  return Homeomorphism(Kind::affine, Affine{a, b});
}

Homeomorphism Homeomorphism::inverse() const {
  if (kind_ == Kind::translation) return Homeomorphism(kind_, Affine{1.0, -map_.shift});
  return Homeomorphism(kind_, map_.inverse());
}

Homeomorphism Homeomorphism::power(long n) const {
  if (n < 0) return inverse().power(-n);
  if (kind_ == Kind::translation) {
    // Integer multiples of the shift are exact for the usual integer/dyadic c.
    return Homeomorphism(kind_, Affine{1.0, map_.shift * static_cast<double>(n)});
  }
  Affine result{};
  Affine base = map_;
  while (n > 0) {
    if (n & 1) result = base.after(result);
    base = base.after(base);
    n >>= 1;
  }
  return Homeomorphism(kind_, result);
}

std::string Homeomorphism::describe() const {
  char buf[96];
  if (kind_ == Kind::translation) {
    std::snprintf(buf, sizeof buf, "translation(c=%.17g)", -map_.shift);
  } else {
    std::snprintf(buf, sizeof buf, "affine(a=%.17g, b=%.17g)", map_.scale, map_.shift);
  }
  return buf;
}

}  // namespace hyperdyn
