#pragma once

namespace condspec {

// One-point compactification of the reals: a finite double or the single
// point at infinity (no sign). The infinity is a tag, never an IEEE inf, so
// it cannot leak into arithmetic; consumers must pattern-match.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr explicit ExtReal(double v) : value_(v) {}

  static constexpr ExtReal infinity() {
    ExtReal r;
    r.infinite_ = true;
    return r;
  }

  constexpr bool is_infinite() const { return infinite_; }
  // Only meaningful when finite.
  constexpr double value() const { return value_; }

  friend constexpr bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

// Order with the infinity as the top element. This is the order of the
// arctangent residuals: arctan(b) for finite b, pi/2 for the infinity.
constexpr bool ext_less(const ExtReal& a, const ExtReal& b) {
  if (a.is_infinite()) return false;
  if (b.is_infinite()) return true;
  return a.value() < b.value();
}

}  // namespace condspec
