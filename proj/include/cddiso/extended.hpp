#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace cddiso {

/// A real number or one of the two signed infinities.
///
/// Infinite values are carried as a tag and never as a floating-point
/// infinity, so arithmetic on value() is always on finite doubles.
class ExtendedReal {
 public:
  enum class Kind { kNegInf, kFinite, kPosInf };

  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double v) : kind_(Kind::kFinite), value_(v) {}  // NOLINT(implicit)

  static constexpr ExtendedReal neg_inf() { return ExtendedReal(Kind::kNegInf); }
  static constexpr ExtendedReal pos_inf() { return ExtendedReal(Kind::kPosInf); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::kFinite; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::kPosInf; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::kNegInf; }

  /// The finite value; throws std::domain_error for an infinity.
  double value() const {
    if (kind_ != Kind::kFinite) throw std::domain_error("ExtendedReal::value() called on an infinity");
    return value_;
  }

  constexpr ExtendedReal operator-() const {
    switch (kind_) {
      case Kind::kNegInf: return pos_inf();
      case Kind::kPosInf: return neg_inf();
      case Kind::kFinite: break;
    }
    return ExtendedReal(-value_);
  }

  constexpr std::partial_ordering operator<=>(const ExtendedReal& o) const {
    if (kind_ != o.kind_) return static_cast<int>(kind_) <=> static_cast<int>(o.kind_);
    if (kind_ != Kind::kFinite) return std::partial_ordering::equivalent;
    return value_ <=> o.value_;
  }
  constexpr bool operator==(const ExtendedReal& o) const { return (*this <=> o) == 0; }

  std::string to_string() const;

 private:
  constexpr explicit ExtendedReal(Kind k) : kind_(k) {}

  Kind kind_ = Kind::kFinite;
  double value_ = 0.0;
};

/// Parses a decimal number or the literals "inf", "+inf", "-inf".
ExtendedReal parse_extended_real(const std::string& text);

/// Extended non-negative real in [0, inf]; used for the dimension-like
/// parameters m and q.
class Dimension {
 public:
  constexpr Dimension() = default;

  static Dimension finite(double v) {
    if (!(v >= 0.0)) throw std::domain_error("dimension must be non-negative, got " + std::to_string(v));
    Dimension d;
    d.value_ = v;
    return d;
  }
  static constexpr Dimension infinite() {
    Dimension d;
    d.infinite_ = true;
    return d;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  constexpr bool is_zero() const { return !infinite_ && value_ == 0.0; }

  double value() const {
    if (infinite_) throw std::domain_error("Dimension::value() called on infinity");
    return value_;
  }

  /// 1/d, with 1/inf = 0. Throws for d = 0.
  double reciprocal() const {
    if (infinite_) return 0.0;
    if (value_ == 0.0) throw std::domain_error("reciprocal of zero dimension");
    return 1.0 / value_;
  }

  constexpr std::partial_ordering operator<=>(const Dimension& o) const {
    if (infinite_ || o.infinite_) return static_cast<int>(infinite_) <=> static_cast<int>(o.infinite_);
    return value_ <=> o.value_;
  }
  constexpr bool operator==(const Dimension& o) const { return (*this <=> o) == 0; }

  std::string to_string() const;

 private:
  bool infinite_ = false;
  double value_ = 0.0;
};

/// Parses a non-negative number or "inf".
Dimension parse_dimension(const std::string& text);

}  // namespace cddiso
