#include "cddiso/extended.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "cddiso/errors.hpp"

namespace cddiso {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_finite(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParameterError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw ParameterError("trailing characters in number: '" + text + "'");
  if (!std::isfinite(v)) throw ParameterError("use the literal 'inf' for infinite values, got '" + text + "'");
  return v;
}

}  // namespace

std::string ExtendedReal::to_string() const {
  switch (kind_) {
    case Kind::kNegInf: return "-inf";
    case Kind::kPosInf: return "inf";
    case Kind::kFinite: break;
  }
  return format_double(value_);
}

ExtendedReal parse_extended_real(const std::string& text) {
  if (text == "inf" || text == "+inf") return ExtendedReal::pos_inf();
  if (text == "-inf") return ExtendedReal::neg_inf();
  return ExtendedReal(parse_finite(text));
}

std::string Dimension::to_string() const { return infinite_ ? "inf" : format_double(value_); }

Dimension parse_dimension(const std::string& text) {
  if (text == "inf" || text == "+inf") return Dimension::infinite();
  double v = parse_finite(text);
  if (v < 0.0) throw ParameterError("dimension must be non-negative, got '" + text + "'");
  return Dimension::finite(v);
}

}  // namespace cddiso
