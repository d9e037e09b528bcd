#include "resurgence/extended.hpp"

#include "resurgence/errors.hpp"

namespace resurgence {

ExtendedRational ExtendedRational::ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  q.canonicalize();
  return ExtendedRational(q);
}

const Rational& ExtendedRational::value() const {
  if (tag_ != Tag::Finite) throw DomainError("infinite value has no rational representative");
  return value_;
}

std::string ExtendedRational::to_string() const {
  switch (tag_) {
    case Tag::NegInfinity: return "-inf";
    case Tag::PosInfinity: return "inf";
    case Tag::Finite: return value_.get_str();
  }
  return "";
}

bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.tag_ != b.tag_) return false;
  return a.tag_ != ExtendedRational::Tag::Finite || a.value_ == b.value_;
}

bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.tag_ != b.tag_) return static_cast<int>(a.tag_) < static_cast<int>(b.tag_);
  return a.tag_ == ExtendedRational::Tag::Finite && a.value_ < b.value_;
}

std::string SequenceValue::to_string() const {
  switch (tag_) {
    case Tag::Finite: return std::to_string(value_);
    case Tag::ExceedsBound: return ">" + std::to_string(value_);
    case Tag::EmptySet: return "empty";
  }
  return "";
}

}  // namespace resurgence
