#pragma once

#include <cstdint>
#include <string>

#include "resurgence/polyhedron.hpp"

namespace resurgence {

/// An element of {-inf} u Q u {+inf}.
class ExtendedRational {
 public:
  enum class Tag { NegInfinity, Finite, PosInfinity };

  ExtendedRational() : tag_(Tag::NegInfinity) {}
  ExtendedRational(Rational value) : tag_(Tag::Finite), value_(std::move(value)) { value_.canonicalize(); }

  static ExtendedRational neg_inf() { return ExtendedRational(); }
  static ExtendedRational pos_inf() {
    ExtendedRational r;
    r.tag_ = Tag::PosInfinity;
    return r;
  }
  static ExtendedRational ratio(std::int64_t num, std::int64_t den);

  Tag tag() const { return tag_; }
  bool is_finite() const { return tag_ == Tag::Finite; }
  /// The rational value; DomainError for infinities.
  const Rational& value() const;

  std::string to_string() const;

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);
  friend bool operator<(const ExtendedRational& a, const ExtendedRational& b);
  friend bool operator<=(const ExtendedRational& a, const ExtendedRational& b) { return !(b < a); }
  friend bool operator>(const ExtendedRational& a, const ExtendedRational& b) { return b < a; }
  friend bool operator>=(const ExtendedRational& a, const ExtendedRational& b) { return !(a < b); }

 private:
  Tag tag_;
  Rational value_;
};

/// Result of a beta or lambda search.
class SequenceValue {
 public:
  enum class Tag { Finite, ExceedsBound, EmptySet };

  static SequenceValue finite(std::int64_t value) { return SequenceValue(Tag::Finite, value); }
  static SequenceValue exceeds(std::int64_t bound) { return SequenceValue(Tag::ExceedsBound, bound); }
  static SequenceValue empty() { return SequenceValue(Tag::EmptySet, 0); }

  Tag tag() const { return tag_; }
  bool is_finite() const { return tag_ == Tag::Finite; }
  /// The finite value, or the cutoff for ExceedsBound.
  std::int64_t value() const { return value_; }

  std::string to_string() const;

  friend bool operator==(const SequenceValue&, const SequenceValue&) = default;

 private:
  SequenceValue(Tag tag, std::int64_t value) : tag_(tag), value_(value) {}
  Tag tag_;
  std::int64_t value_;
};

}  // namespace resurgence
