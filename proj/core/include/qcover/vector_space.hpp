#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qcover/field.hpp"

namespace qcover {

/// Packed vector of F_q^n: coordinate i occupies bits [i*w, (i+1)*w) where
/// w = bit width of q - 1. For q = 2 this is one bit per coordinate, so the
/// code equals the integer whose bit i is coordinate i.
using Code = std::uint64_t;

/// Hard cap on explicit vector enumeration.
inline constexpr std::uint64_t kVectorBudget = std::uint64_t{1} << 24;

/// The ambient space F_q^n. Immutable; shared by every vector and subspace
/// that lives in it.
class VectorSpace {
 public:
  static std::shared_ptr<const VectorSpace> create(std::shared_ptr<const Field> field, unsigned n);
  static std::shared_ptr<const VectorSpace> standard(std::uint32_t q, unsigned n);

  const Field& field() const { return *field_; }
  const std::shared_ptr<const Field>& field_ptr() const { return field_; }
  std::uint32_t q() const { return field_->order(); }
  unsigned dimension() const { return n_; }

  Element coord(Code v, unsigned i) const {
    return static_cast<Element>((v >> (i * width_)) & digit_mask_);
  }
  Code with_coord(Code v, unsigned i, Element c) const {
    const unsigned shift = i * width_;
    return (v & ~(digit_mask_ << shift)) | (static_cast<Code>(c) << shift);
  }
  Code unit(unsigned i) const { return Code{1} << (i * width_); }

  Code add(Code a, Code b) const;
  Code sub(Code a, Code b) const;
  Code scale(Element c, Code v) const;
  /// y + c*x
  Code axpy(Code y, Element c, Code x) const;
  /// Standard bilinear form sum_i a_i b_i.
  Element dot(Code a, Code b) const;

  /// Index of the first nonzero coordinate, or n for the zero vector.
  unsigned leading(Code v) const;

  /// q^n, saturated at UINT64_MAX.
  std::uint64_t vector_count() const;
  /// Vector whose coordinates are the base-q digits of t (digit i -> coordinate i).
  Code from_index(std::uint64_t t) const;
  std::uint64_t index_of(Code v) const;

  /// Digit string c_0 c_1 ... c_{n-1}; digits beyond 9 use a..z.
  std::string format(Code v) const;
  Code parse(std::string_view text) const;

  friend bool operator==(const VectorSpace& a, const VectorSpace& b) {
    return &a == &b || (a.n_ == b.n_ && *a.field_ == *b.field_);
  }

 private:
  VectorSpace(std::shared_ptr<const Field> field, unsigned n);

  std::shared_ptr<const Field> field_;
  unsigned n_;
  unsigned width_;
  Code digit_mask_;
};

using SpacePtr = std::shared_ptr<const VectorSpace>;

/// A vector of F_q^n together with its ambient space.
class VectorFq {
 public:
  VectorFq(SpacePtr space, Code code);

  static VectorFq zero(SpacePtr space) { return VectorFq(std::move(space), 0); }
  static VectorFq parse(SpacePtr space, std::string_view text);
  static VectorFq from_coords(SpacePtr space, const std::vector<Element>& coords);

  const VectorSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  Code code() const { return code_; }
  unsigned size() const { return space_->dimension(); }
  Element operator[](unsigned i) const { return space_->coord(code_, i); }
  bool is_zero() const { return code_ == 0; }
  std::string str() const { return space_->format(code_); }

  friend bool operator==(const VectorFq& a, const VectorFq& b) {
    return *a.space_ == *b.space_ && a.code_ == b.code_;
  }

 private:
  SpacePtr space_;
  Code code_;
};

/// Componentwise sum; mismatched q or n throws InvalidArgument.
VectorFq vec_add(const VectorFq& u, const VectorFq& v);
/// c * v with c an element of the coordinate field.
VectorFq vec_scale(Element c, const VectorFq& v);

inline VectorFq operator+(const VectorFq& u, const VectorFq& v) { return vec_add(u, v); }

}  // namespace qcover
