#pragma once

#include <memory>
#include <span>
#include <vector>

#include "qcover/field.hpp"
#include "qcover/vector_space.hpp"

namespace qcover {

/// GF(q^m) viewed as the vector space F_q^m over a subfield GF(q).
///
/// The subfield is identified with the base field through a root of the base
/// field's modulus, and coordinates are taken in the basis 1, a, ..., a^{m-1}
/// where a is the extension's primitive element. Both directions are table
/// lookups.
class FieldTower {
 public:
  /// ext must be GF(p^{em}) over base GF(p^e); anything else is an
  /// incompatible tower (InvalidArgument).
  FieldTower(std::shared_ptr<const Field> base, std::shared_ptr<const Field> ext);

  const Field& base() const { return *base_; }
  const Field& ext() const { return *ext_; }
  const std::shared_ptr<const Field>& ext_ptr() const { return ext_; }
  unsigned relative_degree() const { return degree_; }
  /// F_q^m with q = |base|.
  const SpacePtr& space() const { return space_; }

  /// Image of a base-field element inside the extension.
  Element embed(Element base_element) const { return embed_[base_element]; }

  Code to_code(Element a) const { return to_code_[a]; }
  Element from_code(Code v) const;
  VectorFq to_vector(Element a) const { return VectorFq(space_, to_code_[a]); }

  /// Flattens (x_0, ..., x_{l-1}) over GF(q^m) to the F_q^{lm} vector whose
  /// block j holds the coordinates of x_j.
  Code flatten(std::span<const Element> coords, const VectorSpace& target) const;
  VectorFq flatten(std::span<const Element> coords) const;

 private:
  std::shared_ptr<const Field> base_;
  std::shared_ptr<const Field> ext_;
  unsigned degree_;
  SpacePtr space_;
  std::vector<Element> embed_;
  std::vector<Code> to_code_;
  std::vector<Element> from_index_;
};

/// field_to_vector for a prime-field tower: the coefficient vector of a.
VectorFq field_to_vector(const FieldTower& tower, Element a);

}  // namespace qcover
