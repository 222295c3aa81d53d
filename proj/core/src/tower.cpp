#include "qcover/tower.hpp"

#include "qcover/error.hpp"

namespace qcover {

FieldTower::FieldTower(std::shared_ptr<const Field> base, std::shared_ptr<const Field> ext)
    : base_(std::move(base)), ext_(std::move(ext)) {
  if (!base_ || !ext_ || base_->characteristic() != ext_->characteristic() ||
      ext_->degree() % base_->degree() != 0) {
    throw InvalidArgument("incompatible field tower");
  }
  degree_ = ext_->degree() / base_->degree();
  space_ = VectorSpace::create(base_, degree_);

  const std::uint32_t q = base_->order();
  const std::uint32_t big = ext_->order();

  // Locate a root of the base modulus inside the subfield of order q.
  const std::uint32_t step = (big - 1) / (q - 1);
  const auto& poly = base_->modulus();
  Element root = 0;
  bool found = false;
  for (std::uint32_t t = 0; t < q - 1 && !found; ++t) {
    const Element y = ext_->alpha_pow(static_cast<std::int64_t>(t) * step);
    Element acc = 0;
    Element power = 1;
    for (unsigned c : poly) {
      acc = ext_->add(acc, ext_->mul(static_cast<Element>(c), power));
      power = ext_->mul(power, y);
    }
    if (acc == 0) {
      root = y;
      found = true;
    }
  }
  if (!found) throw InvalidArgument("incompatible field tower: base modulus has no root in the extension");

  embed_.assign(q, 0);
  for (std::uint32_t i = 0; i < q - 1; ++i) {
    embed_[base_->alpha_pow(i)] = ext_->pow(root, i);
  }

  to_code_.assign(big, 0);
  from_index_.assign(big, 0);
  std::vector<bool> hit(big, false);
  for (std::uint64_t t = 0; t < big; ++t) {
    const Code v = space_->from_index(t);
    Element value = 0;
    for (unsigned j = 0; j < degree_; ++j) {
      value = ext_->add(value, ext_->mul(embed_[space_->coord(v, j)], ext_->alpha_pow(j)));
    }
    if (hit[value]) throw InvalidArgument("incompatible field tower: powers of alpha are not a basis");
    hit[value] = true;
    to_code_[value] = v;
    from_index_[t] = value;
  }
}

Element FieldTower::from_code(Code v) const { return from_index_[space_->index_of(v)]; }

Code FieldTower::flatten(std::span<const Element> coords, const VectorSpace& target) const {
  if (!(target.field() == *base_) || target.dimension() != coords.size() * degree_) {
    throw InvalidArgument("flatten target does not match the tower");
  }
  Code out = 0;
  for (std::size_t j = 0; j < coords.size(); ++j) {
    const Code block = to_code_[coords[j]];
    for (unsigned i = 0; i < degree_; ++i) {
      out = target.with_coord(out, static_cast<unsigned>(j * degree_ + i), space_->coord(block, i));
    }
  }
  return out;
}

VectorFq FieldTower::flatten(std::span<const Element> coords) const {
  auto target = VectorSpace::create(base_, static_cast<unsigned>(coords.size() * degree_));
  const Code c = flatten(coords, *target);
  return VectorFq(std::move(target), c);
}

VectorFq field_to_vector(const FieldTower& tower, Element a) { return tower.to_vector(a); }

}  // namespace qcover
