#include "qcover/vector_space.hpp"

#include <bit>
#include <limits>
#include <map>
#include <mutex>

#include "qcover/error.hpp"

namespace qcover {

VectorSpace::VectorSpace(std::shared_ptr<const Field> field, unsigned n)
    : field_(std::move(field)), n_(n) {
  width_ = static_cast<unsigned>(std::bit_width(field_->order() - 1));
  digit_mask_ = (Code{1} << width_) - 1;
}

SpacePtr VectorSpace::create(std::shared_ptr<const Field> field, unsigned n) {
  if (!field) throw InvalidArgument("vector space without a field");
  const unsigned width = static_cast<unsigned>(std::bit_width(field->order() - 1));
  if (n * width > 64) {
    throw InvalidArgument("F_" + std::to_string(field->order()) + "^" + std::to_string(n) +
                          " does not fit the 64-bit packed vector encoding");
  }
  return SpacePtr(new VectorSpace(std::move(field), n));
}

SpacePtr VectorSpace::standard(std::uint32_t q, unsigned n) {
  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, unsigned>, SpacePtr> cache;
  auto field = Field::standard(q);
  std::lock_guard lock(mutex);
  if (auto it = cache.find({q, n}); it != cache.end()) return it->second;
  auto space = create(std::move(field), n);
  cache.emplace(std::make_pair(q, n), space);
  return space;
}

Code VectorSpace::add(Code a, Code b) const {
  if (width_ == 1) return a ^ b;
  Code out = 0;
  for (unsigned i = 0; i < n_; ++i) {
    out |= static_cast<Code>(field_->add(coord(a, i), coord(b, i))) << (i * width_);
  }
  return out;
}

Code VectorSpace::sub(Code a, Code b) const {
  if (width_ == 1) return a ^ b;
  Code out = 0;
  for (unsigned i = 0; i < n_; ++i) {
    out |= static_cast<Code>(field_->sub(coord(a, i), coord(b, i))) << (i * width_);
  }
  return out;
}

Code VectorSpace::scale(Element c, Code v) const {
  if (c == 0) return 0;
  if (c == 1) return v;
  Code out = 0;
  for (unsigned i = 0; i < n_; ++i) {
    out |= static_cast<Code>(field_->mul(c, coord(v, i))) << (i * width_);
  }
  return out;
}

Code VectorSpace::axpy(Code y, Element c, Code x) const {
  if (c == 0) return y;
  if (width_ == 1) return y ^ x;
  return add(y, scale(c, x));
}

Element VectorSpace::dot(Code a, Code b) const {
  if (width_ == 1) return static_cast<Element>(std::popcount(a & b) & 1);
  Element acc = 0;
  for (unsigned i = 0; i < n_; ++i) {
    acc = field_->add(acc, field_->mul(coord(a, i), coord(b, i)));
  }
  return acc;
}

unsigned VectorSpace::leading(Code v) const {
  if (v == 0) return n_;
  return static_cast<unsigned>(std::countr_zero(v)) / width_;
}

std::uint64_t VectorSpace::vector_count() const {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < n_; ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / q()) return std::numeric_limits<std::uint64_t>::max();
    count *= q();
  }
  return count;
}

Code VectorSpace::from_index(std::uint64_t t) const {
  if (width_ == 1) return t;
  Code out = 0;
  for (unsigned i = 0; i < n_; ++i) {
    out |= static_cast<Code>(t % q()) << (i * width_);
    t /= q();
  }
  return out;
}

std::uint64_t VectorSpace::index_of(Code v) const {
  if (width_ == 1) return v;
  std::uint64_t t = 0;
  for (unsigned i = n_; i-- > 0;) t = t * q() + coord(v, i);
  return t;
}

std::string VectorSpace::format(Code v) const {
  if (q() > 36) throw InvalidArgument("digit-string vectors need q <= 36");
  std::string out(n_, '0');
  for (unsigned i = 0; i < n_; ++i) {
    const Element d = coord(v, i);
    out[i] = static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10));
  }
  return out;
}

Code VectorSpace::parse(std::string_view text) const {
  if (text.size() != n_) {
    throw InvalidArgument("vector '" + std::string(text) + "' has " + std::to_string(text.size()) +
                          " digits, expected " + std::to_string(n_));
  }
  Code out = 0;
  for (unsigned i = 0; i < n_; ++i) {
    const char ch = text[i];
    unsigned d;
    if (ch >= '0' && ch <= '9') {
      d = static_cast<unsigned>(ch - '0');
    } else if (ch >= 'a' && ch <= 'z') {
      d = static_cast<unsigned>(ch - 'a' + 10);
    } else {
      throw InvalidArgument("invalid digit '" + std::string(1, ch) + "' in vector '" + std::string(text) + "'");
    }
    if (d >= q()) {
      throw InvalidArgument("digit '" + std::string(1, ch) + "' out of range for q = " + std::to_string(q()));
    }
    out |= static_cast<Code>(d) << (i * width_);
  }
  return out;
}

VectorFq::VectorFq(SpacePtr space, Code code) : space_(std::move(space)), code_(code) {
  if (!space_) throw InvalidArgument("vector without an ambient space");
}

VectorFq VectorFq::parse(SpacePtr space, std::string_view text) {
  const Code c = space->parse(text);
  return VectorFq(std::move(space), c);
}

VectorFq VectorFq::from_coords(SpacePtr space, const std::vector<Element>& coords) {
  if (coords.size() != space->dimension()) throw InvalidArgument("coordinate count does not match ambient dimension");
  Code c = 0;
  for (unsigned i = 0; i < coords.size(); ++i) {
    if (coords[i] >= space->q()) throw InvalidArgument("coordinate out of range");
    c = space->with_coord(c, i, coords[i]);
  }
  return VectorFq(std::move(space), c);
}

VectorFq vec_add(const VectorFq& u, const VectorFq& v) {
  if (!(u.space() == v.space())) {
    throw InvalidArgument("cannot add vectors of F_" + std::to_string(u.space().q()) + "^" +
                          std::to_string(u.size()) + " and F_" + std::to_string(v.space().q()) + "^" +
                          std::to_string(v.size()));
  }
  return VectorFq(u.space_ptr(), u.space().add(u.code(), v.code()));
}

VectorFq vec_scale(Element c, const VectorFq& v) {
  if (c >= v.space().q()) throw InvalidArgument("scalar out of range for F_" + std::to_string(v.space().q()));
  return VectorFq(v.space_ptr(), v.space().scale(c, v.code()));
}

}  // namespace qcover
