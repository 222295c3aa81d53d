#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qcover/bounds.hpp"
#include "qcover/design.hpp"
#include "qcover/field.hpp"

namespace qcover {

// Every construction here runs the matching verifier on its output and throws
// VerificationFailed if it does not pass. Inputs documented as "verified" are
// checked the same way before use.

/// All r-subspaces of F_q^n, a Steiner structure S_q[r, r, n].
SubspaceDesign trivial_steiner(std::uint32_t q, unsigned n, unsigned r);
/// The single block F_q^n, a Steiner structure S_q[1, n, n].
SubspaceDesign full_space_steiner(std::uint32_t q, unsigned n);

/// k-spread of F_q^n (needs k | n): the multiplicative cosets of GF(q^k)* in
/// GF(q^n)*, written in coordinates over GF(q). `modulus` picks the
/// polynomial for GF(q^n) over the prime field; the default is the built-in one.
SubspaceDesign spread(std::uint32_t q, unsigned k, unsigned n,
                      std::optional<Field::Polynomial> modulus = std::nullopt);

/// Turns a C_q[n, k, 1] into a C_q[n+delta, k+delta, 1] of the same size by
/// replacing each block P with P x F_q^delta.
SubspaceDesign lift_covering(const SubspaceDesign& d, unsigned delta);

struct PartialSpreadResult {
  std::vector<Subspace> blocks;  // rho-dimensional
  Subspace residual;             // m-dimensional, the last m coordinates
};

/// rho-subspaces plus one m-subspace partitioning the points of F_q^n, where
/// n = s*rho + m with s >= 1 and rho < m < 2*rho. Block count is
/// (q^n - q^m) / (q^rho - 1).
PartialSpreadResult partial_spread(std::uint32_t q, unsigned rho, unsigned n);

/// True if every nonzero vector of the ambient space lies in exactly one of
/// the given subspaces.
bool is_point_partition(std::span<const Subspace> parts);

/// A C_q[n, k, 1] of the optimal size ceil((q^n - 1) / (q^k - 1)).
SubspaceDesign optimal_line_covering(std::uint32_t q, unsigned n, unsigned k);

struct TuranPointDesign {
  /// All points of the span of the first n-k+1 unit vectors; a T_q[n, k, 1].
  SubspaceDesign turan;
  /// Its blockwise complement, a C_q[n, n-1, n-k]. Only verified when k < n.
  SubspaceDesign dual_covering;
};

TuranPointDesign turan_point_design(std::uint32_t q, unsigned n, unsigned k);

/// Builds a C_q[n, k, r] of size q^{n-k}|s1| + |s2| from a C_q[n-1, k-1, r-1]
/// s1 and a C_q[n-1, k, r] s2. The new coordinate is the last one: each block
/// P of s1 is extended by one coset representative of P with last entry 1 for
/// every coset, and each block of s2 is kept in the hyperplane x_{n-1} = 0.
/// For r = 1 the first input is not checked beyond its dimensions.
SubspaceDesign recursive_covering(const SubspaceDesign& s1, const SubspaceDesign& s2, unsigned r);

/// The 399-block C_2[7, 3, 2] built from cyclic shifts in GF(64).
SubspaceDesign cyclic_covering_7_3_2();

/// 2^{n-k} (2^n - 1)(2^{n-1} - 1) / ((2^k - 1)(2^{k-1} - 1)).
std::uint64_t expansion_block_count(unsigned n, unsigned k);

/// Point index of a vector of F_2^n: its bit string read with coordinate 0 as
/// the most significant bit.
std::uint32_t binary_point_index(const VectorSpace& space, Code v);

/// Expands a Steiner structure S_2[2, k, n] to the Steiner system
/// S(3, 2^k, 2^n) formed by all cosets of all blocks.
SetSystem expand_to_steiner_system(const SubspaceDesign& s);

/// From a Steiner structure S_q[t, k, n] and a point P, takes the blocks
/// through P, intersects them with the coordinate hyperplane at P's pivot and
/// drops that coordinate. The result is checked as an S_q[t-1, k-1, n-1].
SubspaceDesign derive_steiner(const SubspaceDesign& s, unsigned t, const Subspace& point);

/// Greedy C_q[n, k, r]: repeatedly takes the k-subspace covering the most
/// uncovered r-subspaces, earliest in enumeration order on ties.
SubspaceDesign greedy_covering(std::uint32_t q, unsigned n, unsigned k, unsigned r);

/// Verified constructions worth feeding into a BoundTable for this q and
/// n <= n_max. For q = 2 and n_max >= 7 this is the 399-block C_2[7, 3, 2].
std::vector<RegisteredCovering> known_coverings(std::uint32_t q, unsigned n_max);

/// Copies s into `target` with coordinate i moved to offset + i.
Subspace embed_subspace(const Subspace& s, const SpacePtr& target, unsigned offset);

}  // namespace qcover
