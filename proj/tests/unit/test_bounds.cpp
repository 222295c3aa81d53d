#include <doctest.h>

#include <sstream>

#include "oracle.hpp"
#include "qcover/bounds.hpp"
#include "qcover/constructions.hpp"
#include "qcover/error.hpp"

using namespace qcover;

namespace {

std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::uint64_t cdiv(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

// Top-down Schonheim recursion in plain integers.
std::uint64_t schonheim_ref(unsigned n, unsigned k, unsigned r, std::uint64_t q) {
  if (r == 1) return cdiv(upow(q, n) - 1, upow(q, k) - 1);
  return cdiv((upow(q, n) - 1) * schonheim_ref(n - 1, k - 1, r - 1, q), upow(q, k) - 1);
}

BigCount big(std::uint64_t v) { return BigCount(v); }

}  // namespace

TEST_CASE("gaussian coefficients") {
  CHECK(gaussian(4, 2, 2) == oracle::all_subspaces(2, 4, 2).size());
  CHECK(gaussian(4, 2, 2) == 35);
  CHECK(gaussian(7, 2, 2) == 2667);
  CHECK(gaussian(3, 2, 2) == 7);
  CHECK(gaussian(9, 0, 5) == 1);
  CHECK(gaussian(3, 4, 2) == 0);
  CHECK(gaussian(40, 20, 2) > BigCount(std::numeric_limits<std::uint64_t>::max()));
  for (std::uint32_t q : {2u, 3u, 4u, 7u}) {
    for (unsigned n = 0; n <= 12; ++n) {
      for (unsigned l = 0; l <= n; ++l) {
        CHECK(gaussian(n, l, q) == gaussian(n, n - l, q));
        if (l >= 1 && n >= 1) {
          // Pascal-type identity [n l] = [n-1 l-1] + q^l [n-1 l]
          CHECK(gaussian(n, l, q) == gaussian(n - 1, l - 1, q) + big(upow(q, l)) * gaussian(n - 1, l, q));
        }
      }
    }
  }
}

TEST_CASE("exact rational helpers") {
  CHECK(ceil_div(7, 7) == 1);
  CHECK(ceil_div(8, 7) == 2);
  CHECK(ceil_div(0, 7) == 0);
  CHECK_THROWS_AS(ceil_div(1, 0), InvalidArgument);
  CHECK(ceil(Rational(217, 9)) == 25);
  CHECK(basic_ratio(7, 3, 2, 2) == Rational(381));
  CHECK(basic_ratio(5, 3, 2, 2) == Rational(155, 7));
}

TEST_CASE("ratio bound") {
  CHECK(basic_lower(7, 3, 2, 2) == 381);
  CHECK(basic_lower(5, 3, 2, 2) == 23);
  CHECK(basic_lower(6, 4, 4, 2) == gaussian(6, 4, 2));
  CHECK_THROWS_AS(basic_lower(3, 4, 2, 2), InvalidArgument);
  CHECK_THROWS_AS(basic_lower(5, 3, 0, 2), InvalidArgument);
  CHECK_THROWS_AS(basic_lower(5, 3, 2, 6), InvalidArgument);
}

TEST_CASE("Schonheim bound") {
  CHECK(schonheim_lower(5, 3, 2, 2) == 23);
  for (unsigned n = 6; n <= 12; ++n) CHECK(schonheim_lower(n, n - 2, 2, 2) == 21);
  for (std::uint32_t q : {2u, 3u}) {
    for (unsigned n = 1; n <= (q == 2 ? 9u : 6u); ++n) {
      for (unsigned k = 1; k <= n; ++k) {
        for (unsigned r = 1; r <= k; ++r) {
          CAPTURE(n);
          CAPTURE(k);
          CAPTURE(r);
          CHECK(schonheim_lower(n, k, r, q) == schonheim_ref(n, k, r, q));
          CHECK(schonheim_lower(n, k, r, q) >= basic_lower(n, k, r, q));
        }
        CHECK(schonheim_lower(n, k, 1, q) == cdiv(upow(q, n) - 1, upow(q, k) - 1));
      }
    }
  }
}

TEST_CASE("de Caen bound") {
  CHECK(decaen_lower(5, 3, 2) == 25);
  CHECK(decaen_turan_lower(4, 2, 2) == 5);
  for (std::uint32_t q : {2u, 3u}) {
    for (unsigned n = 2; n <= 9; ++n) {
      for (unsigned k = 1; k < n; ++k) CHECK(decaen_lower(n, k, q) == decaen_turan_lower(n, n - k, q));
      // never above the hyperplane value it must respect
      if (n >= 3) CHECK(decaen_lower(n, n - 1, q) <= (upow(q, n - 1) - 1) / (q - 1));
    }
  }
  CHECK_THROWS_AS(decaen_lower(4, 4, 2), InvalidArgument);
  CHECK_THROWS_AS(decaen_turan_lower(4, 0, 2), InvalidArgument);
}

TEST_CASE("exact values") {
  CHECK(exact_value(4, 2, 1, 2)->value == 5);
  CHECK(exact_value(4, 3, 2, 2)->value == 7);
  CHECK(exact_value(5, 3, 2, 2)->value == 27);
  CHECK(exact_value(5, 3, 2, 2)->source == "known-value");
  CHECK(exact_value(6, 6, 3, 3)->value == 1);
  CHECK(exact_value(6, 3, 3, 2)->value == gaussian(6, 3, 2));
  CHECK(!exact_value(7, 3, 2, 2));
  CHECK(!exact_value(6, 4, 2, 2));
  // consistency with the other bounds wherever an exact value exists
  for (std::uint32_t q : {2u, 3u}) {
    for (unsigned n = 1; n <= 8; ++n) {
      for (unsigned k = 1; k <= n; ++k) {
        for (unsigned r = 1; r <= k; ++r) {
          const auto e = exact_value(n, k, r, q);
          if (!e) continue;
          CHECK(e->value >= schonheim_lower(n, k, r, q));
          if (k < n && r + 1 == k) CHECK(e->value >= decaen_lower(n, k, q));
          CHECK(e->value <= covering_upper_trivial(n, k, r, q));
        }
      }
    }
  }
}

TEST_CASE("Turan-subspace bounds") {
  for (std::uint32_t q : {2u, 3u}) {
    for (unsigned n = 1; n <= 7; ++n) {
      for (unsigned k = 1; k <= n; ++k) CHECK(turan_upper(n, k, 1, q) == (upow(q, n - k + 1) - 1) / (q - 1));
    }
  }
  CHECK(covering_upper_trivial(5, 3, 2, 2) == 35);
  CHECK(covering_upper_trivial(6, 3, 3, 2) == gaussian(6, 3, 2));
  CHECK(covering_upper_trivial(4, 4, 2, 2) == 1);
}

TEST_CASE("recursive upper bound") {
  UpperLookup known = [](unsigned m, unsigned j, unsigned s) -> std::optional<BigCount> {
    if (m == 4 && j == 2 && s == 1) return BigCount(5);
    if (m == 4 && j == 3 && s == 2) return BigCount(7);
    return std::nullopt;
  };
  CHECK(recursive_upper(5, 3, 2, 2, known) == 27);
  CHECK_THROWS_AS(recursive_upper(6, 3, 2, 2, known), InvalidArgument);
  CHECK_THROWS_AS(recursive_upper(5, 5, 2, 2, known), InvalidArgument);

  UpperLookup full = [](unsigned m, unsigned j, unsigned) -> std::optional<BigCount> {
    if (j == m) return BigCount(1);
    return std::nullopt;
  };
  // r = 1 takes 1 for the first term without a lookup
  CHECK(recursive_upper(4, 3, 1, 2, full) == 3);
}

TEST_CASE("recursion family g(n) matches its closed form") {
  // g(n) bounds C_2(n, n-2, n-3); g(4) = 5
  std::map<unsigned, BigCount> g{{4, 5}};
  for (unsigned n = 5; n <= 20; ++n) {
    UpperLookup lookup = [&](unsigned m, unsigned j, unsigned s) -> std::optional<BigCount> {
      if (m == n - 1 && j == n - 3 && s == n - 4) return g.at(n - 1);
      if (m == n - 1 && j == n - 2 && s == n - 3) return exact_value(m, j, s, 2)->value;
      return std::nullopt;
    };
    g[n] = recursive_upper(n, n - 2, n - 3, 2, lookup);
    const BigCount e = BigCount(1) << (2 * n - 8);
    const BigCount closed = 9 * e - (BigCount(1) << (n - 2)) - (e - 1) / 3;
    CAPTURE(n);
    CHECK(g[n] == closed);
    CHECK(g[n] == 4 * g[n - 1] + (BigCount(1) << (n - 2)) - 1);
  }
  CHECK(g[5] == 27);
}

TEST_CASE("bound table without registered designs") {
  const BoundTable t = BoundTable::build(2, 8);
  const auto& r532 = t.at(5, 3, 2);
  CHECK(r532.lower == 27);
  CHECK(r532.lower_source == "exact:known-value");
  CHECK(r532.upper == 27);
  CHECK(r532.upper_source == "recursive");
  CHECK(r532.exact());
  CHECK(t.at(7, 3, 2).lower == 381);
  CHECK(t.at(7, 3, 2).upper > 399);
  for (unsigned n = 6; n <= 8; ++n) {
    CHECK(t.at(n, n - 2, 2).lower == 21);
    CHECK(t.at(n, n - 2, 2).upper == 27);
  }
  for (const auto& rec : t.records()) {
    CHECK(rec.lower <= rec.upper);
    CHECK(rec.lower >= schonheim_lower(rec.n, rec.k, rec.r, 2));
    CHECK(rec.upper <= covering_upper_trivial(rec.n, rec.k, rec.r, 2));
    if (rec.r == 1) {
      CHECK(rec.exact());
      CHECK(rec.upper == cdiv(upow(2, rec.n) - 1, upow(2, rec.k) - 1));
    }
    if (auto e = exact_value(rec.n, rec.k, rec.r, 2)) {
      CHECK(rec.lower == e->value);
      CHECK(rec.upper == e->value);
    }
  }
  CHECK(t.records().size() == 120);
  CHECK(t.find(3, 4, 1) == nullptr);
  CHECK_THROWS_AS(t.at(9, 3, 2), InvalidArgument);
}

TEST_CASE("bound table propagation is a fixed point") {
  BoundTable t = BoundTable::build(3, 7);
  const auto before = t.records();
  CHECK(!t.propagate());
  const auto after = t.records();
  REQUIRE(before.size() == after.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK(before[i].lower == after[i].lower);
    CHECK(before[i].upper == after[i].upper);
    CHECK(before[i].upper_source == after[i].upper_source);
  }
}

TEST_CASE("registered constructions tighten the table") {
  const auto regs = known_coverings(2, 7);
  REQUIRE(regs.size() == 1);
  CHECK(regs[0].size() == 399);
  CHECK(regs[0].source() == "cyclic-399");
  const BoundTable t = BoundTable::build(2, 7, regs);
  CHECK(t.at(7, 3, 2).lower == 381);
  CHECK(t.at(7, 3, 2).upper == 399);
  CHECK(t.at(7, 3, 2).upper_source == "construction:cyclic-399");
  CHECK(known_coverings(2, 6).empty());
  CHECK(known_coverings(3, 12).empty());

  auto space = VectorSpace::standard(2, 4);
  std::vector<Code> g{space->parse("1000"), space->parse("0100")};
  const SubspaceDesign weak(space, 2, {Subspace::span(space, g)});
  CHECK_THROWS_AS(register_covering(weak, 1, "weak"), VerificationFailed);
}

TEST_CASE("Turan numbers read through the covering table") {
  const BoundTable t = BoundTable::build(2, 6);
  for (unsigned n = 2; n <= 6; ++n) {
    for (unsigned k = 1; k < n; ++k) {
      for (unsigned r = 1; r <= k; ++r) {
        const auto tr = t.turan(n, k, r);
        const auto& c = t.at(n, n - r, n - k);
        CHECK(tr.lower == c.lower);
        CHECK(tr.upper == c.upper);
        CHECK(tr.k == k);
        CHECK(tr.r == r);
      }
    }
  }
  // T_2(4,2,1) = 7 and the de Caen form for T_2(4,3,2)
  CHECK(t.turan(4, 2, 1).upper == 7);
  CHECK(t.turan(4, 2, 1).exact());
  CHECK(t.turan(4, 3, 2).lower >= decaen_turan_lower(4, 2, 2));
  CHECK_THROWS_AS(t.turan(4, 4, 1), InvalidArgument);
}

TEST_CASE("table export formats") {
  const BoundTable t = BoundTable::build(2, 3);
  std::ostringstream csv;
  t.write_csv(csv);
  const std::string c = csv.str();
  CHECK(c.rfind(std::string(kBoundColumns) + "\n", 0) == 0);
  CHECK(c.find("\n3,2,1,3,exact:line-cover,3,") != std::string::npos);
  std::size_t lines = 0;
  for (char ch : c) lines += ch == '\n';
  CHECK(lines == 1 + t.records().size());

  std::ostringstream text;
  t.write_text(text);
  std::istringstream in(text.str());
  std::string header;
  std::getline(in, header);
  CHECK(header.find("lower_src") != std::string::npos);
  CHECK(header.find("upper_src") != std::string::npos);
  CHECK(header.back() == 't');
}
