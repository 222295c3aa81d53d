#include "qcover/bounds.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "qcover/error.hpp"

namespace qcover {

namespace {

BigCount qpow(std::uint32_t q, unsigned e) {
  BigCount r = 1;
  for (unsigned i = 0; i < e; ++i) r *= q;
  return r;
}

// q^e - 1
BigCount qm1(std::uint32_t q, unsigned e) { return qpow(q, e) - 1; }

void require_q(std::uint32_t q) {
  if (!prime_power(q)) throw InvalidArgument("q = " + std::to_string(q) + " is not a prime power");
}

void require_params(unsigned n, unsigned k, unsigned r, std::uint32_t q) {
  require_q(q);
  if (!(1 <= r && r <= k && k <= n)) {
    throw InvalidArgument("need 1 <= r <= k <= n, got (n, k, r) = (" + std::to_string(n) + ", " +
                          std::to_string(k) + ", " + std::to_string(r) + ")");
  }
}

std::string key_str(unsigned n, unsigned k, unsigned r) {
  return "(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(r) + ")";
}

}  // namespace

BigCount gaussian(unsigned n, unsigned l, std::uint32_t q) {
  if (q < 2) throw InvalidArgument("gaussian coefficient needs q >= 2");
  if (l > n) return 0;
  BigCount num = 1;
  BigCount den = 1;
  for (unsigned i = 0; i < l; ++i) {
    num *= qm1(q, n - i);
    den *= qm1(q, i + 1);
  }
  return num / den;
}

BigCount ceil_div(const BigCount& num, const BigCount& den) {
  if (den <= 0) throw InvalidArgument("ceil_div needs a positive denominator");
  BigCount quot = num / den;
  if (quot * den < num) ++quot;
  return quot;
}

BigCount ceil(const Rational& x) {
  return ceil_div(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}

Rational basic_ratio(unsigned n, unsigned k, unsigned r, std::uint32_t q) {
  require_params(n, k, r, q);
  return Rational(gaussian(n, r, q), gaussian(k, r, q));
}

BigCount basic_lower(unsigned n, unsigned k, unsigned r, std::uint32_t q) { return ceil(basic_ratio(n, k, r, q)); }

BigCount schonheim_lower(unsigned n, unsigned k, unsigned r, std::uint32_t q) {
  require_params(n, k, r, q);
  // level j bounds C(n-r+j, k-r+j, j)
  BigCount value = ceil_div(qm1(q, n - r + 1), qm1(q, k - r + 1));
  for (unsigned j = 2; j <= r; ++j) {
    value = ceil_div(qm1(q, n - r + j) * value, qm1(q, k - r + j));
  }
  return value;
}

BigCount decaen_lower(unsigned n, unsigned k, std::uint32_t q) {
  require_q(q);
  if (!(1 <= k && k < n)) throw InvalidArgument("de Caen bound needs 1 <= k < n");
  const BigCount den = qm1(q, n - k) * qm1(q, n - k);
  return ceil_div(qm1(q, k) * (q - 1) * gaussian(n, k + 1, q), den);
}

BigCount decaen_turan_lower(unsigned n, unsigned r, std::uint32_t q) {
  require_q(q);
  if (!(1 <= r && r < n)) throw InvalidArgument("de Caen bound needs 1 <= r < n");
  const BigCount den = qm1(q, r) * qm1(q, r);
  return ceil_div(qm1(q, n - r) * (q - 1) * gaussian(n, r - 1, q), den);
}

std::optional<ExactValue> exact_value(unsigned n, unsigned k, unsigned r, std::uint32_t q) {
  require_params(n, k, r, q);
  if (k == n) return ExactValue{1, "full-space"};
  if (r == k) return ExactValue{gaussian(n, k, q), "all-subspaces"};
  if (r == 1) return ExactValue{ceil_div(qm1(q, n), qm1(q, k)), "line-cover"};
  if (k == n - 1) return ExactValue{qm1(q, r + 1) / (q - 1), "hyperplane-cover"};
  if (q == 2 && n == 5 && k == 3 && r == 2) return ExactValue{27, "known-value"};
  return std::nullopt;
}

BigCount turan_upper(unsigned n, unsigned k, unsigned r, std::uint32_t q) {
  require_q(q);
  if (!(r <= k && k <= n)) throw InvalidArgument("Turan bound needs r <= k <= n");
  return gaussian(n - k + r, r, q);
}

BigCount covering_upper_trivial(unsigned n, unsigned k, unsigned r, std::uint32_t q) {
  require_params(n, k, r, q);
  return turan_upper(n, n - r, n - k, q);
}

BigCount recursive_upper(unsigned n, unsigned k, unsigned r, std::uint32_t q, const UpperLookup& lookup) {
  require_params(n, k, r, q);
  if (k >= n) throw InvalidArgument("recursive bound needs k < n");
  BigCount first = 1;
  if (r > 1) {
    auto v = lookup(n - 1, k - 1, r - 1);
    if (!v) throw InvalidArgument("recursive bound: no upper bound for " + key_str(n - 1, k - 1, r - 1));
    first = *v;
  }
  auto second = lookup(n - 1, k, r);
  if (!second) throw InvalidArgument("recursive bound: no upper bound for " + key_str(n - 1, k, r));
  return qpow(q, n - k) * first + *second;
}

RegisteredCovering register_covering(const SubspaceDesign& d, unsigned r, std::string source,
                                     const VerifyOptions& options) {
  const auto report = verify_covering(d, r, options);
  if (!report.is_covering) {
    throw VerificationFailed("design '" + source + "' is not a covering at r = " + std::to_string(r));
  }
  return RegisteredCovering(d.q(), d.n(), d.block_dimension(), r, d.size(), std::move(source));
}

BoundTable BoundTable::build(std::uint32_t q, unsigned n_max, std::span<const RegisteredCovering> registered) {
  require_q(q);
  if (n_max < 1) throw InvalidArgument("bound table needs n_max >= 1");
  BoundTable table(q, n_max);
  table.registered_.assign(registered.begin(), registered.end());

  for (unsigned n = 1; n <= n_max; ++n) {
    for (unsigned k = 1; k <= n; ++k) {
      for (unsigned r = 1; r <= k; ++r) {
        BoundRecord rec;
        rec.q = q;
        rec.n = n;
        rec.k = k;
        rec.r = r;

        // Ties keep the earlier candidate.
        std::vector<std::pair<BigCount, std::string>> lower;
        std::vector<std::pair<BigCount, std::string>> upper;
        const auto exact = exact_value(n, k, r, q);

        if (exact) lower.emplace_back(exact->value, "exact:" + exact->source);
        lower.emplace_back(schonheim_lower(n, k, r, q), "schonheim");
        if (k < n && r + 1 == k) lower.emplace_back(decaen_lower(n, k, q), "de-caen");
        lower.emplace_back(basic_lower(n, k, r, q), "ratio");

        for (const auto& reg : table.registered_) {
          if (reg.q() == q && reg.n() == n && reg.k() == k && reg.r() == r) {
            upper.emplace_back(reg.size(), "construction:" + reg.source());
          }
        }
        if (exact) upper.emplace_back(exact->value, "exact:" + exact->source);
        upper.emplace_back(covering_upper_trivial(n, k, r, q), "turan-subspace");
        upper.emplace_back(gaussian(n, k, q), "all-subspaces");

        rec.lower = lower.front().first;
        rec.lower_source = lower.front().second;
        for (auto& [v, src] : lower) {
          if (v > rec.lower) {
            rec.lower = v;
            rec.lower_source = src;
          }
        }
        rec.upper = upper.front().first;
        rec.upper_source = upper.front().second;
        for (auto& [v, src] : upper) {
          if (v < rec.upper) {
            rec.upper = v;
            rec.upper_source = src;
          }
        }
        table.entries_.emplace(std::make_tuple(n, k, r), std::move(rec));
      }
    }
  }
  // Each sweep moves information up by one n; n_max + 1 sweeps always settle.
  for (unsigned sweep = 0; sweep <= n_max + 1 && table.propagate(); ++sweep) {
  }
  return table;
}

bool BoundTable::propagate() {
  bool changed = false;
  auto lookup = [this](unsigned m, unsigned j, unsigned s) -> std::optional<BigCount> {
    if (const auto* rec = find(m, j, s)) return rec->upper;
    return std::nullopt;
  };
  for (auto& [key, rec] : entries_) {
    const auto [n, k, r] = key;

    // Schonheim step over the table's own lower bound for (n-1, k-1, r-1).
    if (n > 1 && k > 1 && r > 1) {
      if (const auto* sub = find(n - 1, k - 1, r - 1)) {
        const BigCount step = ceil_div(qm1(q_, n) * sub->lower, qm1(q_, k));
        if (step > rec.lower) {
          rec.lower = step;
          rec.lower_source = "schonheim-table";
          changed = true;
        }
      }
    }

    if (k < n) {
      const bool have_first = r == 1 || find(n - 1, k - 1, r - 1) != nullptr;
      const bool have_second = find(n - 1, k, r) != nullptr;
      if (have_first && have_second) {
        const BigCount rec_upper = recursive_upper(n, k, r, q_, lookup);
        if (rec_upper < rec.upper || (rec_upper == rec.upper && rec.upper_source != "recursive")) {
          rec.upper = rec_upper;
          rec.upper_source = "recursive";
          changed = true;
        }
      }
    }
  }
  return changed;
}

const BoundRecord* BoundTable::find(unsigned n, unsigned k, unsigned r) const {
  auto it = entries_.find({n, k, r});
  return it == entries_.end() ? nullptr : &it->second;
}

const BoundRecord& BoundTable::at(unsigned n, unsigned k, unsigned r) const {
  if (const auto* rec = find(n, k, r)) return *rec;
  throw InvalidArgument("no bound table entry for " + key_str(n, k, r));
}

BoundRecord BoundTable::turan(unsigned n, unsigned k, unsigned r) const {
  if (!(1 <= r && r <= k && k < n)) throw InvalidArgument("Turan lookup needs 1 <= r <= k < n");
  BoundRecord rec = at(n, n - r, n - k);
  rec.k = k;
  rec.r = r;
  return rec;
}

std::vector<BoundRecord> BoundTable::records() const {
  std::vector<BoundRecord> out;
  out.reserve(entries_.size());
  for (const auto& [key, rec] : entries_) out.push_back(rec);
  return out;
}

void BoundTable::write_csv(std::ostream& out) const {
  out << kBoundColumns << '\n';
  for (const auto& [key, rec] : entries_) {
    out << rec.n << ',' << rec.k << ',' << rec.r << ',' << rec.lower << ',' << rec.lower_source << ','
        << rec.upper << ',' << rec.upper_source << ',' << (rec.exact() ? "yes" : "no") << '\n';
  }
}

void BoundTable::write_text(std::ostream& out) const {
  const std::vector<std::string> header = {"n", "k", "r", "lower", "lower_src", "upper", "upper_src", "exact"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& [key, rec] : entries_) {
    rows.push_back({std::to_string(rec.n), std::to_string(rec.k), std::to_string(rec.r), rec.lower.str(),
                    rec.lower_source, rec.upper.str(), rec.upper_source, rec.exact() ? "yes" : "no"});
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      // numbers right-aligned, provenance left-aligned
      const bool left = c == 4 || c == 6 || c == 7;
      const std::string pad(width[c] - row[c].size(), ' ');
      line += left ? row[c] + pad : pad + row[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
}

}  // namespace qcover
