#include "gtzw/signature.hpp"

#include <algorithm>
#include <string>

#include "gtzw/errors.hpp"

namespace gtzw {

namespace {

void check_order(const std::vector<Row>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i - 1] < rows[i]) {
      throw ArgumentError("signature rows must be non-increasing (row " + std::to_string(i) +
                          " = " + std::to_string(rows[i - 1]) + " < row " + std::to_string(i + 1) +
                          " = " + std::to_string(rows[i]) + ")");
    }
  }
}

}  // namespace

Signature::Signature(std::vector<Row> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw ArgumentError("signature level must be positive");
  check_order(rows_);
}

Signature::Signature(std::initializer_list<Row> rows) : Signature(std::vector<Row>(rows)) {}

Signature Signature::zeros(int level) {
  if (level < 1) throw ArgumentError("signature level must be positive");
  return Signature(std::vector<Row>(static_cast<std::size_t>(level), 0));
}

Signature Signature::reversed_negated() const {
  std::vector<Row> out(rows_.rbegin(), rows_.rend());
  for (auto& r : out) r = -r;
  return Signature(std::move(out));
}

Signature Signature::with_row(int i, Row value) const {
  if (i < 1 || i > level()) throw ArgumentError("row index out of range");
  std::vector<Row> out = rows_;
  out[static_cast<std::size_t>(i - 1)] = value;
  return Signature(std::move(out));
}

Path::Path(int start_level, std::vector<Signature> signatures)
    : start_level_(start_level), sigs_(std::move(signatures)) {
  if (start_level_ < 1) throw ArgumentError("path start level must be positive");
  for (std::size_t m = 0; m < sigs_.size(); ++m) {
    if (sigs_[m].level() != start_level_ + static_cast<int>(m)) {
      throw ArgumentError("path signature " + std::to_string(m) + " has level " +
                          std::to_string(sigs_[m].level()) + ", expected " +
                          std::to_string(start_level_ + static_cast<int>(m)));
    }
    if (m > 0 && !interlaces(sigs_[m - 1], sigs_[m])) {
      throw ArgumentError("path levels " + std::to_string(start_level_ + m - 1) + " and " +
                          std::to_string(start_level_ + m) + " do not interlace");
    }
  }
}

const Signature& Path::at(int level) const {
  if (!covers(level)) {
    throw ArgumentError("level " + std::to_string(level) + " outside path range [" +
                        std::to_string(start_level_) + ", " + std::to_string(end_level()) + "]");
  }
  return sigs_[static_cast<std::size_t>(level - start_level_)];
}

bool interlaces(const Signature& mu, const Signature& lam) {
  if (lam.level() != mu.level() + 1) {
    throw ArgumentError("interlaces: level mismatch (" + std::to_string(mu.level()) + " vs " +
                        std::to_string(lam.level()) + ")");
  }
  const int n = mu.level();
  for (int i = 1; i <= n; ++i) {
    if (!(lam(i) >= mu(i) && mu(i) >= lam(i + 1))) return false;
  }
  return true;
}

DiagramPair to_diagram_pair(const Signature& lam) {
  DiagramPair out;
  for (Row r : lam.rows()) {
    if (r > 0) out.positive.push_back(r);
  }
  for (auto it = lam.rows().rbegin(); it != lam.rows().rend(); ++it) {
    if (*it < 0) out.negative.push_back(-*it);
  }
  return out;
}

Signature from_diagram_pair(const DiagramPair& pair, int level) {
  const auto np = pair.positive.size();
  const auto nn = pair.negative.size();
  if (np + nn > static_cast<std::size_t>(level)) {
    throw ArgumentError("diagram pair has more rows than the level");
  }
  std::vector<Row> rows(static_cast<std::size_t>(level), 0);
  for (std::size_t i = 0; i < np; ++i) {
    if (pair.positive[i] <= 0) throw ArgumentError("partition rows must be positive");
    rows[i] = pair.positive[i];
  }
  for (std::size_t i = 0; i < nn; ++i) {
    if (pair.negative[i] <= 0) throw ArgumentError("partition rows must be positive");
    rows[rows.size() - 1 - i] = -pair.negative[i];
  }
  return Signature(std::move(rows));
}

Partition positive_part(const Signature& lam) {
  Partition out(lam.vec().begin(), lam.vec().end());
  for (auto& r : out) r = std::max<Row>(r, 0);
  return out;
}

namespace {

Row part(const Partition& p, std::size_t i) { return i < p.size() ? std::max<Row>(p[i], 0) : 0; }

}  // namespace

bool contains(const Partition& outer, const Partition& inner) {
  const auto n = std::max(outer.size(), inner.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (part(inner, i) > part(outer, i)) return false;
  }
  return true;
}

std::vector<Box> skew_cells(const Partition& outer, const Partition& inner) {
  if (!contains(outer, inner)) throw ArgumentError("skew_cells: inner diagram not contained in outer");
  std::vector<Box> cells;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    for (Row j = part(inner, i) + 1; j <= part(outer, i); ++j) {
      cells.push_back(Box{static_cast<Row>(i + 1), j});
    }
  }
  return cells;
}

bool is_horizontal_strip(const Partition& outer, const Partition& inner) {
  if (!contains(outer, inner)) throw ArgumentError("is_horizontal_strip: inner diagram not contained in outer");
  // At most one cell per column <=> outer_{i+1} <= inner_i.
  for (std::size_t i = 0; i + 1 < outer.size(); ++i) {
    if (part(outer, i + 1) > part(inner, i)) return false;
  }
  return true;
}

std::uint64_t count_extensions(const Signature& mu, Row top_cap, Row bottom_cap) {
  const int n = mu.level();
  if (top_cap < mu(1) || bottom_cap > mu(n)) {
    throw ArgumentError("extension caps must satisfy top_cap >= mu_1 and bottom_cap <= mu_N");
  }
  std::uint64_t count = static_cast<std::uint64_t>(top_cap - mu(1) + 1) *
                        static_cast<std::uint64_t>(mu(n) - bottom_cap + 1);
  for (int i = 2; i <= n; ++i) count *= static_cast<std::uint64_t>(mu(i - 1) - mu(i) + 1);
  return count;
}

void for_each_extension(const Signature& mu, Row top_cap, Row bottom_cap,
                        const std::function<void(const Signature&)>& fn) {
  const int n = mu.level();
  (void)count_extensions(mu, top_cap, bottom_cap);  // validates caps
  std::vector<Row> lo(static_cast<std::size_t>(n + 1)), hi(static_cast<std::size_t>(n + 1));
  lo[0] = mu(1);
  hi[0] = top_cap;
  for (int i = 2; i <= n; ++i) {
    lo[static_cast<std::size_t>(i - 1)] = mu(i);
    hi[static_cast<std::size_t>(i - 1)] = mu(i - 1);
  }
  lo[static_cast<std::size_t>(n)] = bottom_cap;
  hi[static_cast<std::size_t>(n)] = mu(n);

  std::vector<Row> cur = hi;
  while (true) {
    fn(Signature(cur));
    std::size_t pos = cur.size();
    while (pos > 0) {
      --pos;
      if (cur[pos] > lo[pos]) {
        --cur[pos];
        for (std::size_t q = pos + 1; q < cur.size(); ++q) cur[q] = hi[q];
        break;
      }
      if (pos == 0) return;
    }
    if (cur.empty()) return;
  }
}

std::vector<Signature> enumerate_extensions(const Signature& mu, Row top_cap, Row bottom_cap) {
  std::vector<Signature> out;
  out.reserve(count_extensions(mu, top_cap, bottom_cap));
  for_each_extension(mu, top_cap, bottom_cap, [&](const Signature& s) { out.push_back(s); });
  return out;
}

std::vector<Signature> enumerate_restrictions(const Signature& lam) {
  const int n = lam.level();
  if (n < 2) throw ArgumentError("enumerate_restrictions: level must be at least 2");
  std::vector<Signature> out;
  std::vector<Row> cur(static_cast<std::size_t>(n - 1));
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      out.emplace_back(cur);
      return;
    }
    for (Row v = lam(i); v >= lam(i + 1); --v) {
      cur[static_cast<std::size_t>(i - 1)] = v;
      rec(i + 1);
    }
  };
  rec(1);
  return out;
}

std::vector<Signature> enumerate_signatures(int level, Row lo, Row hi) {
  if (level < 1) throw ArgumentError("level must be positive");
  std::vector<Signature> out;
  std::vector<Row> cur(static_cast<std::size_t>(level));
  std::function<void(std::size_t, Row)> rec = [&](std::size_t i, Row cap) {
    if (i == cur.size()) {
      out.emplace_back(cur);
      return;
    }
    for (Row v = cap; v >= lo; --v) {
      cur[i] = v;
      rec(i + 1, v);
    }
  };
  rec(0, hi);
  return out;
}

Row diagonal_length(const Partition& lam_plus, Row k) {
  Row count = 0;
  for (std::size_t idx = 0; idx < lam_plus.size(); ++idx) {
    const Row i = static_cast<Row>(idx + 1);
    const Row j = i + k;
    if (j >= 1 && std::max<Row>(lam_plus[idx], 0) >= j) ++count;
  }
  return count;
}

}  // namespace gtzw
