#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace gtzw {

using Row = std::int64_t;

/// A vertex of level N of the Gelfand-Tsetlin graph: a non-increasing
/// integer vector of length N. Rows may be negative.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Row> rows);
  Signature(std::initializer_list<Row> rows);

  /// All-zero signature of the given level.
  static Signature zeros(int level);

  int level() const noexcept { return static_cast<int>(rows_.size()); }
  /// 1-based row access, matching the mathematical indexing.
  Row operator()(int i) const { return rows_[static_cast<std::size_t>(i - 1)]; }
  std::span<const Row> rows() const noexcept { return rows_; }
  const std::vector<Row>& vec() const noexcept { return rows_; }

  /// (-rows_N, ..., -rows_1); the graph automorphism paired with z <-> w.
  Signature reversed_negated() const;
  /// Copy with row i replaced; throws ArgumentError if the order breaks.
  Signature with_row(int i, Row value) const;

  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature&, const Signature&) = default;

 private:
  std::vector<Row> rows_;
};

using Partition = std::vector<Row>;

struct DiagramPair {
  Partition positive;
  Partition negative;
  friend bool operator==(const DiagramPair&, const DiagramPair&) = default;
};

struct Box {
  Row row = 1;
  Row col = 1;
  Row content() const noexcept { return col - row; }
  friend bool operator==(const Box&, const Box&) = default;
  friend auto operator<=>(const Box&, const Box&) = default;
};

/// Interlacing sequence of signatures; signatures[m] has level start_level + m.
class Path {
 public:
  Path() = default;
  /// Validates levels and interlacing; throws ArgumentError.
  Path(int start_level, std::vector<Signature> signatures);

  int start_level() const noexcept { return start_level_; }
  int end_level() const noexcept { return start_level_ + static_cast<int>(sigs_.size()) - 1; }
  int size() const noexcept { return static_cast<int>(sigs_.size()); }
  bool covers(int level) const noexcept { return level >= start_level_ && level <= end_level(); }
  /// Signature at an absolute level.
  const Signature& at(int level) const;
  const std::vector<Signature>& signatures() const noexcept { return sigs_; }

  friend bool operator==(const Path&, const Path&) = default;

 private:
  int start_level_ = 1;
  std::vector<Signature> sigs_;
};

/// True iff lam_1 >= mu_1 >= lam_2 >= ... >= mu_N >= lam_{N+1}.
bool interlaces(const Signature& mu, const Signature& lam);

DiagramPair to_diagram_pair(const Signature& lam);
Signature from_diagram_pair(const DiagramPair& pair, int level);
/// Row lengths of the positive diagram padded to the level (max(row, 0)).
Partition positive_part(const Signature& lam);

bool contains(const Partition& outer, const Partition& inner);
std::vector<Box> skew_cells(const Partition& outer, const Partition& inner);
bool is_horizontal_strip(const Partition& outer, const Partition& inner);

/// Number of extensions with lam_1 <= top_cap and lam_{N+1} >= bottom_cap.
std::uint64_t count_extensions(const Signature& mu, Row top_cap, Row bottom_cap);

/// Calls fn for each lam > mu with lam_1 <= top_cap and lam_{N+1} >= bottom_cap,
/// in lexicographically decreasing order, each exactly once.
void for_each_extension(const Signature& mu, Row top_cap, Row bottom_cap,
                        const std::function<void(const Signature&)>& fn);
std::vector<Signature> enumerate_extensions(const Signature& mu, Row top_cap, Row bottom_cap);

/// All mu at level N-1 with mu < lam (finite set).
std::vector<Signature> enumerate_restrictions(const Signature& lam);

/// All signatures of the given level with rows in [lo, hi].
std::vector<Signature> enumerate_signatures(int level, Row lo, Row hi);

/// Number of cells of the partition with content k.
Row diagonal_length(const Partition& lam_plus, Row k);

}  // namespace gtzw
