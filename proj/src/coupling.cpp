#include "gtzw/coupling.hpp"

#include <array>

namespace gtzw {

std::string cell_to_string(Cell a, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if ((a >> i) & 1) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

Cell cell_from_string(const std::string& s) {
  if (s.size() > static_cast<std::size_t>(kMaxDenseCoordinates)) throw ArgumentError("bit string too long");
  Cell a = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      a |= Cell(1) << i;
    else if (s[i] != '0')
      throw ArgumentError("bit string may contain only 0 and 1");
  }
  return a;
}

bool is_monotone_set(int n, std::uint64_t members, SetOrientation orientation) {
  const Cell cells = Cell(1) << n;
  if (n < 64 && cells < 64 && (members >> cells) != 0) return false;
  for (Cell a = 0; a < cells; ++a) {
    if (!((members >> a) & 1)) continue;
    for (int i = 0; i < n; ++i) {
      const Cell b = orientation == SetOrientation::up ? (a | (Cell(1) << i)) : (a & ~(Cell(1) << i));
      if (!((members >> b) & 1)) return false;
    }
  }
  return true;
}

const std::vector<std::uint32_t>& upsets(int n) {
  static const std::array<std::vector<std::uint32_t>, 5> table = [] {
    std::array<std::vector<std::uint32_t>, 5> t;
    for (int m = 0; m <= 4; ++m) {
      const std::uint64_t subsets = std::uint64_t(1) << (1u << m);
      for (std::uint64_t s = 0; s < subsets; ++s)
        if (is_monotone_set(m, s, SetOrientation::up)) t[m].push_back(static_cast<std::uint32_t>(s));
    }
    return t;
  }();
  if (n < 0 || n > 4) throw ArgumentError("upsets: n must lie in [0, 4]");
  return table[static_cast<std::size_t>(n)];
}

}  // namespace gtzw
