// Splits a 12x8 frame with a rectangular ring and draws the result.

#include <cstdio>

#include "tdt/topology.hpp"

int main() {
  const tdt::Extent e{12, 8};
  const auto ring = tdt::rectangle_cycle({2, 1}, 7, 5);
  const auto part = tdt::jordan_partition(ring, e);
  const tdt::Region cycle(e, ring.vertices);
  for (int y = 0; y < e.height; ++y) {
    for (int x = 0; x < e.width; ++x) {
      const tdt::Point p{x, y};
      std::putchar(cycle.contains(p) ? '#' : part.interior.contains(p) ? 'o' : '.');
    }
    std::putchar('\n');
  }
  std::printf("interior %zu cells, exterior %zu cells\n", part.interior.size(), part.exterior.size());
}
