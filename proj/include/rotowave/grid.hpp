#pragma once

#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rotowave/dispersion.hpp"

namespace rotowave {

/// Doubly periodic grid over [0, L1) x [0, L3); axis 1 indexes rows.
struct Grid {
  int n1{32};
  int n3{32};
  double L1{2 * std::numbers::pi};
  double L3{2 * std::numbers::pi};

  static bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

  void validate() const {
    if (n1 < 8 || n3 < 8 || !is_power_of_two(n1) || !is_power_of_two(n3))
      throw std::invalid_argument("Grid: n1 and n3 must be powers of two >= 8");
    if (!(L1 > 0) || !(L3 > 0)) throw std::invalid_argument("Grid: L1 and L3 must be > 0");
  }

  double dx1() const { return L1 / n1; }
  double dx3() const { return L3 / n3; }
  double cell_area() const { return dx1() * dx3(); }
  double x1(int i) const { return i * dx1(); }
  double x3(int j) const { return j * dx3(); }

  /// Wave vector 2 pi (m1/L1, m3/L3); |m| <= n/2 on each axis.
  WaveVector<double> wave_vector(int m1, int m3) const {
    if (2 * std::abs(m1) > n1 || 2 * std::abs(m3) > n3)
      throw std::invalid_argument("Grid: mode index outside the resolved band (m1=" +
                                  std::to_string(m1) + ", m3=" + std::to_string(m3) + ")");
    return {2 * std::numbers::pi * m1 / L1, 2 * std::numbers::pi * m3 / L3};
  }

  bool operator==(const Grid&) const = default;
};

}  // namespace rotowave
