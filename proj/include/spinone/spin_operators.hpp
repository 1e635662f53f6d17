#pragma once

#include "spinone/types.hpp"

#include <array>
#include <cmath>

namespace spinone {

/// The spin-1 angular momentum matrices in the basis (|1,1>, |1,0>, |1,-1>),
/// Jz = diag(1,0,-1). Satisfy [Jx,Jy] = i Jz (cyclic) and Jx^2+Jy^2+Jz^2 = 2I.
struct SpinOperators {
  CMat3 jx, jy, jz;

  const CMat3& component(int a) const {
    switch (a) {
      case 0: return jx;
      case 1: return jy;
      default: return jz;
    }
  }
};

inline const SpinOperators& spin1_operators() {
  static const SpinOperators ops = [] {
    const double s = 1.0 / std::sqrt(2.0);
    SpinOperators o;
    o.jx << 0, s, 0,
            s, 0, s,
            0, s, 0;
    o.jy << Complex(0, 0), Complex(0, -s), Complex(0, 0),
            Complex(0, s), Complex(0, 0),  Complex(0, -s),
            Complex(0, 0), Complex(0, s),  Complex(0, 0);
    o.jz << 1, 0, 0,
            0, 0, 0,
            0, 0, -1;
    return o;
  }();
  return ops;
}

/// n . J for a real direction n (not necessarily unit length).
inline CMat3 dot_j(const Vec3& n) {
  const auto& ops = spin1_operators();
  return n.x() * ops.jx + n.y() * ops.jy + n.z() * ops.jz;
}

namespace detail {

/// Anticommutators S_ab = Ja Jb + Jb Ja, cached.
inline const std::array<std::array<CMat3, 3>, 3>& spin1_anticommutators() {
  static const auto table = [] {
    const auto& ops = spin1_operators();
    std::array<std::array<CMat3, 3>, 3> t;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        t[a][b] = ops.component(a) * ops.component(b) +
                  ops.component(b) * ops.component(a);
    return t;
  }();
  return table;
}

}  // namespace detail

}  // namespace spinone
