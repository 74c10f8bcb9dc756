// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "modspace/core/grid.hpp"

namespace modspace {

enum class WindowProfile { smooth_bump, raised_cosine };

const char* to_string(WindowProfile p);
WindowProfile window_profile_from_string(const std::string& s);

// Radial bump: 1 on |xi| <= sqrt(n)/2, 0 on |xi| >= sqrt(n).
double window_rho(const Point& xi, int n, WindowProfile profile);

// phi_k(xi) = rho(xi - k) / sum_{j in Z^n} rho(xi - j), exact in xi.
double window_phi(const LatticeIndex& k, const Point& xi, int n, WindowProfile profile);

// Samples of one phi_k on the frequency lattice, restricted to its support.
struct WindowPiece {
  std::vector<std::uint32_t> flat;  // frequency-lattice indices
  std::vector<double> value;
};

struct WindowValidation {
  bool lower_bound = false;   // (a) phi_k >= c > 0 on Q_k
  bool support = false;       // (b) phi_k = 0 off B(k, sqrt n)
  bool partition = false;     // (c) sum_k phi_k = 1 on |xi|_inf <= K - sqrt n
  bool derivatives = false;   // (d) |D^a phi_k| <= C_beta uniformly in k
  double c = 0.0;
  double support_violation = 0.0;
  double partition_defect = 0.0;
  std::array<double, 3> C_beta{};   // max |D^a phi_k| for |a| = 0, 1, 2
  double derivative_spread = 0.0;   // max relative spread of per-k bounds
  bool pass() const { return lower_bound && support && partition && derivatives; }
};

// Truncated family {phi_k}, |k|_inf <= K, sampled on the frequency lattice.
class WindowFamily {
 public:
  // Throws ErrorKind::config when the grid cannot host K.
  static WindowFamily build(const GridSpec& grid, int K, WindowProfile profile);

  const GridSpec& grid() const { return grid_; }
  int K() const { return K_; }
  WindowProfile profile() const { return profile_; }
  double c() const { return c_; }
  const std::array<double, 3>& C_beta() const { return C_beta_; }

  const std::vector<LatticeIndex>& indices() const { return indices_; }
  bool contains(const LatticeIndex& k) const;
  // Throws ErrorKind::parameter (index error) outside the truncation.
  std::size_t slot(const LatticeIndex& k) const;
  const WindowPiece& piece(const LatticeIndex& k) const { return pieces_[slot(k)]; }
  bool zeroed(const LatticeIndex& k) const { return zeroed_[slot(k)]; }

  // phi_k at an arbitrary frequency (0 for zeroed members).
  double evaluate(const LatticeIndex& k, const Point& xi) const;

  // Copy with phi_k replaced by zero; used as a broken family.
  WindowFamily with_zeroed(const LatticeIndex& k) const;

 private:
  GridSpec grid_;
  int K_ = 0;
  WindowProfile profile_ = WindowProfile::smooth_bump;
  double c_ = 0.0;
  std::array<double, 3> C_beta_{};
  std::vector<LatticeIndex> indices_;
  std::vector<WindowPiece> pieces_;
  std::vector<bool> zeroed_;

  friend WindowValidation validate_window_family(const WindowFamily& fam);
};

// Checks all four window conditions; never throws on a failed clause.
WindowValidation validate_window_family(const WindowFamily& fam);

// Dense samples of every phi_k behind a JSON header carrying
// {K, profile, c, C_beta}.
void write_window_family(const std::string& path, const WindowFamily& fam);

}  // namespace modspace
