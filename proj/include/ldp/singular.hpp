#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ldp/defmat.hpp"
#include "ldp/polygons.hpp"

namespace ldp {

struct FixedPoint {
  enum Kind { Hyperbolic, ParabolicPlus, ParabolicMinus, EllipticPlus, EllipticMinus } kind = Hyperbolic;
  int i = 0, j = 0;  // arm; for hyperbolic the point between columns j and j+1 (0-based)
  friend bool operator==(const FixedPoint&, const FixedPoint&) = default;
};
std::string to_string(const FixedPoint& x);

// hyperbolic points, then parabolic ones (only on arms with v+ / v-), then elliptic ones
std::vector<FixedPoint> fixed_points(const PMatrix& P);
// generator matrix of the toric chart at a hyperbolic or parabolic point, columns in (l,d) coordinates
std::pair<Vec2, Vec2> toric_chart(const PMatrix& P, const FixedPoint& x);
bool is_singular(const PMatrix& P, const FixedPoint& x);
int singularity_count(const PMatrix& P);

struct GorensteinData {
  std::vector<std::vector<Int>> iota_ij;        // per arm, j = 0..n_i-2
  std::vector<Int> iota_plus_i, iota_minus_i;   // per arm, empty without v+ / v-
  std::optional<Int> iota_plus, iota_minus;     // elliptic
  std::optional<std::vector<Rat>> u_plus, u_minus;
  std::optional<Int> zeta_plus, zeta_minus;
  Int iota = 1;
};
GorensteinData local_gorenstein_indices(const PMatrix& P);
// every local index paired with its point, in fixed_points order
std::vector<std::pair<FixedPoint, Int>> local_index_list(const PMatrix& P, const GorensteinData& g);
// linear form with <u, v_i1> = 1 (i >= 1) and <u, v_01> = 1 - (r-1) l_01, solved directly; test oracle
std::vector<Rat> elliptic_form_oracle(const PMatrix& P, bool plus);

bool is_platonic(std::vector<Int> q);
bool is_log_terminal(const PMatrix& P);

PMatrix canonical_resolution(const PMatrix& P);
PMatrix minimal_resolution(const PMatrix& P);
bool is_smooth_matrix(const PMatrix& P);

// exceptional curves of the minimal resolution over x, with edges between intersecting ones
struct ResolutionGraph {
  std::vector<Int> self;
  std::vector<std::pair<int, int>> edges;
};
ResolutionGraph resolution_graph(const PMatrix& P, const FixedPoint& x);
// same, given the minimal resolution already computed
ResolutionGraph resolution_graph(const PMatrix& P, const PMatrix& minres, const FixedPoint& x);

// label of a singular point: A_n, K_n, T^{i}_n for toric charts, D/E types for elliptic points
std::string singularity_label(const PMatrix& P, const PMatrix& minres, const FixedPoint& x, const GorensteinData& g);
std::vector<std::string> elliptic_types(const PMatrix& P);
// label of a cyclic quotient point with local index iota and n exceptional curves
std::string toric_label(const Int& iota, size_t n);

struct ArmPolygon {
  // (0,top), v_i1, ..., v_in, (0,bottom)
  std::vector<Vec2T<Rat>> v;
};
struct AnticanComplex {
  Rat top, bottom;
  std::vector<ArmPolygon> arms;
};
AnticanComplex antican_complex(const PMatrix& P);
bool is_complex_almost_k_hollow(const PMatrix& P, int64_t k);
// scans all points of kZ^2 in the bounding boxes; test oracle
bool is_complex_almost_k_hollow_bruteforce(const PMatrix& P, int64_t k);

// min over exceptional rays of the canonical resolution of |v|/|v~|, capped at 1
Rat eps_max(const PMatrix& P);
// 1 / eps_max, at least 1
Rat alpha_min(const PMatrix& P);

std::vector<std::pair<Vec2, Vec2>> affine_toric_by_index(const Int& iota, const Int& b_max);

}  // namespace ldp
