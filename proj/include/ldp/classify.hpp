#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ldp/defmat.hpp"
#include "ldp/polygons.hpp"

namespace ldp {

// validate, irredundant (r >= 2), log terminal, del Pezzo, almost k-hollow complex
bool in_class(const PMatrix& P, int64_t k);
bool is_comb_minimal(const PMatrix& P);

// Maximum area of an almost k-hollow lattice triangle (vertices need not be primitive).
// Every such triangle is an almost k-hollow LDP triangle with its vertices scaled by
// factors in [1, k], so the LDP triangles of the polygon classification suffice.
Rat c_of_k_oracle(int64_t k, const std::vector<Polygon>& polys);
Rat c_of_k_oracle(int64_t k);

struct CombMinOptions {
  // multiplies every box bound; values > 1 only serve to check that the result is stable
  int64_t scale = 1;
  // c(k); computed from the polygon classification when zero
  Rat c_k;
};

struct CombMinBoxes {
  int64_t single_arms;    // (1,1,1;1), (2,1,1,1;0), (2,2,1,1;0), (2,2,1,1,1;0): every l
  int64_t two_one_short;  // (2,1,1;0): l_01, l_02
  int64_t two_one_long;   // (2,1,1;0): l_11, l_21
  int64_t two_two;        // (2,2,1;0): l_01, l_11, l_21
};
CombMinBoxes comb_min_boxes(int64_t k, const CombMinOptions& opt);

// Normal forms of all non-toric combinatorially minimal 1/k-log canonical del Pezzo
// K*-surfaces, sorted by key.
std::vector<PMatrix> classify_comb_minimal(int64_t k, const CombMinOptions& opt = {});

struct StartingSets {
  std::vector<PolygonZ> polygons;  // M_w A with w primitive, in A or with conv(A, w) almost k-hollow
  std::vector<PMatrix> toric;      // their r = 1 matrices
  std::vector<PMatrix> comb_minimal;
};
// polys from classify_polygons_with_witness with keep_extensions.  Covers every r = 1 matrix
// P_A with conv(A, v+) or conv(A, v-) almost k-hollow, for all A of the classification.
StartingSets starting_polygon_set(int64_t k, const std::vector<FoundPolygon>& polys);

// The smaller set: from each B with at most 5 vertices and each primitive v in B, the
// polygons M_v^+ B_v and M_v^- B_v with at most 4 vertices.
std::vector<PolygonZ> small_starting_polygons(const std::vector<Polygon>& polys);

struct BoundsProfile {
  int64_t k = 1;
  Rat alpha;  // min of min(d+, -d-) over the starting matrices (d+ = 1 with v+)
  Rat ell;    // 2 k^2 / alpha
  int arm_count_max_ee = 0, arm_count_max_parabolic = 0;
};
BoundsProfile bounds_profile(int64_t k, const std::vector<PMatrix>& seeds);

// Successor candidates of X: one new column in an arm, a new arm [(l,d),(1,0)] / [(1,0),(l,d)],
// or v+/v-.  Only candidates whose new column could be contracted back to X inside the
// class survive the cheap filters; membership is not checked.
std::vector<PMatrix> extension_candidates(const PMatrix& X, int64_t k);

struct ClassifyOptions {
  int threads = 1;
  // per-level checkpoints; complete levels found there are loaded instead of recomputed
  std::string checkpoint_dir;
  std::function<void(int, size_t, size_t)> progress;  // (picard number, level size, total)
};

struct Classification {
  std::vector<PMatrix> comb_minimal;
  std::vector<PMatrix> surfaces;  // normal forms, sorted by (picard, key)
  BoundsProfile bounds;
};
Classification classify_all_detailed(int64_t k, const ClassifyOptions& opt = {});
std::vector<PMatrix> classify_all(int64_t k, const ClassifyOptions& opt = {});

int picard_number(const PMatrix& P);
int family_dimension(const PMatrix& P);
std::map<int, size_t> dimension_histogram(const std::vector<PMatrix>& v);

}  // namespace ldp
