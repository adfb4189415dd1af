#pragma once

#include <optional>
#include <vector>

#include "ldp/defmat.hpp"
#include "ldp/polygons.hpp"

namespace ldp {

struct NumericProfile {
  Int l_plus, l_minus;
  Rat m_plus, m_minus, ell_plus, ell_minus;
  std::optional<Rat> d_plus, d_minus;  // only when ell > 0
};
NumericProfile numeric_profile(const PMatrix& P);

// Rational number or one of the sentinels +oo, -oo.
struct ExtRat {
  enum Kind { Finite, PosInf, NegInf } kind = Finite;
  Rat v;
  static ExtRat pos_inf() { return {PosInf, {}}; }
  static ExtRat neg_inf() { return {NegInf, {}}; }
};
// product with the convention oo*0 = 1, -oo*0 = -1; an infinite factor needs a zero partner
Rat ext_mul(const ExtRat& a, const Rat& b);

struct IntersectionTables {
  // frak m_ij and frak l_ij for j = 0..n_i
  std::vector<std::vector<Rat>> m;
  std::vector<std::vector<ExtRat>> ell;
  // l_ij+1 d_ij - l_ij d_ij+1 for j = 0..n_i-2 (0-based pairs)
  std::vector<std::vector<Int>> delta;
  std::vector<Rat> alpha;
};
IntersectionTables intersection_tables(const PMatrix& P);

// Curves are named by their column; VPlus / VMinus stand for D+ and D-.
Rat intersection_number(const PMatrix& P, const ColRef& a, const ColRef& b);
// symmetric matrix over all columns in to_matrix order
std::vector<std::vector<Rat>> intersection_matrix(const PMatrix& P);
std::vector<ColRef> all_columns(const PMatrix& P);

struct AnticanonicalIntersections {
  std::vector<std::vector<Rat>> arm;  // -K.D_ij
  std::optional<Rat> plus, minus;     // -K.D+, -K.D-
};
AnticanonicalIntersections anticanonical_intersections(const PMatrix& P);
bool is_del_pezzo(const PMatrix& P);
Rat k_squared(const PMatrix& P);
// coefficients of -K in the columns (to_matrix order): 1 - (r-1) l_0j on arm 0, 1 elsewhere
std::vector<Int> anticanonical_coefficients(const PMatrix& P);

struct ClassGroupData {
  std::vector<Int> torsion;  // invariant factors > 1
  int picard = 0;
};
ClassGroupData class_group(const PMatrix& P);

// r = 1 matrix whose columns are the vertices of A
PMatrix pmatrix_from_polygon(const PolygonZ& A);

}  // namespace ldp
