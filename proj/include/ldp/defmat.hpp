#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ldp/exactmath.hpp"

namespace ldp {

// One column v_ij of a defining matrix, stored as (l_ij, d_ij).
struct Col {
  Int l, d;
  Rat slope() const { return Rat(d, l); }
  friend bool operator==(const Col&, const Col&) = default;
};

// strict slope comparison d1/l1 > d2/l2 (l > 0)
inline bool slope_greater(const Col& a, const Col& b) { return a.d * b.l > b.d * a.l; }

enum class SourceSink { EE, EP, PE, PP };
const char* to_string(SourceSink t);

// Defining matrix of a K*-surface, kept as its arms plus the presence of v+ = (0,..,0,1)
// and v- = (0,..,0,-1).  Arms are slope-ordered after every operation below.
struct PMatrix {
  std::vector<std::vector<Col>> arms;
  bool vplus = false, vminus = false;

  int r() const { return static_cast<int>(arms.size()) - 1; }
  int m() const { return int(vplus) + int(vminus); }
  int n() const;
  std::vector<int> format() const;  // n_0, ..., n_r
  friend bool operator==(const PMatrix&, const PMatrix&) = default;
};

// builds a PMatrix from arms given in any column order
PMatrix make_pmatrix(std::vector<std::vector<Col>> arms, bool vplus, bool vminus);

void sort_slopes(PMatrix& P);
bool is_slope_ordered(const PMatrix& P);

Rat m_plus(const PMatrix& P);
Rat m_minus(const PMatrix& P);
Rat ell_plus(const PMatrix& P);
Rat ell_minus(const PMatrix& P);

// source/sink type: elliptic unless v+ (resp. v-) is a column
SourceSink source_sink(const PMatrix& P);
inline bool has_elliptic_plus(const PMatrix& P) { return !P.vplus; }
inline bool has_elliptic_minus(const PMatrix& P) { return !P.vminus; }

struct Validation {
  bool ok = true;
  std::string violation;  // empty when ok
};
Validation validate(const PMatrix& P);

bool is_irredundant(const PMatrix& P);
// Drops every redundant arm (a single column with l = 1) as long as r >= 2.
// A column (1,d) is first moved to (1,0) by shifting another arm.
PMatrix erase_erasable(const PMatrix& P);

// admissible operations
PMatrix flip_last_row(const PMatrix& P);
PMatrix swap_vpm(const PMatrix& P);
PMatrix swap_in_arm(const PMatrix& P, int i, int j1, int j2);
PMatrix swap_arms(const PMatrix& P, int i, int j);
// adds c times row i (1 <= i <= r) to the last row: shifts arm i by +c, arm 0 by -c
PMatrix add_row_multiple(const PMatrix& P, int i, const Int& c);

struct OrientationData {
  std::vector<Int> b_plus_i, b_minus_i;
  Int b_plus, b_minus;
  // per arm, entries descending; arms sorted descending
  std::vector<std::vector<Rat>> beta_plus, beta_minus;
};
OrientationData orientation_data(const PMatrix& P);
bool is_oriented(const PMatrix& P);

// arms sorted by beta+ (non-increasing), arms 1..r adapted to the source, arm 0 absorbing
PMatrix adapt(const PMatrix& P);
PMatrix normal_form(const PMatrix& P);
bool is_normal_form(const PMatrix& P);

// r, flags, format, then all (l,d); lexicographic order on these is the tie-break
std::vector<Int> flatten(const PMatrix& P);
bool flat_less(const PMatrix& a, const PMatrix& b);
// compact byte key used for deduplication
std::string key_bytes(const PMatrix& P);
PMatrix from_key_bytes(const std::string& s);

struct ColRef {
  enum Kind { Arm, VPlus, VMinus } kind = Arm;
  int i = 0, j = 0;
  friend bool operator==(const ColRef&, const ColRef&) = default;
};
std::string to_string(const ColRef& c);

// Columns lying in the cone of the others.
std::vector<ColRef> contractible_columns(const PMatrix& P);
PMatrix contract(const PMatrix& P, const ColRef& c);
PMatrix proper_extend(const PMatrix& P, int arm, const Col& c);
PMatrix proper_extend_vplus(const PMatrix& P);
PMatrix proper_extend_vminus(const PMatrix& P);
PMatrix redundant_extend(const PMatrix& P);

// block integer matrix (r+1) x (n+m), columns in stored order, v+ before v-
IntMatrix to_matrix(const PMatrix& P);
std::string to_text(const PMatrix& P);

}  // namespace ldp
