#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ldp/defmat.hpp"
#include "ldp/polygons.hpp"

namespace ldp {

enum class Kind { Toric, KStar };
const char* to_string(Kind k);

struct SurfaceRecord {
  int64_t id = 0;
  Kind kind = Kind::Toric;
  int k_level = 0;  // smallest k in {1,2,3} with an almost k-hollow polygon / complex
  Rat alpha_min;    // max(1, 1/eps_max)
  Polygon polygon;  // toric: canonical form
  PMatrix matrix;   // kstar: normal form; toric: the r = 1 matrix of the polygon
  std::vector<int> format;
  int m = 0;
  std::string source_sink;
  int family_dim = 0;
  int picard = 0;
  std::vector<Int> class_group;  // invariant factors of the torsion part
  Int gorenstein_index;
  std::vector<Int> local_indices;
  Rat k2;
  int singular_count = 0;
  bool comb_minimal = false;
  // kstar: labels of the singular elliptic points; toric: labels of the singular cones
  std::vector<std::string> elliptic_types;

  std::string canonical_bytes() const;
};

SurfaceRecord toric_record(const Polygon& canon);
SurfaceRecord kstar_record(const PMatrix& normal_form);

std::string to_json_line(const SurfaceRecord& r);
SurfaceRecord record_from_json_line(const std::string& line);

struct Database {
  int64_t k = 0;
  std::vector<SurfaceRecord> records;  // sorted by (kind, family_dim, canonical bytes), ids 1..N
  size_t count(Kind kind) const;
};

// sorts and numbers the records
Database make_database(int64_t k, std::vector<SurfaceRecord> records);
Database emit_database(int64_t k, const std::vector<Polygon>& toric, const std::vector<PMatrix>& kstar, int threads = 1);
Database emit_database(int64_t k, int threads = 1);

void write_database(const Database& db, std::ostream& out);
Database read_database(std::istream& in);

// picard number -> count
std::map<int, size_t> table_picard(const Database& db, std::optional<Kind> kind = std::nullopt);
std::map<int, size_t> table_gorenstein(const Database& db, const Int& iota, std::optional<Kind> kind = std::nullopt);
// family dimension -> count
std::map<int, size_t> table_dimension(const Database& db, std::optional<Int> iota = std::nullopt,
                                      std::optional<Kind> kind = Kind::KStar);
// (alpha, nu(alpha)) at each alpha where nu grows
std::vector<std::pair<Rat, size_t>> jumping_places(const Database& db);

// Conjunction of comparisons "field OP value" joined by AND; OP one of = != < <= > >=.
// Integer and rational fields compare numerically, others as strings.  Empty: everything.
class Query {
 public:
  explicit Query(const std::string& expr);
  bool matches(const SurfaceRecord& r) const;

 private:
  struct Term {
    std::string field, op, value;
  };
  std::vector<Term> terms_;
};
std::vector<SurfaceRecord> query(const Database& db, const std::string& expr);

// field of a record as used by queries; throws on unknown names
std::string field_value(const SurfaceRecord& r, const std::string& field);
bool is_numeric_field(const std::string& field);

}  // namespace ldp
