#include <sstream>

#include "doctest.h"
#include "ldp/classify.hpp"
#include "ldp/geometry.hpp"
#include "ldp/singular.hpp"
#include "ldp/store.hpp"

using namespace ldp;

namespace {

const Database& db_of(int k) {
  static Database d1 = emit_database(1), d2 = emit_database(2);
  return k == 1 ? d1 : d2;
}

std::string dump(const Database& db) {
  std::ostringstream os;
  write_database(db, os);
  return os.str();
}

Int lcm_of(const std::vector<Int>& v) {
  Int l(1);
  for (const auto& x : v) l = l / gcd(l, x) * x;
  return l;
}

}  // namespace

TEST_CASE("database sizes") {
  CHECK(db_of(1).records.size() == 50);
  CHECK(db_of(1).count(Kind::Toric) == 16);
  CHECK(db_of(1).count(Kind::KStar) == 34);
  CHECK(db_of(2).records.size() == 1742);
  CHECK(db_of(2).count(Kind::Toric) == 505);
  CHECK(db_of(2).count(Kind::KStar) == 1237);
}

TEST_CASE("queries") {
  const auto& db = db_of(2);
  CHECK(query(db, "comb_minimal=true AND kind=kstar").size() == 67);
  CHECK(query(db, "").size() == db.records.size());
  CHECK(query(db, "kind = toric").size() == 505);
  // independent count against the tables
  size_t n = 0;
  for (const auto& r : db.records) n += r.kind == Kind::KStar && r.gorenstein_index == Int(2) && r.picard == 1;
  CHECK(query(db, "kind=kstar AND gorenstein_index=2 AND picard=1").size() == n);
  CHECK(table_gorenstein(db, Int(2), Kind::KStar)[1] == n);
  CHECK(query(db, "alpha_min<=3/2").size() == 117);
  CHECK(query(db, "alpha_min>3/2 AND alpha_min<2").size() + 117 + query(db, "alpha_min=2").size() == 1742);
  CHECK(query(db, "picard>=5 AND picard!=5").size() == query(db, "picard>5").size());
  CHECK_THROWS(query(db, "nonsense=1"));
  CHECK_THROWS(query(db, "picard"));
  CHECK_THROWS(query(db, "picard=x"));
}

TEST_CASE("json round trip and determinism") {
  for (int k : {1, 2}) {
    const auto& db = db_of(k);
    std::istringstream is(dump(db));
    Database back = read_database(is);
    CHECK(back.k == k);
    REQUIRE(back.records.size() == db.records.size());
    CHECK(dump(back) == dump(db));
    for (size_t i = 0; i < db.records.size(); ++i) {
      CHECK(back.records[i].matrix == db.records[i].matrix);
      CHECK(back.records[i].canonical_bytes() == db.records[i].canonical_bytes());
    }
  }
  CHECK(dump(emit_database(1, 2)) == dump(db_of(1)));
  std::istringstream bad("{\"header\":{\"k\":1,\"version\":\"x\",\"counts\":{\"toric\":0,\"kstar\":0,\"total\":2}}}\n");
  CHECK_THROWS(read_database(bad));
}

TEST_CASE("record invariants") {
  for (int k : {1, 2}) {
    const auto& db = db_of(k);
    for (size_t i = 0; i < db.records.size(); ++i) {
      const auto& r = db.records[i];
      CHECK(r.id == static_cast<int64_t>(i + 1));
      if (i > 0) {
        const auto& p = db.records[i - 1];
        CHECK((p.kind < r.kind ||
               (p.kind == r.kind && (p.family_dim < r.family_dim ||
                                     (p.family_dim == r.family_dim && p.canonical_bytes() < r.canonical_bytes())))));
      }
      CHECK(r.k_level >= 1);
      CHECK(r.k_level <= k);
      CHECK(r.alpha_min >= Rat(1));
      CHECK(r.alpha_min <= Rat(r.k_level));
      CHECK(r.comb_minimal == contractible_columns(r.matrix).empty());
      CHECK(r.gorenstein_index == lcm_of(r.local_indices));
      CHECK(r.k2 > Rat(0));
      if (r.kind == Kind::Toric) {
        CHECK(r.picard == static_cast<int>(r.polygon.size()) - 2);
        CHECK(r.family_dim == 0);
        CHECK(r.picard == class_group(r.matrix).picard);
        CHECK(static_cast<int>(r.elliptic_types.size()) == r.singular_count);
      } else {
        CHECK(r.picard == r.matrix.n() + r.matrix.m() - r.matrix.r() - 1);
        CHECK(r.family_dim == std::max(r.matrix.r() - 2, 0));
        const bool parabolic = r.matrix.vplus || r.matrix.vminus;
        CHECK(r.singular_count <= (parabolic ? 2 * r.picard + 2 : r.picard + 2));
      }
      // Gorenstein index 1 means canonical, so no discrepancy below 0
      if (r.gorenstein_index == Int(1)) CHECK(r.alpha_min == Rat(1));
      if (r.gorenstein_index == Int(1)) CHECK(r.k_level == 1);
    }
  }
}

TEST_CASE("toric records agree with the r = 1 matrix pipeline") {
  for (const auto& r : db_of(2).records) {
    if (r.kind != Kind::Toric) continue;
    CHECK(r.k2 == k_squared(r.matrix));
    CHECK(r.gorenstein_index == local_gorenstein_indices(r.matrix).iota);
    CHECK(r.alpha_min == alpha_min(r.matrix));
  }
}

TEST_CASE("tables and jumping places, k = 2") {
  const auto& db = db_of(2);
  auto picard = table_picard(db);
  size_t total = 0;
  for (auto [rho, n] : picard) {
    total += n;
    CHECK(n == table_picard(db, Kind::Toric)[rho] + table_picard(db, Kind::KStar)[rho]);
  }
  CHECK(total == db.records.size());
  auto jp = jumping_places(db);
  REQUIRE(!jp.empty());
  CHECK(jp.back().second == db.records.size());
  for (size_t i = 1; i < jp.size(); ++i) {
    CHECK(jp[i - 1].first < jp[i].first);
    CHECK(jp[i - 1].second < jp[i].second);
  }
  // nu right-continuous: the count at a threshold includes it
  for (auto [a, n] : jp) {
    size_t c = 0;
    for (const auto& r : db.records) c += r.alpha_min <= a;
    CHECK(c == n);
  }
  CHECK(table_dimension(db, Int(2)) == std::map<int, size_t>{{0, 53}, {1, 17}, {2, 7}, {3, 3}, {4, 1}, {5, 1}});
}
