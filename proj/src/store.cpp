#include "ldp/store.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "ldp/classify.hpp"
#include "ldp/geometry.hpp"
#include "ldp/singular.hpp"

namespace ldp {

namespace {

constexpr const char* kVersion = "1.0.0";

using json = nlohmann::ordered_json;

json int_json(const Int& a) {
  if (a.is_small()) return a.small();
  return a.str();
}

Int json_int(const json& j) {
  if (j.is_string()) return Int::parse(j.get<std::string>());
  return Int(j.get<int64_t>());
}

int smallest_hollow_level(const std::function<bool(int64_t)>& hollow) {
  for (int k = 1; k < 1000; ++k)
    if (hollow(k)) return k;
  throw std::invalid_argument("k_level: no hollow level below 1000");
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string format_string(const SurfaceRecord& r) {
  std::vector<std::string> n;
  for (int x : r.format) n.push_back(std::to_string(x));
  return "(" + join(n, ",") + ";" + std::to_string(r.m) + ")";
}

template <class F>
void parallel_for(size_t n, int threads, F f) {
  threads = std::max(1, threads);
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  auto work = [&] {
    try {
      for (size_t i; (i = next++) < n;) f(i);
    } catch (...) {
      std::lock_guard<std::mutex> g(err_mu);
      if (!err) err = std::current_exception();
      next = n;
    }
  };
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

const char* to_string(Kind k) { return k == Kind::Toric ? "toric" : "kstar"; }

std::string SurfaceRecord::canonical_bytes() const {
  return kind == Kind::Toric ? canonical_key(polygon) : key_bytes(matrix);
}

SurfaceRecord toric_record(const Polygon& canon) {
  SurfaceRecord r;
  r.kind = Kind::Toric;
  r.polygon = canon;
  const PolygonZ A = to_Z(canon);
  r.matrix = pmatrix_from_polygon(A);
  const auto inv = toric_invariants(A);
  r.k_level = smallest_hollow_level([&](int64_t k) { return is_almost_k_hollow(A, Int(k)); });
  r.alpha_min = max(Rat(1), Rat(1) / inv.eps_max);
  r.format = r.matrix.format();
  r.m = r.matrix.m();
  r.source_sink = to_string(source_sink(r.matrix));
  r.family_dim = 0;
  r.picard = static_cast<int>(canon.size()) - 2;
  r.class_group = class_group(r.matrix).torsion;
  r.gorenstein_index = inv.gorenstein_index;
  for (size_t i = 0; i < A.size(); ++i) {
    const Vec2& a = A[i];
    const Vec2& b = A[i + 1];
    const Int io = cone_gorenstein_index(a, b);
    r.local_indices.push_back(io);
    if (abs(det2(a, b)) != Int(1)) r.elliptic_types.push_back(toric_label(io, hilbert_basis_2d(a, b).size() - 2));
  }
  r.k2 = inv.k2;
  r.singular_count = inv.singular_points;
  r.comb_minimal = contractible_columns(r.matrix).empty();
  return r;
}

SurfaceRecord kstar_record(const PMatrix& P) {
  SurfaceRecord r;
  r.kind = Kind::KStar;
  r.matrix = P;
  r.k_level = smallest_hollow_level([&](int64_t k) { return is_complex_almost_k_hollow(P, k); });
  r.alpha_min = alpha_min(P);
  r.format = P.format();
  r.m = P.m();
  r.source_sink = to_string(source_sink(P));
  r.family_dim = family_dimension(P);
  r.picard = picard_number(P);
  r.class_group = class_group(P).torsion;
  const auto g = local_gorenstein_indices(P);
  r.gorenstein_index = g.iota;
  for (const auto& [x, io] : local_index_list(P, g)) r.local_indices.push_back(io);
  r.k2 = k_squared(P);
  r.singular_count = singularity_count(P);
  r.comb_minimal = contractible_columns(P).empty();
  r.elliptic_types = elliptic_types(P);
  return r;
}

std::string to_json_line(const SurfaceRecord& r) {
  json j;
  j["id"] = r.id;
  j["kind"] = to_string(r.kind);
  j["k_level"] = r.k_level;
  j["alpha_min"] = r.alpha_min.str();
  json data;
  if (r.kind == Kind::Toric) {
    auto verts = json::array();
    for (const auto& v : r.polygon.v) verts.push_back({v.x, v.y});
    data["vertices"] = verts;
  } else {
    auto arms = json::array();
    for (const auto& arm : r.matrix.arms) {
      auto a = json::array();
      for (const auto& c : arm) a.push_back({int_json(c.l), int_json(c.d)});
      arms.push_back(a);
    }
    data["arms"] = arms;
    data["vplus"] = r.matrix.vplus;
    data["vminus"] = r.matrix.vminus;
  }
  j["data"] = data;
  j["format"] = r.format;
  j["m"] = r.m;
  j["source_sink"] = r.source_sink;
  j["family_dim"] = r.family_dim;
  j["picard"] = r.picard;
  auto cg = json::array();
  for (const auto& t : r.class_group) cg.push_back(int_json(t));
  j["class_group"] = cg;
  j["gorenstein_index"] = int_json(r.gorenstein_index);
  auto li = json::array();
  for (const auto& t : r.local_indices) li.push_back(int_json(t));
  j["local_indices"] = li;
  j["k2"] = r.k2.str();
  j["singular_count"] = r.singular_count;
  j["comb_minimal"] = r.comb_minimal;
  j["elliptic_types"] = r.elliptic_types;
  return j.dump();
}

SurfaceRecord record_from_json_line(const std::string& line) {
  const json j = json::parse(line);
  SurfaceRecord r;
  r.id = j.at("id").get<int64_t>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "toric")
    r.kind = Kind::Toric;
  else if (kind == "kstar")
    r.kind = Kind::KStar;
  else
    throw std::invalid_argument("record: unknown kind " + kind);
  r.k_level = j.at("k_level").get<int>();
  r.alpha_min = Rat::parse(j.at("alpha_min").get<std::string>());
  const json& data = j.at("data");
  if (r.kind == Kind::Toric) {
    for (const auto& v : data.at("vertices")) r.polygon.v.push_back({v.at(0).get<int64_t>(), v.at(1).get<int64_t>()});
    r.matrix = pmatrix_from_polygon(to_Z(r.polygon));
  } else {
    std::vector<std::vector<Col>> arms;
    for (const auto& a : data.at("arms")) {
      arms.emplace_back();
      for (const auto& c : a) arms.back().push_back({json_int(c.at(0)), json_int(c.at(1))});
    }
    r.matrix = make_pmatrix(std::move(arms), data.at("vplus").get<bool>(), data.at("vminus").get<bool>());
  }
  r.format = j.at("format").get<std::vector<int>>();
  r.m = j.at("m").get<int>();
  r.source_sink = j.at("source_sink").get<std::string>();
  r.family_dim = j.at("family_dim").get<int>();
  r.picard = j.at("picard").get<int>();
  for (const auto& t : j.at("class_group")) r.class_group.push_back(json_int(t));
  r.gorenstein_index = json_int(j.at("gorenstein_index"));
  for (const auto& t : j.at("local_indices")) r.local_indices.push_back(json_int(t));
  r.k2 = Rat::parse(j.at("k2").get<std::string>());
  r.singular_count = j.at("singular_count").get<int>();
  r.comb_minimal = j.at("comb_minimal").get<bool>();
  r.elliptic_types = j.at("elliptic_types").get<std::vector<std::string>>();
  return r;
}

size_t Database::count(Kind kind) const {
  return std::count_if(records.begin(), records.end(), [&](const SurfaceRecord& r) { return r.kind == kind; });
}

Database make_database(int64_t k, std::vector<SurfaceRecord> records) {
  std::vector<std::string> bytes(records.size());
  std::vector<size_t> order(records.size());
  for (size_t i = 0; i < records.size(); ++i) bytes[i] = records[i].canonical_bytes();
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const auto& x = records[a];
    const auto& y = records[b];
    if (x.kind != y.kind) return x.kind < y.kind;
    if (x.family_dim != y.family_dim) return x.family_dim < y.family_dim;
    return bytes[a] < bytes[b];
  });
  for (size_t i = 1; i < order.size(); ++i)
    if (records[order[i - 1]].kind == records[order[i]].kind && bytes[order[i - 1]] == bytes[order[i]])
      throw std::invalid_argument("make_database: duplicate record");
  Database db;
  db.k = k;
  db.records.reserve(records.size());
  for (size_t i : order) {
    db.records.push_back(std::move(records[i]));
    db.records.back().id = static_cast<int64_t>(db.records.size());
  }
  return db;
}

Database emit_database(int64_t k, const std::vector<Polygon>& toric, const std::vector<PMatrix>& kstar, int threads) {
  std::vector<SurfaceRecord> recs(toric.size() + kstar.size());
  parallel_for(recs.size(), threads, [&](size_t i) {
    recs[i] = i < toric.size() ? toric_record(toric[i]) : kstar_record(kstar[i - toric.size()]);
  });
  return make_database(k, std::move(recs));
}

Database emit_database(int64_t k, int threads) {
  ClassifyOptions co;
  co.threads = threads;
  return emit_database(k, classify_polygons(k), classify_all(k, co), threads);
}

void write_database(const Database& db, std::ostream& out) {
  json h;
  h["k"] = db.k;
  h["version"] = kVersion;
  h["counts"] = {{"toric", db.count(Kind::Toric)}, {"kstar", db.count(Kind::KStar)}, {"total", db.records.size()}};
  out << json{{"header", h}}.dump() << "\n";
  for (const auto& r : db.records) out << to_json_line(r) << "\n";
}

Database read_database(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("read_database: empty input");
  const json h = json::parse(line).at("header");
  Database db;
  db.k = h.at("k").get<int64_t>();
  while (std::getline(in, line))
    if (!line.empty()) db.records.push_back(record_from_json_line(line));
  if (db.records.size() != h.at("counts").at("total").get<size_t>())
    throw std::invalid_argument("read_database: record count differs from header");
  for (size_t i = 0; i < db.records.size(); ++i)
    if (db.records[i].id != static_cast<int64_t>(i + 1)) throw std::invalid_argument("read_database: ids not contiguous");
  return db;
}

std::map<int, size_t> table_picard(const Database& db, std::optional<Kind> kind) {
  std::map<int, size_t> t;
  for (const auto& r : db.records)
    if (!kind || r.kind == *kind) ++t[r.picard];
  return t;
}

std::map<int, size_t> table_gorenstein(const Database& db, const Int& iota, std::optional<Kind> kind) {
  std::map<int, size_t> t;
  for (const auto& r : db.records)
    if ((!kind || r.kind == *kind) && r.gorenstein_index == iota) ++t[r.picard];
  return t;
}

std::map<int, size_t> table_dimension(const Database& db, std::optional<Int> iota, std::optional<Kind> kind) {
  std::map<int, size_t> t;
  for (const auto& r : db.records)
    if ((!kind || r.kind == *kind) && (!iota || r.gorenstein_index == *iota)) ++t[r.family_dim];
  return t;
}

std::vector<std::pair<Rat, size_t>> jumping_places(const Database& db) {
  std::vector<Rat> a;
  for (const auto& r : db.records) a.push_back(r.alpha_min);
  std::sort(a.begin(), a.end());
  std::vector<std::pair<Rat, size_t>> out;
  for (size_t i = 0; i < a.size(); ++i)
    if (i + 1 == a.size() || a[i + 1] != a[i]) out.push_back({a[i], i + 1});
  return out;
}

bool is_numeric_field(const std::string& f) {
  static const char* names[] = {"id",     "k_level",          "alpha_min", "m",  "r",
                                "n",      "family_dim",       "picard",    "k2", "singular_count",
                                "vertices", "gorenstein_index"};
  return std::find_if(std::begin(names), std::end(names), [&](const char* s) { return f == s; }) != std::end(names);
}

std::string field_value(const SurfaceRecord& r, const std::string& f) {
  auto ints = [](const std::vector<Int>& v) {
    std::vector<std::string> s;
    for (const auto& x : v) s.push_back(x.str());
    return "[" + join(s, ",") + "]";
  };
  if (f == "id") return std::to_string(r.id);
  if (f == "kind") return to_string(r.kind);
  if (f == "k_level") return std::to_string(r.k_level);
  if (f == "alpha_min") return r.alpha_min.str();
  if (f == "format") return format_string(r);
  if (f == "m") return std::to_string(r.m);
  if (f == "r") return std::to_string(static_cast<int>(r.format.size()) - 1);
  if (f == "n") return std::to_string(std::accumulate(r.format.begin(), r.format.end(), 0));
  if (f == "vertices") return std::to_string(r.kind == Kind::Toric ? r.polygon.size() : 0);
  if (f == "source_sink") return r.source_sink;
  if (f == "family_dim") return std::to_string(r.family_dim);
  if (f == "picard") return std::to_string(r.picard);
  if (f == "class_group") return ints(r.class_group);
  if (f == "gorenstein_index") return r.gorenstein_index.str();
  if (f == "local_indices") return ints(r.local_indices);
  if (f == "k2") return r.k2.str();
  if (f == "singular_count") return std::to_string(r.singular_count);
  if (f == "comb_minimal") return r.comb_minimal ? "true" : "false";
  if (f == "elliptic_types") return "[" + join(r.elliptic_types, ",") + "]";
  throw std::invalid_argument("unknown field: " + f);
}

Query::Query(const std::string& expr) {
  // split on the word AND
  std::vector<std::string> parts;
  std::istringstream is(expr);
  std::string tok, cur;
  while (is >> tok) {
    if (tok == "AND" || tok == "and") {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += tok;
    }
  }
  if (!cur.empty() || !parts.empty()) parts.push_back(cur);
  for (const auto& p : parts) {
    size_t pos = p.find_first_of("=!<>");
    if (p.empty() || pos == std::string::npos || pos == 0) throw std::invalid_argument("query: bad term '" + p + "'");
    size_t end = pos + 1;
    if (end < p.size() && p[end] == '=') ++end;
    Term t{p.substr(0, pos), p.substr(pos, end - pos), p.substr(end)};
    static const char* ops[] = {"=", "==", "!=", "<", "<=", ">", ">="};
    if (std::find_if(std::begin(ops), std::end(ops), [&](const char* o) { return t.op == o; }) == std::end(ops))
      throw std::invalid_argument("query: bad operator in '" + p + "'");
    if (t.op == "==") t.op = "=";
    if (t.value.empty()) throw std::invalid_argument("query: missing value in '" + p + "'");
    field_value(SurfaceRecord{}, t.field);  // throws on unknown names
    if (is_numeric_field(t.field)) Rat::parse(t.value);
    terms_.push_back(t);
  }
}

bool Query::matches(const SurfaceRecord& r) const {
  for (const auto& t : terms_) {
    const std::string v = field_value(r, t.field);
    int c;
    if (is_numeric_field(t.field)) {
      const Rat a = Rat::parse(v), b = Rat::parse(t.value);
      c = a < b ? -1 : (b < a ? 1 : 0);
    } else {
      c = v.compare(t.value);
      c = (c > 0) - (c < 0);
    }
    bool ok = t.op == "=" ? c == 0 : t.op == "!=" ? c != 0 : t.op == "<" ? c < 0 : t.op == "<=" ? c <= 0 : t.op == ">" ? c > 0 : c >= 0;
    if (!ok) return false;
  }
  return true;
}

std::vector<SurfaceRecord> query(const Database& db, const std::string& expr) {
  Query q(expr);
  std::vector<SurfaceRecord> out;
  for (const auto& r : db.records)
    if (q.matches(r)) out.push_back(r);
  return out;
}

}  // namespace ldp
