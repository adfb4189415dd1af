// db build --k K --out FILE
// db query FILE 'EXPR'
// db table FILE {picard|gorenstein|jumping|dimension} [--iota I] [--kind T]
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ldp/store.hpp"

namespace {

ldp::Database load(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  return ldp::read_database(in);
}

std::optional<ldp::Kind> parse_kind(const std::string& s) {
  if (s.empty() || s == "all") return std::nullopt;
  if (s == "toric") return ldp::Kind::Toric;
  if (s == "kstar") return ldp::Kind::KStar;
  throw std::runtime_error("unknown kind " + s + " (toric, kstar, all)");
}

void print_hist(const std::string& col, const std::map<int, size_t>& t) {
  std::cout << col << "\tcount\n";
  for (auto [a, n] : t) std::cout << a << "\t" << n << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surface database: build, query, tables"};
  app.require_subcommand(1);

  auto* build = app.add_subcommand("build", "classify and write the database");
  int64_t k = 1;
  int threads = 1;
  std::string out;
  build->add_option("--k", k, "hollowness level")->required()->check(CLI::PositiveNumber);
  build->add_option("--out", out, "output file")->required();
  build->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  auto* q = app.add_subcommand("query", "print matching records");
  std::string file, expr;
  q->add_option("FILE", file)->required();
  q->add_option("EXPR", expr, "e.g. 'kind=kstar AND picard=1'");
  bool count_only = false;
  q->add_flag("--count", count_only, "print only the number of matches");

  auto* t = app.add_subcommand("table", "TSV tables");
  std::string which, kind, iota;
  t->add_option("FILE", file)->required();
  t->add_option("TABLE", which)->required()->check(CLI::IsMember({"picard", "gorenstein", "jumping", "dimension"}));
  t->add_option("--iota", iota, "Gorenstein index");
  t->add_option("--kind", kind, "toric, kstar or all");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*build) {
      auto db = ldp::emit_database(k, threads);
      std::ofstream os(out);
      if (!os) throw std::runtime_error("cannot open " + out);
      ldp::write_database(db, os);
      std::cerr << db.records.size() << " records (" << db.count(ldp::Kind::Toric) << " toric, "
                << db.count(ldp::Kind::KStar) << " kstar)\n";
    } else if (*q) {
      auto db = load(file);
      auto res = ldp::query(db, expr);
      if (count_only)
        std::cout << res.size() << "\n";
      else
        for (const auto& r : res) std::cout << ldp::to_json_line(r) << "\n";
    } else {
      auto db = load(file);
      auto kf = parse_kind(kind);
      if (which == "picard") {
        if (!kind.empty()) {
          print_hist("picard", ldp::table_picard(db, kf));
        } else {
          auto tor = ldp::table_picard(db, ldp::Kind::Toric), ks = ldp::table_picard(db, ldp::Kind::KStar);
          std::cout << "picard\ttoric\tkstar\ttotal\n";
          for (auto [rho, n] : ldp::table_picard(db)) std::cout << rho << "\t" << tor[rho] << "\t" << ks[rho] << "\t" << n << "\n";
        }
      } else if (which == "gorenstein") {
        if (iota.empty()) throw std::runtime_error("gorenstein table needs --iota");
        const ldp::Int io = ldp::Int::parse(iota);
        if (!kind.empty()) {
          print_hist("picard", ldp::table_gorenstein(db, io, kf));
        } else {
          auto tor = ldp::table_gorenstein(db, io, ldp::Kind::Toric), ks = ldp::table_gorenstein(db, io, ldp::Kind::KStar);
          std::cout << "picard\ttoric\tkstar\ttotal\n";
          for (auto [rho, n] : ldp::table_gorenstein(db, io)) std::cout << rho << "\t" << tor[rho] << "\t" << ks[rho] << "\t" << n << "\n";
        }
      } else if (which == "jumping") {
        std::cout << "alpha\tnu\n";
        for (const auto& [a, n] : ldp::jumping_places(db)) std::cout << a.str() << "\t" << n << "\n";
      } else {
        std::optional<ldp::Int> io;
        if (!iota.empty()) io = ldp::Int::parse(iota);
        print_hist("dimension", ldp::table_dimension(db, io, kind.empty() ? std::optional(ldp::Kind::KStar) : kf));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "db: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
