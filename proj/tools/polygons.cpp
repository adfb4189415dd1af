// polygons --k K [--out FILE]
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ldp/polygons.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Almost k-hollow LDP polygons up to unimodular equivalence"};
  int64_t k = 1;
  std::string out;
  bool quiet = false;
  app.add_option("--k", k, "hollowness level")->required()->check(CLI::PositiveNumber);
  app.add_option("--out", out, "output file (JSON lines); stdout if omitted");
  app.add_flag("--quiet", quiet, "no progress on stderr");
  CLI11_PARSE(app, argc, argv);

  ldp::PolygonClassifyOptions opt;
  if (!quiet)
    opt.progress = [](int level, size_t frontier, size_t total) {
      std::cerr << "level " << level << ": frontier " << frontier << ", classes " << total << "\n";
    };
  auto polys = ldp::classify_polygons(k, opt);

  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) {
      std::cerr << "cannot open " << out << "\n";
      return 1;
    }
  }
  std::ostream& os = out.empty() ? std::cout : file;
  for (const auto& p : polys) {
    auto inv = ldp::toric_invariants(ldp::to_Z(p));
    nlohmann::ordered_json j;
    j["k"] = k;
    auto verts = nlohmann::json::array();
    for (const auto& v : p.v) verts.push_back({v.x, v.y});
    j["vertices"] = verts;
    j["k2"] = inv.k2.str();
    j["gorenstein_index"] = std::stoll(inv.gorenstein_index.str());
    j["picard"] = inv.picard;
    j["eps_max"] = inv.eps_max.str();
    os << j.dump() << "\n";
  }
  if (!quiet) std::cerr << polys.size() << " polygons\n";
  return 0;
}
