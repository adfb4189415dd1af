// classify --k K [--minimal-only] [--resume DIR] [--threads N] --out FILE
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ldp/classify.hpp"
#include "ldp/store.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Non-toric 1/k-log canonical del Pezzo K*-surfaces, one normal form per line"};
  int64_t k = 1;
  int threads = 1;
  bool minimal_only = false, quiet = false;
  std::string out, resume;
  app.add_option("--k", k, "hollowness level")->required()->check(CLI::PositiveNumber);
  app.add_flag("--minimal-only", minimal_only, "only the combinatorially minimal surfaces");
  app.add_option("--resume", resume, "checkpoint directory, created if missing");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out, "output file (JSON lines)")->required();
  app.add_flag("--quiet", quiet, "no progress on stderr");
  CLI11_PARSE(app, argc, argv);

  std::vector<ldp::PMatrix> found;
  try {
    if (minimal_only) {
      found = ldp::classify_comb_minimal(k);
    } else {
      ldp::ClassifyOptions opt;
      opt.threads = threads;
      opt.checkpoint_dir = resume;
      if (!quiet)
        opt.progress = [](int rho, size_t level, size_t total) {
          std::cerr << "picard " << rho << ": " << level << " surfaces, " << total << " so far\n";
        };
      found = ldp::classify_all(k, opt);
    }
  } catch (const std::exception& e) {
    std::cerr << "classify: " << e.what() << "\n";
    return 1;
  }

  std::ofstream os(out);
  if (!os) {
    std::cerr << "cannot open " << out << "\n";
    return 1;
  }
  int64_t id = 0;
  for (const auto& P : found) {
    auto r = ldp::kstar_record(P);
    r.id = ++id;
    os << ldp::to_json_line(r) << "\n";
  }
  if (!quiet) std::cerr << found.size() << " surfaces\n";
  return 0;
}
