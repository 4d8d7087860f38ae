#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>

#include "cova/errors.hpp"
#include "cova/report.hpp"

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cova: exact checks for lattice vertex algebras, Chevalley algebras and their reductions"};
  app.require_subcommand(1);
  cova::Options o;
  std::string out, dims;

  auto common = [&](CLI::App* s) {
    s->add_option("--ring", o.ring, "coefficient ring")->check(CLI::IsMember({"Z", "Q", "F2", "F3", "F9", "Z12", "GZ12"}));
    s->add_option("--wmax", o.wmax, "weight truncation")->check(CLI::NonNegativeNumber);
    s->add_option("--seed", o.seed, "random seed");
    s->add_option("--samples", o.samples, "sample count for randomized checks");
    s->add_option("--out", out, "also write the report to FILE");
    s->add_flag("--timings", o.timings, "record per-check wall time (not reproducible)");
  };

  auto* roots = app.add_subcommand("roots", "root system data and sanity checks");
  roots->add_option("--type", o.type, "root lattice, e.g. E8")->required();
  roots->add_option("--order", o.order, "graph automorphism order");
  roots->add_option("--dump", o.dump, "write the roots to FILE, one per line");
  auto* cocycle = app.add_subcommand("cocycle-check", "sign cocycle identities and the lift correction");
  cocycle->add_option("--type", o.type, "root lattice")->required();
  cocycle->add_option("--order", o.order, "graph automorphism order");
  auto* lie = app.add_subcommand("lie", "Chevalley algebra or reduced algebra checks");
  lie->add_option("--type", o.type, "root type; with a prime field ring an exceptional pair is reduced");
  lie->add_option("--ancestor", o.ancestor, "ancestor type for a direct reduction");
  lie->add_option("--order", o.order, "graph automorphism order");
  auto* va = app.add_subcommand("va", "lattice vertex algebra checks");
  va->add_option("--lattice", o.lattice, "root lattice")->required();
  va->add_option("--dims", dims, "weight range a..b")->default_val("0..2");
  va->add_option("--gram-csv", o.gram_csv, "write weight-space Gram matrices to FILE");
  auto* covering = app.add_subcommand("covering", "fixed points, norm image and the reduced vertex algebra");
  covering->add_option("--ancestor", o.ancestor, "ancestor lattice")->required();
  covering->add_option("--order", o.order, "graph automorphism order")->required();
  covering->add_option("--weight", o.weight, "top weight")->check(CLI::NonNegativeNumber);
  auto* desk = app.add_subcommand("moonshine-desk", "cyclic cube, eta transversal and the regraded algebra");
  desk->add_option("--lattice", o.lattice, "root lattice (default A1)");
  auto* all = app.add_subcommand("all", "fixed campaign over every subcommand");
  for (auto* s : {roots, cocycle, lie, va, covering, desk, all}) common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  o.command = app.get_subcommands().front()->get_name();

  try {
    if (o.command == "va") std::tie(o.dims_lo, o.dims_hi) = cova::parse_range(dims);
    const cova::Report r = cova::run(o);
    cova::Json j;
    j["schema"] = 1;
    const cova::Json body = r.to_json();
    for (const auto& [k, v] : body.items()) j[k] = v;
    j["timestamp"] = utc_now();
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!out.empty()) {
      std::ofstream f(out);
      if (!f) {
        std::cerr << "cannot write " << out << "\n";
        return 2;
      }
      f << text;
    }
    return r.pass() ? 0 : 1;
  } catch (const cova::TruncationError& e) {
    std::cerr << "truncation overrun: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
}
