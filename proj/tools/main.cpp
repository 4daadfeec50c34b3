#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace embapprox;

int main(int argc, char** argv) {
  CLI::App app{"Approximability of simplicial maps into plane graphs by embeddings"};
  app.require_subcommand(1);

  std::string file;
  bool trace = false;
  auto* check = app.add_subcommand("check", "Decide approximability with the criterion for the domain shape");
  check->add_option("file", file, "Instance file")->required();
  check->add_flag("--trace", trace, "Print every iteration event");

  std::string dot_dir;
  std::optional<std::size_t> steps;
  auto* derive = app.add_subcommand("derive", "Iterate derivatives");
  derive->add_option("file", file, "Instance file")->required();
  derive->add_option("--dot", dot_dir, "Write one DOT file per step into this directory");
  derive->add_option("--steps", steps, "Number of steps (default: domain vertex count)");

  std::optional<std::uint64_t> seed;
  auto* vk = app.add_subcommand("vk", "Van Kampen obstruction (pair obstruction for two-domain files)");
  vk->add_option("file", file, "Instance file")->required();
  vk->add_option("--seed", seed, "Random lane orders and centres instead of the canonical drawing");

  std::uint64_t max_lifts = 0;
  bool witness = false;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive lift search");
  oracle->add_option("file", file, "Instance file")->required();
  oracle->add_option("--max-lifts", max_lifts, "Budget of lane assignments; 0 is unlimited");
  oracle->add_flag("--witness", witness, "Print the accepted lane orders");
  oracle->add_option("--seed", seed, "Shuffle the search order");

  auto* winding = app.add_subcommand("winding", "Winding report per domain component");
  winding->add_option("file", file, "Instance file")->required();

  cli::CorpusArgs cargs;
  std::string fixtures;
  auto* corpus = app.add_subcommand("corpus", "Generate instances and run the agreement suites");
  corpus->add_option("--shape", cargs.shapes, "path, cycle or deg3 (repeatable; default all)");
  corpus->add_option("--target", cargs.targets, "Catalog target (repeatable)");
  corpus->add_option("--k-min", cargs.k_min, "Smallest path/cycle length");
  corpus->add_option("--k-max", cargs.k_max, "Largest path/cycle length");
  corpus->add_option("--mode", cargs.mode, "exhaustive or random")->check(CLI::IsMember({"exhaustive", "random"}));
  corpus->add_option("--count", cargs.count, "Instances per target (and per k in random mode)");
  corpus->add_option("--max-vertices", cargs.max_vertices, "Largest deg3 domain");
  corpus->add_option("--seed", cargs.seed, "Seed for random corpora");
  corpus->add_option("--jobs", cargs.jobs, "Worker threads");
  corpus->add_option("--out", cargs.out, "Write the TSV here instead of stdout");
  corpus->add_flag("--quiet", cargs.quiet, "Only print the summary");
  corpus->add_option("--fixtures", fixtures, "Replay the fixture directory instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::Exit::input_error;
  }

  auto on_file = [&](auto body) { return cli::run_on_file(file, std::cerr, body); };
  if (*check) return on_file([&](const Instance& i) { return cli::check(i, trace, std::cout); });
  if (*derive) return on_file([&](const Instance& i) { return cli::derive(i, steps, dot_dir, std::cout); });
  if (*vk) return on_file([&](const Instance& i) { return cli::vk(i, seed, std::cout); });
  if (*oracle) return on_file([&](const Instance& i) { return cli::oracle(i, max_lifts, witness, seed, std::cout); });
  if (*winding) return on_file([&](const Instance& i) { return cli::winding(i, std::cout); });
  if (*corpus) {
    try {
      if (!fixtures.empty()) return cli::replay_fixtures(fixtures, std::cout);
      return cli::corpus(cargs, std::cout, std::cerr);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return cli::Exit::input_error;
    }
  }
  return cli::Exit::input_error;
}
