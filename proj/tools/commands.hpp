#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "embapprox/instance_io.hpp"

namespace embapprox::cli {

enum Exit : int { approximable = 0, not_approximable = 1, input_error = 2, out_of_scope = 3, inconclusive = 4 };

int check(const Instance& inst, bool trace, std::ostream& out);
int derive(const Instance& inst, std::optional<std::size_t> steps, const std::string& dot_dir, std::ostream& out);
int vk(const Instance& inst, std::optional<std::uint64_t> seed, std::ostream& out);
int oracle(const Instance& inst, std::uint64_t max_lifts, bool witness, std::optional<std::uint64_t> seed,
           std::ostream& out);
int winding(const Instance& inst, std::ostream& out);

struct CorpusArgs {
  std::vector<std::string> shapes;   // path, cycle, deg3
  std::vector<std::string> targets;  // empty: defaults per shape
  std::size_t k_min = 2;
  std::size_t k_max = 7;
  std::string mode = "exhaustive";
  std::size_t count = 500;
  std::size_t max_vertices = 8;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string out;
  bool quiet = false;
};

int corpus(const CorpusArgs& args, std::ostream& out, std::ostream& log);

/// Output and exit code of `command` (check, vk, winding, oracle) as stored
/// in a NAME.command.expected fixture: the exit code on the last line.
std::string fixture_output(const std::string& command, const Instance& inst);

/// Replays every NAME.command.expected file in `dir` against NAME.inst.
int replay_fixtures(const std::string& dir, std::ostream& log);

/// Reads `path` and runs `body`, mapping exceptions to exit codes.
int run_on_file(const std::string& path, std::ostream& err, const std::function<int(const Instance&)>& body);

}  // namespace embapprox::cli
