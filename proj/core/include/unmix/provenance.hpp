#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace unmix {

// Reproducibility header stamped on every file the CLI writes: the command,
// the tool version, the seed, and a digest per input file. Free of
// timestamps so identical runs produce identical bytes.
struct Provenance {
  std::string command;
  std::string version;
  bool has_seed = false;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> inputs;  // name -> digest

  void add_input(const std::string& name, const std::string& path);
};

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64_file(const std::string& path);
std::string digest_hex(std::uint64_t digest);

// "# key: value" comment lines suitable for CSV and PGM headers.
std::string provenance_comments(const Provenance& p);

}  // namespace unmix
