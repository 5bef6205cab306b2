#include "unmix/provenance.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace unmix {

void Provenance::add_input(const std::string& name, const std::string& path) {
  inputs.emplace_back(name, digest_hex(fnv1a64_file(path)));
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open input for digest: " + path);
  }
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buffer[1 << 14];
  while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
    const auto got = static_cast<std::size_t>(in.gcount());
    for (std::size_t i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 0x100000001b3ULL;
    }
  }
  return hash;
}

std::string digest_hex(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(digest));
  return buf;
}

std::string provenance_comments(const Provenance& p) {
  std::ostringstream out;
  out << "# unmix " << p.version << "\n";
  out << "# command: " << p.command << "\n";
  if (p.has_seed) {
    out << "# seed: " << p.seed << "\n";
  }
  for (const auto& [name, digest] : p.inputs) {
    out << "# input: " << name << " fnv1a64=" << digest << "\n";
  }
  return out.str();
}

}  // namespace unmix
