#include "qmlbench/rng.hpp"

namespace qmlbench {

// splitmix64 finaliser
std::uint64_t Rng::mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::derive(std::string_view label) const {
  // FNV-1a so the label hash is stable across compilers
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return Rng(mix(seed_ ^ mix(h)));
}

Rng Rng::derive(std::uint64_t index) const { return Rng(mix(seed_ + 0x632be59bd9b4e019ULL * (index + 1))); }

}  // namespace qmlbench
