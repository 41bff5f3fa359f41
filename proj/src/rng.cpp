#include "feemarket/rng.hpp"

namespace feemarket {

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = base;
  for (std::uint64_t p : parts) h = SplitMix64(h ^ p)();
  return h;
}

}  // namespace feemarket
