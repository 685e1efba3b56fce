#include "chemosem/rng.hpp"

namespace chemosem {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t replica_seed(std::uint64_t master_seed, std::uint64_t replica_id) {
    return splitmix64(splitmix64(master_seed) ^ splitmix64(~replica_id));
}

std::size_t RandomStream::below(std::size_t bound) {
    const auto range = static_cast<std::uint64_t>(bound);
    u128 product = static_cast<u128>(next()) * range;
    auto low = static_cast<std::uint64_t>(product);
    if (low < range) {
        const std::uint64_t threshold = -range % range;
        while (low < threshold) {
            product = static_cast<u128>(next()) * range;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::size_t>(product >> 64);
}

}  // namespace chemosem
