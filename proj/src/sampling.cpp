#include "arco/sampling.hpp"

#include <numeric>

namespace arco {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t StreamId::key() const noexcept {
    return (static_cast<std::uint64_t>(purpose) << 56) ^ (static_cast<std::uint64_t>(agent) << 32) ^
           static_cast<std::uint64_t>(iteration);
}

SeededRng::SeededRng(std::uint64_t seed, StreamId stream) : seed_(seed) {
    std::uint64_t mix = seed;
    const std::uint64_t a = splitmix64(mix);
    std::uint64_t state = a ^ (stream.key() * 0xD1B54A32D192ED03ULL);
    for (auto& word : s_) word = splitmix64(state);
}

std::uint64_t SeededRng::next_u64() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double SeededRng::uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

__extension__ typedef unsigned __int128 u128;

std::uint64_t SeededRng::below(std::uint64_t n) noexcept {
    // Lemire's multiply-shift with rejection; unbiased.
    u128 m = static_cast<u128>(next_u64()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            m = static_cast<u128>(next_u64()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

Matrix lhs(int n, const Bounds& bounds, SeededRng& rng) {
    if (n < 1) throw Error("lhs needs at least one point");
    const int d = bounds.dim();
    Matrix out(n, d);
    std::vector<int> perm(static_cast<std::size_t>(n));
    const double inv_n = 1.0 / n;
    for (int j = 0; j < d; ++j) {
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n - 1; i > 0; --i) {
            const auto k = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
            std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(k)]);
        }
        const double lo = bounds.lower[j];
        const double width = bounds.range(j);
        for (int i = 0; i < n; ++i) {
            const double u = (perm[static_cast<std::size_t>(i)] + rng.uniform()) * inv_n;
            out(i, j) = std::min(lo + u * width, bounds.upper[j]);
        }
    }
    return out;
}

}  // namespace arco
