#pragma once

#include "gpcip/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace gpcip {

/// SplitMix64: the portable seedable generator used for every random choice.
/// Identical seeds give identical streams on every platform; seed 0 means
/// "derive from entropy".
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        if (seed == 0) {
            std::random_device rd;
            seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
            if (seed == 0) seed = 0x9E3779B97F4A7C15ULL;
        }
        state_ = seed;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw from [0, n) by rejection; unbiased.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("below(0)");
        const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            std::uint64_t x = next();
            if (x >= threshold) return x % n;
        }
    }

    /// Uniform draw from [0, n) for arbitrary-precision n (bitwise rejection).
    BigInt below_big(const BigInt& n) {
        if (n <= 0) throw std::invalid_argument("below_big(<=0)");
        const unsigned bits = static_cast<unsigned>(msb(n)) + 1;
        for (;;) {
            BigInt x = 0;
            unsigned got = 0;
            while (got < bits) {
                x <<= 64;
                x |= next();
                got += 64;
            }
            x >>= (got - bits);
            if (x < n) return x;
        }
    }

    /// True with probability p exactly (integer thresholding, no floats).
    bool bernoulli(const Rational& p) {
        if (p <= 0) return false;
        if (p >= 1) return true;
        return below_big(denominator(p)) < numerator(p);
    }

    /// Uniform k-subset of pool, returned sorted.
    std::vector<int> subset(std::vector<int> pool, std::size_t k) {
        if (k > pool.size()) throw std::invalid_argument("subset larger than pool");
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + static_cast<std::size_t>(below(pool.size() - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace gpcip
