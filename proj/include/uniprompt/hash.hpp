#pragma once

#include <cstdint>
#include <cstring>

#include "uniprompt/tensor.hpp"

namespace uniprompt {

// FNV-1a over raw little-endian bytes; used for bitwise freeze checks.
inline std::uint64_t fnv1a_init() { return 0xcbf29ce484222325ull; }

inline std::uint64_t fnv1a_feed(std::uint64_t h, const void* bytes, std::size_t n) {
    const unsigned char* p = static_cast<const unsigned char*>(bytes);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a_feed(std::uint64_t h, const Tensor& t) {
    for (double v : t.data()) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        unsigned char le[8];
        for (int b = 0; b < 8; ++b) le[b] = static_cast<unsigned char>(bits >> (8 * b));
        h = fnv1a_feed(h, le, 8);
    }
    return h;
}

inline std::uint64_t hash_tensor(const Tensor& t) { return fnv1a_feed(fnv1a_init(), t); }

}  // namespace uniprompt
