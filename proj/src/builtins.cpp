#include "negcf/expression.hpp"

#include <cmath>

namespace negcf {

namespace {

// Largest k with k * k <= n.
std::size_t isqrt(std::size_t n) {
    auto k = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (k * k > n) --k;
    while ((k + 1) * (k + 1) <= n) ++k;
    return k;
}

// Blocks (k+3), 1, 2 repeated k times, 3 for k = 0, 1, 2, ...
BigInt example1(std::size_t i) {
    std::size_t k = 0;
    std::size_t start = 0;
    while (start + k + 3 <= i) {
        start += k + 3;
        ++k;
    }
    const std::size_t r = i - start;
    if (r == 0) return BigInt(static_cast<unsigned long>(k + 3));
    if (r == 1) return 1;
    if (r == k + 2) return 3;
    return 2;
}

// 1, 2, 1, 3, 1, 4, ...
BigInt example2(std::size_t i) {
    if (i % 2 == 0) return 1;
    return BigInt(static_cast<unsigned long>(i / 2 + 2));
}

// 1, 0, 2, 0, 3, 0, ...
BigInt example3(std::size_t i) {
    if (i % 2 == 1) return 0;
    return BigInt(static_cast<unsigned long>(i / 2 + 1));
}

// Blocks of k threes, a zero and k minus-threes for k = 1, 2, ...
BigInt example4(std::size_t i) {
    const std::size_t k = isqrt(i + 1);
    const std::size_t r = i - (k * k - 1);
    if (r < k) return 3;
    if (r == k) return 0;
    return -3;
}

}  // namespace

std::optional<Generator> builtin_stream(std::string_view name) {
    if (name == "@example1") return make_generator(example1, "@example1");
    if (name == "@example2") return make_generator(example2, "@example2");
    if (name == "@example3") return make_generator(example3, "@example3");
    if (name == "@example4") return make_generator(example4, "@example4");
    return std::nullopt;
}

}  // namespace negcf
