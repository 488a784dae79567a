#include "hyperlim/common.hpp"

#include <cstdlib>
#include <limits>

namespace hyperlim {

namespace {

std::atomic<std::size_t> thread_override{0};

std::size_t default_threads() {
    if (const char* env = std::getenv("HYPERLIM_THREADS")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace

std::string to_string(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc = acc * (n - r + i) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max())
            throw BudgetExceeded("binomial coefficient exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

BigInt big_pow(std::uint64_t base, std::uint64_t exponent) {
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent));
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                          std::initializer_list<std::uint64_t> indices) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    std::uint64_t key = mix64(seed + golden_gamma) ^ mix64(h);
    for (const std::uint64_t index : indices) key = mix64(key + golden_gamma * (index + 1));
    return key;
}

std::size_t thread_count() {
    const std::size_t forced = thread_override.load();
    return forced != 0 ? forced : default_threads();
}

void set_thread_count(std::size_t threads) { thread_override.store(threads); }

}  // namespace hyperlim
