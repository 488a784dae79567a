#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hyperlim {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Arity cap: 2^4 - 1 = 15 subset coordinates is the supported ceiling.
inline constexpr int max_arity = 4;

// Error hierarchy. The CLI maps these onto exit codes
// (InvalidInput/ParseError -> 2, BudgetExceeded -> 3).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class ParseError : public InvalidInput {
public:
    ParseError(std::size_t line, const std::string& what)
        : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

std::string to_string(const Rational& q);
double to_double(const Rational& q);

// Exact binomial coefficient as 64-bit; throws BudgetExceeded on overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r);
BigInt big_pow(std::uint64_t base, std::uint64_t exponent);

// ---- randomness ---------------------------------------------------------
//
// All randomness is SplitMix64 based. A stream is keyed by a 64-bit key and
// produces mix64(key + i * golden) for i = 1, 2, ...; keys for sub-streams are
// derived from the user seed by labeled hashing, so every draw is a pure
// function of (seed, label, indices) and independent of scheduling.

inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// FNV-1a over the label, then folded through mix64 with the seed and indices.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                          std::initializer_list<std::uint64_t> indices = {});

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t key) noexcept : state_(key) {}

    std::uint64_t next() noexcept {
        state_ += golden_gamma;
        return mix64(state_);
    }

    // Uniform double in [0,1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // floor(bound * x / 2^64) for a fresh draw x.
    std::uint64_t below(std::uint64_t bound) noexcept { return scale_fraction(next(), bound); }

    static std::uint64_t scale_fraction(std::uint64_t fraction, std::uint64_t bound) noexcept {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(fraction) * bound) >> 64);
    }

private:
    std::uint64_t state_;
};

// ---- summation ----------------------------------------------------------

// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            compensation_ += (sum_ - t) + x;
        else
            compensation_ += (x - t) + sum_;
        sum_ = t;
    }
    void add(const CompensatedSum& other) noexcept {
        add(other.sum_);
        add(other.compensation_);
    }
    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

// ---- parallelism --------------------------------------------------------

// Worker count used by the parallel kernels. Defaults to HYPERLIM_THREADS
// when set, otherwise std::thread::hardware_concurrency(). Results never
// depend on this value.
std::size_t thread_count();
void set_thread_count(std::size_t threads);  // 0 restores the default

// Runs body(i) for i in [0, tasks) across thread_count() workers. Callers
// write into per-task slots and reduce in task order.
template <class Body>
void parallel_for(std::size_t tasks, Body&& body) {
    const std::size_t workers = std::min(thread_count(), tasks);
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks || failed.load()) return;
            try {
                body(i);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace hyperlim
