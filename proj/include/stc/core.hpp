#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace stc {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

constexpr VertexId kNoVertex = static_cast<VertexId>(-1);
constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

/// Malformed input text (edge list, community file, labeling file).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line)
      : std::runtime_error(std::move(message)), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A community whose induced subgraph cannot be connected by the
/// available edges.
class FeasibilityError : public std::runtime_error {
 public:
  FeasibilityError(std::string message, std::size_t community_index)
      : std::runtime_error(std::move(message)), community_(community_index) {}
  std::size_t community_index() const { return community_; }

 private:
  std::size_t community_;
};

/// An exact or exhaustive routine was asked to run above its size cap.
class SizeCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Deterministic RNG helper. mersenne_twister_engine output is fully
/// specified by the standard; the bounded draw below uses rejection
/// sampling instead of std::uniform_int_distribution, whose mapping is
/// implementation-defined. Seeded runs are therefore byte-reproducible
/// across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit =
        std::mt19937_64::max() - std::mt19937_64::max() % bound;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return draw % bound;
  }

  /// True with probability numer/denom.
  bool chance(std::uint64_t numer, std::uint64_t denom) {
    return below(denom) < numer;
  }

  /// In-place Fisher-Yates shuffle with standardized draws.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[below(i)]);
    }
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace stc
