#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "etea/rng.hpp"

namespace etea {

inline constexpr int kGenomeBits = 24;

struct RgbColor {
  int r = 0;
  int g = 0;
  int b = 0;

  friend bool operator==(const RgbColor&, const RgbColor&) = default;
};

/// A 24-bit individual. Bit 0 is the most significant bit of red, bits 8-15
/// are green and bits 16-23 are blue, each channel MSB first.
class Genome {
 public:
  Genome() = default;

  /// Packs the 24 bits into the low bits of `value`, bit 0 at position 23.
  static Genome from_packed(std::uint32_t value);

  /// Parses a 24-character string of '0'/'1'. Whitespace is ignored so that
  /// "10000000 00000000 01000000" is accepted.
  static Genome from_string(std::string_view bits);

  static Genome all_ones() { return from_packed(0xFFFFFFu); }
  static Genome all_zeros() { return from_packed(0u); }

  bool bit(int index) const { return (packed_ >> (kGenomeBits - 1 - index)) & 1u; }
  Genome with_flipped(int index) const {
    return from_packed(packed_ ^ (1u << (kGenomeBits - 1 - index)));
  }

  std::uint32_t packed() const { return packed_; }
  int ones() const;
  std::string to_string() const;

  friend bool operator==(const Genome&, const Genome&) = default;

 private:
  std::uint32_t packed_ = 0;
};

RgbColor decode_color(const Genome& genome);

double metric_m1(const RgbColor& c);
double metric_m2(const RgbColor& c);
double metric_ms(const RgbColor& c);

enum class Metric { M1, M2, MS };

double evaluate(Metric metric, const RgbColor& c);
const char* to_string(Metric metric);
/// Accepts "m1", "M1", "m2", "ms", ... ; throws Error(InvalidArgument).
Metric parse_metric(std::string_view name);

/// Hamming distance to the all-ones optimum, i.e. the count of zero bits.
int hamming_to_optimum(const Genome& genome);

Genome random_genome(Rng& rng);

struct FdcReport {
  Metric metric = Metric::M1;
  std::uint64_t sample_count = 0;
  double correlation = 0.0;
  std::uint64_t seed = 0;
};

/// Fitness-distance correlation of `metric` against hamming_to_optimum over
/// `samples` uniform random genomes drawn from Rng(seed).
///
/// Throws Error(InvalidArgument) for samples < 2 and
/// Error(UndefinedCorrelation) when either series has zero variance.
FdcReport fdc(Metric metric, std::uint64_t samples, std::uint64_t seed);

/// Sample Pearson correlation. Same error contract as fdc().
double pearson(std::span<const double> x, std::span<const double> y);

}  // namespace etea
