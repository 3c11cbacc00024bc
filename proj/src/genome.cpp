#include "etea/genome.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <vector>

#include "etea/error.hpp"

namespace etea {

namespace {
constexpr std::uint32_t kMask = (1u << kGenomeBits) - 1;
}

Genome Genome::from_packed(std::uint32_t value) {
  if (value & ~kMask) {
    throw Error(ErrorCode::InvalidArgument, "genome value exceeds 24 bits");
  }
  Genome g;
  g.packed_ = value;
  return g;
}

Genome Genome::from_string(std::string_view bits) {
  std::uint32_t value = 0;
  int count = 0;
  for (char c : bits) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::Parse, "genome string may only contain 0 and 1");
    }
    if (++count > kGenomeBits) break;
    value = (value << 1) | static_cast<std::uint32_t>(c == '1');
  }
  if (count != kGenomeBits) {
    throw Error(ErrorCode::Parse, "genome string must have exactly 24 bits");
  }
  return from_packed(value);
}

int Genome::ones() const { return std::popcount(packed_); }

std::string Genome::to_string() const {
  std::string s(kGenomeBits, '0');
  for (int i = 0; i < kGenomeBits; ++i) {
    if (bit(i)) s[i] = '1';
  }
  return s;
}

RgbColor decode_color(const Genome& genome) {
  const std::uint32_t v = genome.packed();
  return {static_cast<int>((v >> 16) & 0xFF), static_cast<int>((v >> 8) & 0xFF),
          static_cast<int>(v & 0xFF)};
}

double metric_m1(const RgbColor& c) { return c.r + c.g + c.b; }

double metric_m2(const RgbColor& c) {
  const double dr = 255.0 - c.r;
  const double dg = 255.0 - c.g;
  const double db = 255.0 - c.b;
  return 255.0 * std::sqrt(3.0) - std::sqrt(dr * dr + dg * dg + db * db);
}

double metric_ms(const RgbColor& c) { return std::min({c.r, c.g, c.b}); }

double evaluate(Metric metric, const RgbColor& c) {
  switch (metric) {
    case Metric::M1: return metric_m1(c);
    case Metric::M2: return metric_m2(c);
    case Metric::MS: return metric_ms(c);
  }
  return 0.0;
}

const char* to_string(Metric metric) {
  switch (metric) {
    case Metric::M1: return "m1";
    case Metric::M2: return "m2";
    case Metric::MS: return "ms";
  }
  return "?";
}

Metric parse_metric(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "m1") return Metric::M1;
  if (lower == "m2") return Metric::M2;
  if (lower == "ms") return Metric::MS;
  throw Error(ErrorCode::InvalidArgument,
              "unknown metric '" + std::string(name) + "' (expected m1|m2|ms)");
}

int hamming_to_optimum(const Genome& genome) {
  return kGenomeBits - genome.ones();
}

Genome random_genome(Rng& rng) {
  return Genome::from_packed(static_cast<std::uint32_t>(rng.next_u64() >> 40));
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::InvalidArgument, "pearson: series differ in length");
  }
  if (x.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "pearson: need at least 2 samples");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::UndefinedCorrelation,
                "correlation undefined: a series has zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

FdcReport fdc(Metric metric, std::uint64_t samples, std::uint64_t seed) {
  if (samples < 2) {
    throw Error(ErrorCode::InvalidArgument, "fdc needs at least 2 samples");
  }
  Rng rng(seed);
  std::vector<double> fitness(samples);
  std::vector<double> distance(samples);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const Genome g = random_genome(rng);
    fitness[i] = evaluate(metric, decode_color(g));
    distance[i] = hamming_to_optimum(g);
  }
  return {metric, samples, pearson(fitness, distance), seed};
}

}  // namespace etea
