#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace fresco {

/// Deterministic splitmix64 generator. Distributions are written out
/// explicitly so streams are identical across platforms and standard
/// libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() {
    return (next_u64() >> 11) * (1.0 / 9007199254740992.0);
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform integer in [0, n).
  uint64_t next_below(uint64_t n) { return n ? next_u64() % n : 0; }

  /// Standard normal via Box-Muller.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_double(), u2 = next_double();
    if (u1 < 1e-300) u1 = 1e-300;
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Deterministic sub-stream, independent of draw order on this one.
  Rng fork(uint64_t salt) const {
    return Rng(state_ ^ (0xd1342543de82ef95ull * (salt + 0x632be59bd9b4e019ull)));
  }

 private:
  uint64_t state_;
  double spare_ = 0;
  bool have_spare_ = false;
};

/// Smooth periodic 1-D noise: sum of a few seeded harmonics, zero mean.
/// `t` is in [0, 1) over the period.
class PeriodicNoise1D {
 public:
  PeriodicNoise1D(uint64_t seed, int harmonics_lo, int harmonics_hi) {
    Rng rng(seed);
    for (int h = harmonics_lo; h <= harmonics_hi; ++h) {
      amps_.push_back(rng.uniform(0.4, 1.0) / std::sqrt(double(h)));
      phases_.push_back(rng.uniform(0.0, 2.0 * 3.14159265358979323846));
      freqs_.push_back(h);
    }
    // normalize to unit peak
    double peak = 0;
    for (int i = 0; i < 512; ++i) peak = std::max(peak, std::abs(raw(i / 512.0)));
    scale_ = peak > 1e-12 ? 1.0 / peak : 1.0;
  }

  double operator()(double t) const { return raw(t) * scale_; }

 private:
  double raw(double t) const {
    double v = 0;
    for (size_t i = 0; i < amps_.size(); ++i)
      v += amps_[i] * std::sin(2.0 * 3.14159265358979323846 * freqs_[i] * t + phases_[i]);
    return v;
  }
  std::vector<double> amps_, phases_;
  std::vector<int> freqs_;
  double scale_ = 1;
};

/// Smooth value noise on the plane (few octaves of bilinear lattice noise),
/// range roughly [-1, 1].
class ValueNoise2D {
 public:
  ValueNoise2D(uint64_t seed, double base_wavelength, int octaves = 3)
      : seed_(seed), base_wl_(base_wavelength), octaves_(octaves) {}

  double operator()(double x, double y) const {
    double v = 0, amp = 1, norm = 0, wl = base_wl_;
    uint64_t salt = 0;
    for (int o = 0; o < octaves_; ++o) {
      v += amp * lattice(x / wl, y / wl, seed_ + 0x9e37ull * salt);
      norm += amp;
      amp *= 0.5;
      wl *= 0.5;
      ++salt;
    }
    return v / norm;
  }

 private:
  static double hash_to_unit(uint64_t h) {
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return (h >> 11) * (2.0 / 9007199254740992.0) - 1.0;
  }
  static double smooth(double t) { return t * t * (3 - 2 * t); }
  static double lattice(double x, double y, uint64_t seed) {
    double fx = std::floor(x), fy = std::floor(y);
    int64_t ix = int64_t(fx), iy = int64_t(fy);
    double tx = smooth(x - fx), ty = smooth(y - fy);
    auto corner = [&](int64_t cx, int64_t cy) {
      uint64_t h = seed;
      h ^= uint64_t(cx) * 0x8da6b343u + uint64_t(cy) * 0xd8163841u;
      h *= 0x2545f4914f6cdd1dull;
      return hash_to_unit(h);
    };
    double v00 = corner(ix, iy), v10 = corner(ix + 1, iy);
    double v01 = corner(ix, iy + 1), v11 = corner(ix + 1, iy + 1);
    double a = v00 + (v10 - v00) * tx;
    double b = v01 + (v11 - v01) * tx;
    return a + (b - a) * ty;
  }

  uint64_t seed_;
  double base_wl_;
  int octaves_;
};

}  // namespace fresco
