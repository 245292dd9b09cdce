// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef MLGAZE_AUGMENT_HPP
#define MLGAZE_AUGMENT_HPP

#include "mlgaze/geometry.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace mlgaze {

enum class AugmentTag {
  gaussian,
  pink_jitter,
  interpolate,
  cosconv,
  timeshift,
  gauss_interp,
  pink_conv,
  gauss_shift,
  hflip,
  vflip,
};

inline constexpr std::size_t kVariantsPerSample = 10;

/// Order in which augment_sample emits its variants.
inline constexpr std::array<AugmentTag, kVariantsPerSample> kVariantOrder = {
    AugmentTag::gaussian,     AugmentTag::pink_jitter, AugmentTag::interpolate,
    AugmentTag::cosconv,      AugmentTag::timeshift,   AugmentTag::gauss_interp,
    AugmentTag::pink_conv,    AugmentTag::gauss_shift, AugmentTag::hflip,
    AugmentTag::vflip};

std::string_view to_string(AugmentTag tag);
std::optional<AugmentTag> parse_augment_tag(std::string_view text);

struct AugmentParams {
  double sigma = 0.2;         ///< Gaussian noise sd (deg)
  double pink_alpha = 0.8;    ///< PSD exponent
  double pink_sigma = 0.2;    ///< jitter sd (deg)
  double highpass_hz = 0.0;   ///< 0 disables the jitter high-pass
  double sample_rate_hz = 30.0;
  double interp_offset = 0.5; ///< fractional resampling offset
  int window = 30;            ///< raised cosine width
  int shift = 10;             ///< circular shift (samples)

  /// Throws UsageError for out-of-range values.
  void validate() const;
};

struct PinkOptions {
  double highpass_hz = 0.0;
  double sample_rate_hz = 30.0;
};

enum class FlipAxis { horizontal, vertical };

std::vector<double> gaussian_noise(std::span<const double> x, double sigma,
                                   std::uint64_t seed);

/// Zero-mean noise with PSD proportional to 1/f^alpha and sd `sigma`,
/// made by spectrally shaping white noise.
std::vector<double> pink_noise(std::size_t n, double alpha, double sigma,
                               std::uint64_t seed, PinkOptions opts = {});

/// x resampled at fractional indices i + offset; the last sample repeats.
std::vector<double> interpolate_variant(std::span<const double> x,
                                        double offset_frac);

/// Raised cosine window of width N, scaled to unit sum.
std::vector<double> raised_cosine_kernel(int window);

/// Same-length convolution with the raised cosine kernel, replicate padded.
std::vector<double> cosine_convolve(std::span<const double> x, int window);

/// Circular shift: y[i] = x[(i - s) mod n].
std::vector<double> time_shift(std::span<const double> x, int s);

/// Swap of rows 1/3 (horizontal) or columns 1/5 (vertical) of a row-major
/// 5x3 per-AOI vector.
std::vector<double> flip_aoi(std::span<const double> errmap, FlipAxis axis);

/// Relabels AOI ids so the series' per-AOI representation is flipped.
ErrorSeries flip_series(const ErrorSeries &errors, FlipAxis axis);

struct AugmentedVariant {
  AugmentTag tag;
  ErrorSeries errors;
};

struct AugmentedSet {
  std::vector<AugmentedVariant> variants;
  std::uint64_t seed = 0;
};

/// The ten variants of kVariantOrder. Variant i is seeded with seed + i.
AugmentedSet augment_sample(const ErrorSeries &errors, std::uint64_t seed,
                            const AugmentParams &params = {});

} // namespace mlgaze

#endif // MLGAZE_AUGMENT_HPP
