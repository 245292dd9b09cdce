// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "mlgaze/augment.hpp"

#include "mlgaze/error.hpp"
#include "mlgaze/rng.hpp"
#include "mlgaze/text.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

namespace mlgaze {

namespace {

constexpr std::array<std::string_view, kVariantsPerSample> kTagNames = {
    "gaussian",     "pink_jitter", "interpolate", "cosconv",
    "timeshift",    "gauss_interp", "pink_conv",  "gauss_shift",
    "hflip",        "vflip"};

struct FftwFree {
  void operator()(void *p) const { fftw_free(p); }
};
// FFTW planning is not thread-safe; execution is.
std::mutex &planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDestroy {
  void operator()(fftw_plan_s *p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

std::vector<double> add(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = a[i] + b[i];
  return out;
}

template <class F> ErrorSeries map_channels(const ErrorSeries &in, F &&f) {
  ErrorSeries out = in;
  for (std::size_t c = 0; c < kErrorChannels.size(); ++c)
    out.channel(kErrorChannels[c]) = f(in.channel(kErrorChannels[c]), c);
  return out;
}

} // namespace

std::string_view to_string(AugmentTag tag) {
  return kTagNames[static_cast<std::size_t>(tag)];
}

std::optional<AugmentTag> parse_augment_tag(std::string_view t) {
  const auto key = text::lower(text::trim(t));
  for (std::size_t i = 0; i < kTagNames.size(); ++i)
    if (kTagNames[i] == key)
      return static_cast<AugmentTag>(i);
  return std::nullopt;
}

void AugmentParams::validate() const {
  if (!(sigma >= 0.0) || !(pink_sigma >= 0.0))
    throw UsageError("noise sigma must be >= 0");
  if (!(pink_alpha > 0.0 && pink_alpha < 2.0))
    throw UsageError("pink-noise alpha must lie in (0, 2)");
  if (window < 3)
    throw UsageError("convolution window must be >= 3");
  if (!(interp_offset > 0.0 && interp_offset < 1.0))
    throw UsageError("interpolation offset must lie in (0, 1)");
  if (shift < 0)
    throw UsageError("time shift must be >= 0");
  if (!(sample_rate_hz > 0.0))
    throw UsageError("sample rate must be > 0");
  if (!(highpass_hz >= 0.0 && highpass_hz < sample_rate_hz / 2.0))
    throw UsageError("high-pass cutoff must lie in [0, sample rate / 2)");
}

std::vector<double> gaussian_noise(std::span<const double> x, double sigma,
                                   std::uint64_t seed) {
  if (!(sigma >= 0.0))
    throw UsageError("noise sigma must be >= 0");
  std::vector<double> out(x.begin(), x.end());
  if (sigma == 0.0)
    return out;
  Rng rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  for (auto &v : out)
    v += noise(rng);
  return out;
}

std::vector<double> pink_noise(std::size_t n, double alpha, double sigma,
                               std::uint64_t seed, PinkOptions opts) {
  if (n < 8)
    throw UsageError("pink noise needs at least 8 samples");
  if (!(sigma >= 0.0))
    throw UsageError("noise sigma must be >= 0");
  if (!(alpha >= 0.0 && alpha < 2.0))
    throw UsageError("pink-noise alpha must lie in [0, 2)");

  Rng rng(seed);
  std::normal_distribution<double> white(0.0, 1.0);

  const std::size_t bins = n / 2 + 1;
  std::unique_ptr<double, FftwFree> real(
      static_cast<double *>(fftw_malloc(sizeof(double) * n)));
  std::unique_ptr<fftw_complex, FftwFree> spec(
      static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * bins)));
  const int len = static_cast<int>(n);
  std::unique_ptr<fftw_plan_s, PlanDestroy> forward, backward;
  {
    std::lock_guard lock(planner_mutex());
    forward.reset(fftw_plan_dft_r2c_1d(len, real.get(), spec.get(),
                                       FFTW_ESTIMATE));
    backward.reset(fftw_plan_dft_c2r_1d(len, spec.get(), real.get(),
                                        FFTW_ESTIMATE));
  }

  for (std::size_t i = 0; i < n; ++i)
    real.get()[i] = white(rng);
  fftw_execute(forward.get());

  // Bin k sits at frequency k * fs / n; amplitude scales as f^(-alpha/2).
  const double bin_hz = opts.sample_rate_hz / static_cast<double>(n);
  spec.get()[0][0] = 0.0;
  spec.get()[0][1] = 0.0;
  for (std::size_t k = 1; k < bins; ++k) {
    const double f = static_cast<double>(k) * bin_hz;
    double gain = std::pow(static_cast<double>(k), -alpha / 2.0);
    if (opts.highpass_hz > 0.0 && f < opts.highpass_hz)
      gain = 0.0;
    spec.get()[k][0] *= gain;
    spec.get()[k][1] *= gain;
  }
  fftw_execute(backward.get());

  std::vector<double> out(real.get(), real.get() + n);
  const double mu = std::accumulate(out.begin(), out.end(), 0.0) /
                    static_cast<double>(n);
  double ss = 0.0;
  for (auto &v : out) {
    v -= mu;
    ss += v * v;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n));
  const double scale = sd > 0.0 ? sigma / sd : 0.0;
  for (auto &v : out)
    v *= scale;
  return out;
}

std::vector<double> interpolate_variant(std::span<const double> x,
                                        double offset_frac) {
  if (!(offset_frac > 0.0 && offset_frac < 1.0))
    throw UsageError("interpolation offset must lie in (0, 1)");
  if (x.size() < 2)
    throw UsageError("interpolation needs at least 2 samples");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    out[i] = x[i] + offset_frac * (x[i + 1] - x[i]);
  out.back() = x.back();
  return out;
}

std::vector<double> raised_cosine_kernel(int window) {
  // Both end taps are zero, so N = 2 has no mass to normalize.
  if (window < 3)
    throw UsageError("convolution window must be >= 3");
  std::vector<double> w(static_cast<std::size_t>(window));
  const double denom = static_cast<double>(window - 1);
  for (int n = 0; n < window; ++n)
    w[static_cast<std::size_t>(n)] =
        0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * n / denom));
  w.front() = 0.0;
  w.back() = 0.0;
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto &v : w)
    v /= total;
  return w;
}

std::vector<double> cosine_convolve(std::span<const double> x, int window) {
  const auto w = raised_cosine_kernel(window);
  if (x.empty())
    return {};
  const long n = static_cast<long>(x.size());
  const long center = (window - 1) / 2;
  std::vector<double> out(x.size(), 0.0);
  for (long i = 0; i < n; ++i) {
    double acc = 0.0;
    for (long k = 0; k < window; ++k) {
      const long j = std::clamp(i - k + center, 0L, n - 1);
      acc += w[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(j)];
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

std::vector<double> time_shift(std::span<const double> x, int s) {
  if (s < 0 || static_cast<std::size_t>(s) >= x.size())
    throw UsageError("time shift must lie in [0, len)");
  std::vector<double> out(x.size());
  const auto n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    out[(i + static_cast<std::size_t>(s)) % n] = x[i];
  return out;
}

std::vector<double> flip_aoi(std::span<const double> errmap, FlipAxis axis) {
  if (errmap.size() != static_cast<std::size_t>(kAoiCount))
    throw UsageError("AOI flip needs exactly 15 entries");
  std::vector<double> out(errmap.size());
  for (int a = 1; a <= kAoiCount; ++a) {
    const int src = axis == FlipAxis::horizontal ? aoi_after_hflip(a)
                                                 : aoi_after_vflip(a);
    out[static_cast<std::size_t>(a - 1)] =
        errmap[static_cast<std::size_t>(src - 1)];
  }
  return out;
}

ErrorSeries flip_series(const ErrorSeries &errors, FlipAxis axis) {
  ErrorSeries out = errors;
  for (auto &a : out.aoi_ids)
    a = axis == FlipAxis::horizontal ? aoi_after_hflip(a) : aoi_after_vflip(a);
  return out;
}

AugmentedSet augment_sample(const ErrorSeries &errors, std::uint64_t seed,
                            const AugmentParams &p) {
  p.validate();
  errors.validate();
  if (errors.size() < static_cast<std::size_t>(std::max(p.window, 8)))
    throw DataError("augmentation needs at least " +
                    std::to_string(std::max(p.window, 8)) + " samples, got " +
                    std::to_string(errors.size()));
  if (static_cast<std::size_t>(p.shift) >= errors.size())
    throw DataError("time shift exceeds series length");

  const PinkOptions pink_opts{p.highpass_hz, p.sample_rate_hz};
  const auto n = errors.size();

  auto gauss = [&](const ErrorSeries &in, std::uint64_t s) {
    return map_channels(in, [&](const std::vector<double> &x, std::size_t c) {
      return gaussian_noise(x, p.sigma, derive_seed(s, c));
    });
  };
  auto pink = [&](const ErrorSeries &in, std::uint64_t s) {
    return map_channels(in, [&](const std::vector<double> &x, std::size_t c) {
      return add(x, pink_noise(n, p.pink_alpha, p.pink_sigma,
                               derive_seed(s, c), pink_opts));
    });
  };
  auto interp = [&](const ErrorSeries &in) {
    return map_channels(in, [&](const std::vector<double> &x, std::size_t) {
      return interpolate_variant(x, p.interp_offset);
    });
  };
  auto conv = [&](const ErrorSeries &in) {
    return map_channels(in, [&](const std::vector<double> &x, std::size_t) {
      return cosine_convolve(x, p.window);
    });
  };
  auto shift = [&](const ErrorSeries &in) {
    return map_channels(in, [&](const std::vector<double> &x, std::size_t) {
      return time_shift(x, p.shift);
    });
  };

  AugmentedSet set;
  set.seed = seed;
  set.variants.reserve(kVariantsPerSample);
  for (std::size_t i = 0; i < kVariantOrder.size(); ++i) {
    const std::uint64_t s = seed + i;
    const AugmentTag tag = kVariantOrder[i];
    ErrorSeries v;
    switch (tag) {
    case AugmentTag::gaussian:
      v = gauss(errors, s);
      break;
    case AugmentTag::pink_jitter:
      v = pink(errors, s);
      break;
    case AugmentTag::interpolate:
      v = interp(errors);
      break;
    case AugmentTag::cosconv:
      v = conv(errors);
      break;
    case AugmentTag::timeshift:
      v = shift(errors);
      break;
    case AugmentTag::gauss_interp:
      v = gauss(interp(errors), s);
      break;
    case AugmentTag::pink_conv:
      v = pink(conv(errors), s);
      break;
    case AugmentTag::gauss_shift:
      v = gauss(shift(errors), s);
      break;
    case AugmentTag::hflip:
      v = flip_series(errors, FlipAxis::horizontal);
      break;
    case AugmentTag::vflip:
      v = flip_series(errors, FlipAxis::vertical);
      break;
    }
    set.variants.push_back({tag, std::move(v)});
  }
  return set;
}

} // namespace mlgaze
