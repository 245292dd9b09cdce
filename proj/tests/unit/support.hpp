// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef MLGAZE_TESTS_SUPPORT_HPP
#define MLGAZE_TESTS_SUPPORT_HPP

#include "mlgaze/features.hpp"
#include "mlgaze/geometry.hpp"
#include "mlgaze/rng.hpp"

#include <random>
#include <vector>

namespace testing_support {

using namespace mlgaze;

inline std::vector<double> random_vector(std::size_t n, std::uint64_t seed,
                                         double lo = -5.0, double hi = 5.0) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto &x : v)
    x = u(rng);
  return v;
}

/// `per_aoi` samples at every AOI in turn; all three channels get `frontal`.
inline ErrorSeries make_series(const std::vector<double> &frontal,
                               int per_aoi) {
  ErrorSeries e;
  for (std::size_t i = 0; i < frontal.size(); ++i) {
    e.frontal_err.push_back(frontal[i]);
    e.yaw_err.push_back(frontal[i]);
    e.pitch_err.push_back(frontal[i]);
    e.aoi_ids.push_back(static_cast<int>(i / static_cast<std::size_t>(per_aoi)) %
                            kAoiCount +
                        1);
    e.timestamps.push_back(static_cast<std::int64_t>(i) * 33);
  }
  return e;
}

inline ErrorSeries constant_series(double value, int per_aoi = 4) {
  return make_series(std::vector<double>(
                         static_cast<std::size_t>(per_aoi * kAoiCount), value),
                     per_aoi);
}

inline LabeledMatrix make_matrix(const Rows &rows, const std::vector<int> &labels,
                                 std::size_t n_classes) {
  LabeledMatrix m;
  m.rows = rows;
  m.labels = labels;
  for (std::size_t c = 0; c < n_classes; ++c)
    m.class_names.push_back("c" + std::to_string(c));
  const auto d = rows.empty() ? 0 : rows.front().size();
  for (std::size_t j = 0; j < d; ++j)
    m.column_names.push_back("f" + std::to_string(j));
  m.categories.assign(rows.size(), "frontal");
  for (std::size_t i = 0; i < rows.size(); ++i)
    m.groups.push_back("P" + std::to_string(i % 10));
  return m;
}

/// Isotropic Gaussian blobs around `centers`, `per_class` rows each.
inline LabeledMatrix blobs(const std::vector<std::vector<double>> &centers,
                           int per_class, double sd, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> n(0.0, sd);
  Rows rows;
  std::vector<int> labels;
  for (std::size_t c = 0; c < centers.size(); ++c)
    for (int i = 0; i < per_class; ++i) {
      std::vector<double> r = centers[c];
      for (auto &v : r)
        v += n(rng);
      rows.push_back(std::move(r));
      labels.push_back(static_cast<int>(c));
    }
  return make_matrix(rows, labels, centers.size());
}

} // namespace testing_support

#endif // MLGAZE_TESTS_SUPPORT_HPP
