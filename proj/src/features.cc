// Copyright 2026 The Artpref Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "artpref/features.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <string>

#include "Eigen/Eigenvalues"
#include "artpref/error.h"
#include "text_util.h"

namespace artpref {
namespace {

struct HsvStats {
  double hue_sd = 0.0;
  double saturation_mean = 0.0;
  double saturation_sd = 0.0;
  double value_mean = 0.0;
  double value_sd = 0.0;
};

double PopulationStddev(const std::vector<double>& values, double mean) {
  double sum_sq = 0.0;
  for (double v : values) sum_sq += (v - mean) * (v - mean);
  return std::sqrt(sum_sq / values.size());
}

double Mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / values.size();
}

HsvStats ComputeHsvStats(const ImageRGB& image) {
  const size_t n = static_cast<size_t>(image.width()) * image.height();
  std::vector<double> saturation(n);
  std::vector<double> value(n);
  double cos_sum = 0.0;
  double sin_sum = 0.0;
  size_t chromatic = 0;
  const auto& data = image.channels();
  for (size_t i = 0; i < n; ++i) {
    const double r = data[3 * i];
    const double g = data[3 * i + 1];
    const double b = data[3 * i + 2];
    const double max = std::max({r, g, b});
    const double chroma = max - std::min({r, g, b});
    value[i] = max;
    saturation[i] = max > 0.0 ? chroma / max : 0.0;
    if (saturation[i] > EdgeParams::kChromaThreshold &&
        max > EdgeParams::kChromaThreshold) {
      double hue;
      if (max == r) {
        hue = (g - b) / chroma;
        if (hue < 0.0) hue += 6.0;
      } else if (max == g) {
        hue = (b - r) / chroma + 2.0;
      } else {
        hue = (r - g) / chroma + 4.0;
      }
      const double radians = hue * 60.0 * std::numbers::pi / 180.0;
      cos_sum += std::cos(radians);
      sin_sum += std::sin(radians);
      ++chromatic;
    }
  }
  HsvStats stats;
  stats.saturation_mean = Mean(saturation);
  stats.saturation_sd = PopulationStddev(saturation, stats.saturation_mean);
  stats.value_mean = Mean(value);
  stats.value_sd = PopulationStddev(value, stats.value_mean);
  if (chromatic > 0) {
    const double c = cos_sum / chromatic;
    const double s = sin_sum / chromatic;
    const double resultant = std::max(std::sqrt(c * c + s * s), 1e-12);
    if (resultant < 1.0) {
      stats.hue_sd = std::sqrt(-2.0 * std::log(resultant)) * 180.0 /
                     std::numbers::pi;
    }
  }
  return stats;
}

double ColourComponent(const ImageRGB& image) {
  const size_t n = static_cast<size_t>(image.width()) * image.height();
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>>
      pixels(image.channels().data(), static_cast<Eigen::Index>(n), 3);
  const Eigen::RowVector3d mean = pixels.colwise().mean();
  const Eigen::MatrixX3d centered = pixels.rowwise() - mean;
  const Eigen::Matrix3d covariance =
      (centered.transpose() * centered) / static_cast<double>(n);
  const double trace = covariance.trace();
  if (trace < 1e-15) return 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(
      covariance, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff() / trace;
}

double GrayEntropy(const std::vector<double>& gray) {
  std::array<size_t, 256> histogram{};
  for (double g : gray) {
    const long bin = std::clamp(std::lround(g * 255.0), 0L, 255L);
    ++histogram[bin];
  }
  double entropy = 0.0;
  for (size_t count : histogram) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / gray.size();
    entropy -= p * std::log2(p);
  }
  return entropy;
}

std::vector<double> SobelMagnitude(const std::vector<double>& gray, int width,
                                   int height) {
  auto at = [&](int x, int y) {
    x = std::clamp(x, 0, width - 1);
    y = std::clamp(y, 0, height - 1);
    return gray[static_cast<size_t>(y) * width + x];
  };
  std::vector<double> magnitude(gray.size());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double gx = (at(x + 1, y - 1) + 2.0 * at(x + 1, y) +
                         at(x + 1, y + 1)) -
                        (at(x - 1, y - 1) + 2.0 * at(x - 1, y) +
                         at(x - 1, y + 1));
      const double gy = (at(x - 1, y + 1) + 2.0 * at(x, y + 1) +
                         at(x + 1, y + 1)) -
                        (at(x - 1, y - 1) + 2.0 * at(x, y - 1) +
                         at(x + 1, y - 1));
      magnitude[static_cast<size_t>(y) * width + x] =
          std::sqrt(gx * gx + gy * gy);
    }
  }
  return magnitude;
}

struct EdgeDensities {
  double straight = 0.0;
  double non_straight = 0.0;
};

EdgeDensities ComputeEdgeDensities(const std::vector<double>& gray, int width,
                                   int height) {
  const std::vector<double> magnitude = SobelMagnitude(gray, width, height);
  std::vector<double> sorted = magnitude;
  const size_t rank = static_cast<size_t>(
      std::floor(EdgeParams::kEdgePercentile * (sorted.size() - 1)));
  std::nth_element(sorted.begin(), sorted.begin() + rank, sorted.end());
  const double threshold = sorted[rank] + EdgeParams::kTieTolerance;

  struct EdgePixel {
    int x;
    int y;
  };
  std::vector<EdgePixel> edges;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (magnitude[static_cast<size_t>(y) * width + x] > threshold) {
        edges.push_back({x, y});
      }
    }
  }
  const double total = static_cast<double>(width) * height;
  if (edges.empty()) return {};

  const double diagonal = std::hypot(width, height);
  const double min_length = EdgeParams::kMinSegmentFraction * diagonal;
  const long max_rho = static_cast<long>(std::ceil(diagonal)) + 1;
  std::vector<char> straight(edges.size(), 0);
  // Edge indices per rho band, rebuilt for every angle.
  std::vector<std::vector<size_t>> bands(2 * max_rho + 1);
  std::vector<std::pair<double, size_t>> run;

  for (int k = 0; k < EdgeParams::kThetaBins; ++k) {
    const double theta = k * std::numbers::pi / EdgeParams::kThetaBins;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (auto& band : bands) band.clear();
    for (size_t e = 0; e < edges.size(); ++e) {
      const long rho = std::lround(edges[e].x * c + edges[e].y * s);
      bands[rho + max_rho].push_back(e);
    }
    for (const auto& band : bands) {
      if (band.size() < 2) continue;
      run.clear();
      for (size_t e : band) {
        run.emplace_back(-edges[e].x * s + edges[e].y * c, e);
      }
      std::sort(run.begin(), run.end());
      size_t start = 0;
      for (size_t i = 1; i <= run.size(); ++i) {
        const bool split = i == run.size() ||
                           run[i].first - run[i - 1].first >
                               EdgeParams::kMaxSegmentGap;
        if (!split) continue;
        if (run[i - 1].first - run[start].first >= min_length) {
          for (size_t m = start; m < i; ++m) straight[run[m].second] = 1;
        }
        start = i;
      }
    }
  }
  const size_t straight_count =
      static_cast<size_t>(std::count(straight.begin(), straight.end(), 1));
  return {straight_count / total, (edges.size() - straight_count) / total};
}

double MirrorSymmetry(const std::vector<double>& gray, int width, int height,
                      bool left_right) {
  double sum = 0.0;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int mx = left_right ? width - 1 - x : x;
      const int my = left_right ? y : height - 1 - y;
      sum += std::abs(gray[static_cast<size_t>(y) * width + x] -
                      gray[static_cast<size_t>(my) * width + mx]);
    }
  }
  return 1.0 - sum / (static_cast<double>(width) * height);
}

[[noreturn]] void RowError(ErrorCode code, const std::string& path,
                           size_t line, const std::string& what) {
  throw Error(code, path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

int FeatureDimension(FeatureKind kind) {
  return kind == FeatureKind::kHandcrafted11 ? 11 : 2048;
}

std::string_view FeatureKindName(FeatureKind kind) {
  return kind == FeatureKind::kHandcrafted11 ? "handcrafted11" : "deep2048";
}

std::vector<double> Grayscale(const ImageRGB& image) {
  const size_t n = static_cast<size_t>(image.width()) * image.height();
  std::vector<double> gray(n);
  const auto& data = image.channels();
  for (size_t i = 0; i < n; ++i) {
    gray[i] = 0.299 * data[3 * i] + 0.587 * data[3 * i + 1] +
              0.114 * data[3 * i + 2];
  }
  return gray;
}

FeatureVector HandcraftedFeatures(const ImageRGB& image, std::string item_id) {
  const int width = image.width();
  const int height = image.height();
  if (std::min(width, height) < kMinFeatureImageSize) {
    throw Error(ErrorCode::kImageTooSmall,
                "hand-crafted features need both dimensions >= 8, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  const HsvStats hsv = ComputeHsvStats(image);
  const std::vector<double> gray = Grayscale(image);
  const EdgeDensities edges = ComputeEdgeDensities(gray, width, height);

  FeatureVector out;
  out.item_id = std::move(item_id);
  out.kind = FeatureKind::kHandcrafted11;
  out.values.resize(11);
  out.values[kHueSD] = hsv.hue_sd;
  out.values[kSaturation] = hsv.saturation_mean;
  out.values[kSaturationSD] = hsv.saturation_sd;
  out.values[kBrightness] = hsv.value_mean;
  out.values[kBrightnessSD] = hsv.value_sd;
  out.values[kColourComponent] = ColourComponent(image);
  out.values[kEntropy] = GrayEntropy(gray);
  out.values[kStraightEdgeDensity] = edges.straight;
  out.values[kNonStraightEdgeDensity] = edges.non_straight;
  out.values[kVerticalSymmetry] = MirrorSymmetry(gray, width, height, true);
  out.values[kHorizontalSymmetry] = MirrorSymmetry(gray, width, height, false);
  return out;
}

std::vector<FeatureVector> LoadFeatureFile(const std::filesystem::path& path,
                                           FeatureKind expected_kind) {
  std::vector<std::string> lines;
  if (!internal::ReadLines(path.string(), lines)) {
    throw Error(ErrorCode::kIoFailure, "cannot read " + path.string());
  }
  const int dim = FeatureDimension(expected_kind);
  if (lines.empty()) {
    throw Error(ErrorCode::kMalformedRow, path.string() + ": missing header");
  }
  const auto header = internal::SplitCsvLine(lines[0]);
  if (header.empty() || internal::Trim(header[0]) != "item_id") {
    RowError(ErrorCode::kMalformedRow, path.string(), 1,
             "header must start with item_id");
  }
  if (static_cast<int>(header.size()) - 1 != dim) {
    RowError(ErrorCode::kDimensionMismatch, path.string(), 1,
             "header has " + std::to_string(header.size() - 1) +
                 " feature columns, expected " + std::to_string(dim));
  }
  std::vector<FeatureVector> features;
  std::set<std::string, std::less<>> seen;
  for (size_t n = 1; n < lines.size(); ++n) {
    if (internal::Trim(lines[n]).empty()) continue;
    const auto fields = internal::SplitCsvLine(lines[n]);
    if (static_cast<int>(fields.size()) - 1 != dim) {
      RowError(ErrorCode::kDimensionMismatch, path.string(), n + 1,
               "row has " + std::to_string(fields.size() - 1) +
                   " values, expected " + std::to_string(dim));
    }
    FeatureVector fv;
    fv.item_id = std::string(internal::Trim(fields[0]));
    fv.kind = expected_kind;
    if (fv.item_id.empty()) {
      RowError(ErrorCode::kMalformedRow, path.string(), n + 1, "empty item_id");
    }
    if (!seen.insert(fv.item_id).second) {
      RowError(ErrorCode::kDuplicateItem, path.string(), n + 1,
               "duplicate item_id " + fv.item_id);
    }
    fv.values.reserve(dim);
    for (int k = 1; k <= dim; ++k) {
      const auto value = internal::ParseDouble(fields[k]);
      if (!value) {
        RowError(ErrorCode::kMalformedRow, path.string(), n + 1,
                 "unparseable value in column f" + std::to_string(k - 1));
      }
      if (!std::isfinite(*value)) {
        RowError(ErrorCode::kNonFiniteValue, path.string(), n + 1,
                 "non-finite value in column f" + std::to_string(k - 1));
      }
      fv.values.push_back(*value);
    }
    features.push_back(std::move(fv));
  }
  return features;
}

void WriteFeatureFile(const std::vector<FeatureVector>& features,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  const size_t dim = features.empty() ? 11 : features.front().values.size();
  out << "item_id";
  for (size_t k = 0; k < dim; ++k) out << ",f" << k;
  out << '\n';
  for (const auto& fv : features) {
    if (fv.values.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "feature vectors have inconsistent lengths");
    }
    out << fv.item_id;
    for (double v : fv.values) out << ',' << internal::FormatDouble(v);
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed " + path.string());
}

StandardizationStats FitStandardization(
    const std::vector<FeatureVector>& features) {
  if (features.empty()) {
    throw Error(ErrorCode::kEmptyInput, "cannot standardize zero rows");
  }
  const size_t dim = features.front().values.size();
  StandardizationStats stats;
  stats.means.assign(dim, 0.0);
  stats.stddevs.assign(dim, 0.0);
  for (const auto& fv : features) {
    if (fv.values.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "feature vectors have inconsistent lengths");
    }
    for (size_t k = 0; k < dim; ++k) stats.means[k] += fv.values[k];
  }
  for (double& m : stats.means) m /= features.size();
  for (const auto& fv : features) {
    for (size_t k = 0; k < dim; ++k) {
      const double d = fv.values[k] - stats.means[k];
      stats.stddevs[k] += d * d;
    }
  }
  for (double& s : stats.stddevs) {
    s = std::sqrt(s / features.size());
    if (s < 1e-12) s = 1.0;
  }
  return stats;
}

std::vector<FeatureVector> ApplyStandardization(
    const std::vector<FeatureVector>& features,
    const StandardizationStats& stats) {
  std::vector<FeatureVector> out = features;
  for (auto& fv : out) {
    if (fv.values.size() != stats.means.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "feature length does not match standardization stats");
    }
    for (size_t k = 0; k < fv.values.size(); ++k) {
      fv.values[k] = (fv.values[k] - stats.means[k]) / stats.stddevs[k];
    }
  }
  return out;
}

Eigen::MatrixXd ToMatrix(const std::vector<FeatureVector>& features) {
  if (features.empty()) return {};
  const auto dim = static_cast<Eigen::Index>(features.front().values.size());
  Eigen::MatrixXd m(static_cast<Eigen::Index>(features.size()), dim);
  for (size_t r = 0; r < features.size(); ++r) {
    if (static_cast<Eigen::Index>(features[r].values.size()) != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "feature vectors have inconsistent lengths");
    }
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = features[r].values[c];
  }
  return m;
}

}  // namespace artpref
