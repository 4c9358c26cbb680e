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

#ifndef ARTPREF_FEATURES_H_
#define ARTPREF_FEATURES_H_

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "Eigen/Core"
#include "artpref/image.h"

namespace artpref {

enum class FeatureKind { kHandcrafted11, kDeep2048 };

int FeatureDimension(FeatureKind kind);
std::string_view FeatureKindName(FeatureKind kind);

struct FeatureVector {
  std::string item_id;
  FeatureKind kind = FeatureKind::kHandcrafted11;
  std::vector<double> values;

  bool operator==(const FeatureVector&) const = default;
};

inline constexpr int kCanonicalImageSize = 224;
inline constexpr int kMinFeatureImageSize = 8;

inline constexpr std::array<std::string_view, 11> kHandcraftedFeatureNames = {
    "HueSD",      "Saturation",          "SaturationSD",
    "Brightness", "BrightnessSD",        "ColourComponent",
    "Entropy",    "StraightEdgeDensity", "NonStraightEdgeDensity",
    "Vertical_Symmetry", "Horizontal_Symmetry"};

// Index of each hand-crafted feature inside FeatureVector::values.
enum HandcraftedIndex {
  kHueSD = 0,
  kSaturation,
  kSaturationSD,
  kBrightness,
  kBrightnessSD,
  kColourComponent,
  kEntropy,
  kStraightEdgeDensity,
  kNonStraightEdgeDensity,
  kVerticalSymmetry,
  kHorizontalSymmetry,
};

// Fixed parameters of the edge and line detectors.
struct EdgeParams {
  static constexpr double kEdgePercentile = 0.9;
  // Magnitudes within this distance of the percentile value count as equal
  // to it and are not edges.
  static constexpr double kTieTolerance = 1e-12;
  static constexpr int kThetaBins = 180;          // 1 degree
  static constexpr double kMinSegmentFraction = 0.05;  // of the diagonal
  static constexpr double kMaxSegmentGap = 2.0;   // pixels along the line
  static constexpr double kChromaThreshold = 0.05;
};

// Luminance 0.299 R + 0.587 G + 0.114 B, row-major.
std::vector<double> Grayscale(const ImageRGB& image);

// Computes the 11 hand-crafted features, in kHandcraftedFeatureNames order.
//
// Colour statistics use the HSV model (V = max channel, S = chroma / V).
// Standard deviations are population deviations. HueSD is the circular
// standard deviation sqrt(-2 ln R) of hue, in degrees, over pixels with
// S > 0.05 and V > 0.05; R is floored at 1e-12 and HueSD is 0 when no pixel
// qualifies. ColourComponent is the largest eigenvalue of the pixel RGB
// covariance divided by its trace (1 for a constant image). Entropy is the
// base-2 Shannon entropy of the 256-bin histogram of round(255 * luminance).
//
// Edges are Sobel magnitudes on luminance (border pixels replicated) that
// strictly exceed the 90th percentile magnitude, taken as the sorted value at
// index floor(0.9 * (n - 1)). Straight edge pixels are edge pixels that belong
// to a Hough line segment: for each 1-degree angle and 1-pixel rho band, band
// pixels are ordered along the line and split wherever consecutive pixels are
// more than 2 px apart; runs spanning at least 5% of the image diagonal count
// as segments. Densities are divided by the total pixel count.
//
// Symmetry is 1 - mean |L(p) - L(mirror(p))| with luminance L; "vertical"
// mirrors left-right and "horizontal" mirrors top-bottom.
//
// Throws kImageTooSmall when min(width, height) < 8.
FeatureVector HandcraftedFeatures(const ImageRGB& image,
                                  std::string item_id = {});

// Reads the feature CSV format: header "item_id,f0,...,f{K-1}", one row per
// item. Throws kDimensionMismatch, kDuplicateItem, kNonFiniteValue,
// kMalformedRow or kIoFailure.
std::vector<FeatureVector> LoadFeatureFile(const std::filesystem::path& path,
                                           FeatureKind expected_kind);

void WriteFeatureFile(const std::vector<FeatureVector>& features,
                      const std::filesystem::path& path);

struct StandardizationStats {
  std::vector<double> means;
  std::vector<double> stddevs;
};

// Population statistics; columns with stddev < 1e-12 get divisor 1.
StandardizationStats FitStandardization(
    const std::vector<FeatureVector>& features);
std::vector<FeatureVector> ApplyStandardization(
    const std::vector<FeatureVector>& features,
    const StandardizationStats& stats);

// Stacks feature values row by row.
Eigen::MatrixXd ToMatrix(const std::vector<FeatureVector>& features);

}  // namespace artpref

#endif  // ARTPREF_FEATURES_H_
