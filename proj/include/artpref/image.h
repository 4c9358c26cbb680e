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

#ifndef ARTPREF_IMAGE_H_
#define ARTPREF_IMAGE_H_

#include <array>
#include <filesystem>
#include <vector>

namespace artpref {

// Row-major RGB image with channels in [0, 1].
class ImageRGB {
 public:
  using Pixel = std::array<double, 3>;

  // Throws kInvalidArgument for zero dimensions.
  ImageRGB(int width, int height, Pixel fill = {0.0, 0.0, 0.0});
  // Takes width * height * 3 interleaved channel values.
  ImageRGB(int width, int height, std::vector<double> channels);

  int width() const { return width_; }
  int height() const { return height_; }

  double at(int x, int y, int channel) const {
    return data_[(static_cast<size_t>(y) * width_ + x) * 3 + channel];
  }
  double& at(int x, int y, int channel) {
    return data_[(static_cast<size_t>(y) * width_ + x) * 3 + channel];
  }
  Pixel pixel(int x, int y) const {
    return {at(x, y, 0), at(x, y, 1), at(x, y, 2)};
  }
  void set_pixel(int x, int y, const Pixel& p) {
    for (int c = 0; c < 3; ++c) at(x, y, c) = p[c];
  }

  const std::vector<double>& channels() const { return data_; }

  bool operator==(const ImageRGB& other) const = default;

 private:
  int width_;
  int height_;
  std::vector<double> data_;
};

// Bilinear resampling with half-pixel centres: output pixel (x, y) samples the
// source at ((x + 0.5) * w_in / w_out - 0.5, (y + 0.5) * h_in / h_out - 0.5),
// clamped to the source grid.
ImageRGB Resize(const ImageRGB& image, int target_width, int target_height);

ImageRGB MirrorLeftRight(const ImageRGB& image);
ImageRGB MirrorTopBottom(const ImageRGB& image);

// Decodes PNG or JPEG, chosen by file signature. Throws kIoFailure or
// kUnsupportedFormat.
ImageRGB LoadImage(const std::filesystem::path& path);

// 8-bit RGB PNG.
void SavePng(const ImageRGB& image, const std::filesystem::path& path);

}  // namespace artpref

#endif  // ARTPREF_IMAGE_H_
