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

#include "artpref/image.h"

#include <jpeglib.h>
#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>

#include "artpref/error.h"

namespace artpref {
namespace {

struct FileCloser {
  void operator()(FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};

// libjpeg reports fatal errors through a callback that must not return.
struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
};

void JpegErrorExit(j_common_ptr cinfo) {
  auto* manager = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  std::longjmp(manager->jump, 1);
}

ImageRGB LoadJpeg(const std::filesystem::path& path) {
  std::unique_ptr<FILE, FileCloser> file(std::fopen(path.c_str(), "rb"));
  if (!file) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());

  jpeg_decompress_struct cinfo;
  JpegErrorManager error_manager;
  cinfo.err = jpeg_std_error(&error_manager.base);
  error_manager.base.error_exit = JpegErrorExit;
  std::vector<unsigned char> buffer;
  int width = 0;
  int height = 0;
  if (setjmp(error_manager.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw Error(ErrorCode::kUnsupportedFormat,
                "corrupt JPEG " + path.string());
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file.get());
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  width = static_cast<int>(cinfo.output_width);
  height = static_cast<int>(cinfo.output_height);
  const size_t stride = static_cast<size_t>(width) * 3;
  buffer.resize(stride * height);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = buffer.data() + stride * cinfo.output_scanline;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);

  std::vector<double> channels(buffer.size());
  std::transform(buffer.begin(), buffer.end(), channels.begin(),
                 [](unsigned char v) { return v / 255.0; });
  return ImageRGB(width, height, std::move(channels));
}

ImageRGB LoadPng(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "corrupt PNG " + path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<unsigned char> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    std::string message = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::kUnsupportedFormat,
                "corrupt PNG " + path.string() + ": " + message);
  }
  std::vector<double> channels(buffer.size());
  std::transform(buffer.begin(), buffer.end(), channels.begin(),
                 [](unsigned char v) { return v / 255.0; });
  return ImageRGB(static_cast<int>(image.width),
                  static_cast<int>(image.height), std::move(channels));
}

}  // namespace

ImageRGB::ImageRGB(int width, int height, Pixel fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument, "image dimensions must be >= 1");
  }
  data_.resize(static_cast<size_t>(width) * height * 3);
  for (size_t i = 0; i < data_.size(); ++i) data_[i] = fill[i % 3];
}

ImageRGB::ImageRGB(int width, int height, std::vector<double> channels)
    : width_(width), height_(height), data_(std::move(channels)) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument, "image dimensions must be >= 1");
  }
  if (data_.size() != static_cast<size_t>(width) * height * 3) {
    throw Error(ErrorCode::kDimensionMismatch,
                "channel buffer does not match width * height * 3");
  }
  for (double v : data_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "channel values must lie in [0, 1]");
    }
  }
}

ImageRGB Resize(const ImageRGB& image, int target_width, int target_height) {
  if (target_width < 1 || target_height < 1) {
    throw Error(ErrorCode::kInvalidArgument, "target dimensions must be >= 1");
  }
  if (target_width == image.width() && target_height == image.height()) {
    return image;
  }
  ImageRGB out(target_width, target_height);
  const double scale_x = static_cast<double>(image.width()) / target_width;
  const double scale_y = static_cast<double>(image.height()) / target_height;
  const int max_x = image.width() - 1;
  const int max_y = image.height() - 1;
  for (int y = 0; y < target_height; ++y) {
    const double sy =
        std::clamp((y + 0.5) * scale_y - 0.5, 0.0, static_cast<double>(max_y));
    const int y0 = static_cast<int>(std::floor(sy));
    const int y1 = std::min(y0 + 1, max_y);
    const double fy = sy - y0;
    for (int x = 0; x < target_width; ++x) {
      const double sx = std::clamp((x + 0.5) * scale_x - 0.5, 0.0,
                                   static_cast<double>(max_x));
      const int x0 = static_cast<int>(std::floor(sx));
      const int x1 = std::min(x0 + 1, max_x);
      const double fx = sx - x0;
      for (int c = 0; c < 3; ++c) {
        const double top =
            (1.0 - fx) * image.at(x0, y0, c) + fx * image.at(x1, y0, c);
        const double bottom =
            (1.0 - fx) * image.at(x0, y1, c) + fx * image.at(x1, y1, c);
        out.at(x, y, c) = std::clamp((1.0 - fy) * top + fy * bottom, 0.0, 1.0);
      }
    }
  }
  return out;
}

ImageRGB MirrorLeftRight(const ImageRGB& image) {
  ImageRGB out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      out.set_pixel(x, y, image.pixel(image.width() - 1 - x, y));
    }
  }
  return out;
}

ImageRGB MirrorTopBottom(const ImageRGB& image) {
  ImageRGB out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      out.set_pixel(x, y, image.pixel(x, image.height() - 1 - y));
    }
  }
  return out;
}

ImageRGB LoadImage(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  unsigned char magic[8] = {};
  in.read(reinterpret_cast<char*>(magic), sizeof(magic));
  if (in.gcount() >= 8 && png_sig_cmp(magic, 0, 8) == 0) return LoadPng(path);
  if (in.gcount() >= 3 && magic[0] == 0xFF && magic[1] == 0xD8 &&
      magic[2] == 0xFF) {
    return LoadJpeg(path);
  }
  throw Error(ErrorCode::kUnsupportedFormat,
              "not a PNG or JPEG file: " + path.string());
}

void SavePng(const ImageRGB& image, const std::filesystem::path& path) {
  std::vector<unsigned char> buffer(image.channels().size());
  std::transform(image.channels().begin(), image.channels().end(),
                 buffer.begin(), [](double v) {
                   return static_cast<unsigned char>(std::lround(v * 255.0));
                 });
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width());
  png.height = static_cast<png_uint_32>(image.height());
  png.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&png, path.c_str(), 0, buffer.data(), 0,
                               nullptr)) {
    throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  }
}

}  // namespace artpref
