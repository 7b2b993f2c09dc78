#include "gridbench/png.hpp"

#include <fstream>
#include <stdexcept>

#include <zlib.h>

namespace gridbench {

namespace {

void put_u32_be(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(std::uint8_t(v >> 24));
  out.push_back(std::uint8_t(v >> 16));
  out.push_back(std::uint8_t(v >> 8));
  out.push_back(std::uint8_t(v));
}

void append_chunk(std::vector<std::uint8_t>& out, const char type[4],
                  const std::vector<std::uint8_t>& data) {
  put_u32_be(out, std::uint32_t(data.size()));
  std::size_t crc_start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  std::uint32_t crc =
      std::uint32_t(crc32(0, out.data() + crc_start, uInt(out.size() - crc_start)));
  put_u32_be(out, crc);
}

}  // namespace

std::vector<std::uint8_t> encode_png(const RasterImage& img) {
  std::vector<std::uint8_t> out = {137, 'P', 'N', 'G', 13, 10, 26, 10};

  std::vector<std::uint8_t> ihdr;
  put_u32_be(ihdr, std::uint32_t(img.width()));
  put_u32_be(ihdr, std::uint32_t(img.height()));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(2);  // color type: truecolor
  ihdr.push_back(0);  // compression
  ihdr.push_back(0);  // filter method
  ihdr.push_back(0);  // no interlace
  append_chunk(out, "IHDR", ihdr);

  // Filter byte 0 in front of every scanline.
  std::size_t stride = std::size_t(img.width()) * 3;
  std::vector<std::uint8_t> raw;
  raw.reserve((stride + 1) * img.height());
  auto pixels = img.pixels();
  for (int y = 0; y < img.height(); ++y) {
    raw.push_back(0);
    raw.insert(raw.end(), pixels.begin() + y * stride, pixels.begin() + (y + 1) * stride);
  }

  uLongf compressed_len = compressBound(uLong(raw.size()));
  std::vector<std::uint8_t> idat(compressed_len);
  if (compress2(idat.data(), &compressed_len, raw.data(), uLong(raw.size()),
                Z_DEFAULT_COMPRESSION) != Z_OK)
    throw std::runtime_error("encode_png: deflate failed");
  idat.resize(compressed_len);
  append_chunk(out, "IDAT", idat);

  append_chunk(out, "IEND", {});
  return out;
}

void write_png(const std::filesystem::path& path, const RasterImage& img) {
  auto bytes = encode_png(img);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write png: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw std::runtime_error("failed writing png: " + path.string());
}

}  // namespace gridbench
