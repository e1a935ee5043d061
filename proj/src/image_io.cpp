#include "ssrt/image_io.hpp"

#include <png.h>
#include <unistd.h>

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "ssrt/error.hpp"

namespace ssrt {
namespace {

std::vector<std::uint8_t> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("cannot read " + path.string());
  return bytes;
}

// ---------------------------------------------------------------- PNG

struct PngReadState {
  const std::vector<std::uint8_t>* data;
  std::size_t offset;
};

void png_read_mem(png_structp png, png_bytep out, png_size_t n) {
  auto* st = static_cast<PngReadState*>(png_get_io_ptr(png));
  if (st->offset + n > st->data->size()) png_error(png, "truncated PNG");
  std::memcpy(out, st->data->data() + st->offset, n);
  st->offset += n;
}

void png_write_mem(png_structp png, png_bytep in, png_size_t n) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), in, in + n);
}

void png_flush_mem(png_structp) {}

[[noreturn]] void png_throw(png_structp, png_const_charp msg) { throw IoError(std::string("PNG: ") + msg); }
void png_warn(png_structp, png_const_charp) {}

GrayImage decode_png(const std::vector<std::uint8_t>& bytes, const std::string& name) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_throw, png_warn);
  if (!png) throw IoError("libpng init failed");
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* p;
    png_infop* i;
    ~Guard() { png_destroy_read_struct(p, i, nullptr); }
  } guard{&png, &info};

  PngReadState st{&bytes, 0};
  png_set_read_fn(png, &st, png_read_mem);
  png_read_info(png, info);

  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  const int color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (w == 0 || h == 0) throw IoError(name + ": zero-dimension image");
  if (color != PNG_COLOR_TYPE_GRAY && color != PNG_COLOR_TYPE_GRAY_ALPHA)
    throw IoError(name + ": unsupported format (only grayscale PNG is supported)");
  if (color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_strip_alpha(png);
  if (depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  png_read_update_info(png, info);

  const std::size_t rowbytes = png_get_rowbytes(png, info);
  std::vector<std::uint8_t> raw(rowbytes * h);
  std::vector<png_bytep> rows(h);
  for (png_uint_32 r = 0; r < h; ++r) rows[r] = raw.data() + r * rowbytes;
  png_read_image(png, rows.data());

  const int out_depth = depth < 8 ? 8 : depth;
  const double maxval = out_depth == 16 ? 65535.0 : 255.0;
  // Sub-byte grays are expanded by bit replication, which keeps the
  // mapping linear over the original range.
  std::vector<double> px(static_cast<std::size_t>(w) * h);
  for (png_uint_32 r = 0; r < h; ++r) {
    for (png_uint_32 c = 0; c < w; ++c) {
      double v;
      if (out_depth == 16) {
        const std::uint8_t* p = rows[r] + 2 * c;
        v = static_cast<double>((p[0] << 8) | p[1]);
      } else {
        v = rows[r][c];
      }
      px[static_cast<std::size_t>(r) * w + c] = v / maxval;
    }
  }
  return GrayImage(w, h, std::move(px));
}

std::vector<std::uint8_t> encode_png(std::size_t w, std::size_t h, int channels, const std::uint8_t* data) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_throw, png_warn);
  if (!png) throw IoError("libpng init failed");
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* p;
    png_infop* i;
    ~Guard() { png_destroy_write_struct(p, i); }
  } guard{&png, &info};

  std::vector<std::uint8_t> out;
  png_set_write_fn(png, &out, png_write_mem, png_flush_mem);
  png_set_IHDR(png, info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h), 8,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::size_t r = 0; r < h; ++r)
    png_write_row(png, const_cast<png_bytep>(data + r * w * static_cast<std::size_t>(channels)));
  png_write_end(png, nullptr);
  return out;
}

// ---------------------------------------------------------------- PGM

class PgmHeaderReader {
 public:
  explicit PgmHeaderReader(const std::vector<std::uint8_t>& b) : bytes_(b) {}

  unsigned long next_int(const std::string& name) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) throw IoError(name + ": malformed PGM header");
    unsigned long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > 0xFFFFFFFFul) throw IoError(name + ": PGM value too large");
    }
    return v;
  }
  std::size_t pos() const { return pos_; }
  void skip(std::size_t n) { pos_ += n; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 2;
};

GrayImage decode_pgm(const std::vector<std::uint8_t>& bytes, const std::string& name) {
  const bool binary = bytes[1] == '5';
  PgmHeaderReader rd(bytes);
  const unsigned long w = rd.next_int(name);
  const unsigned long h = rd.next_int(name);
  const unsigned long maxval = rd.next_int(name);
  if (w == 0 || h == 0) throw IoError(name + ": zero-dimension image");
  if (maxval == 0 || maxval > 65535) throw IoError(name + ": unsupported PGM maxval");
  const std::size_t n = static_cast<std::size_t>(w) * h;
  std::vector<double> px(n);
  const double scale = static_cast<double>(maxval);

  if (binary) {
    rd.skip(1);  // single whitespace after maxval
    const std::size_t bpp = maxval > 255 ? 2 : 1;
    if (rd.pos() + n * bpp > bytes.size()) throw IoError(name + ": truncated PGM data");
    const std::uint8_t* p = bytes.data() + rd.pos();
    for (std::size_t i = 0; i < n; ++i) {
      unsigned v = bpp == 2 ? (p[2 * i] << 8) | p[2 * i + 1] : p[i];
      if (v > maxval) throw IoError(name + ": PGM sample exceeds maxval");
      px[i] = v / scale;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned long v = rd.next_int(name);
      if (v > maxval) throw IoError(name + ": PGM sample exceeds maxval");
      px[i] = static_cast<double>(v) / scale;
    }
  }
  return GrayImage(w, h, std::move(px));
}

std::vector<std::uint8_t> to_bytes(const GrayImage& img) {
  std::vector<std::uint8_t> b(img.size());
  auto px = img.pixels();
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = static_cast<std::uint8_t>(std::lround(px[i] * 255.0));
  return b;
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img, bool ascii) {
  const auto data = to_bytes(img);
  std::ostringstream os;
  os << (ascii ? "P2\n" : "P5\n") << img.width() << ' ' << img.height() << "\n255\n";
  if (ascii) {
    for (std::size_t r = 0; r < img.height(); ++r) {
      for (std::size_t c = 0; c < img.width(); ++c) {
        if (c) os << ' ';
        os << static_cast<unsigned>(data[r * img.width() + c]);
      }
      os << '\n';
    }
  }
  const std::string head = os.str();
  std::vector<std::uint8_t> out(head.begin(), head.end());
  if (!ascii) out.insert(out.end(), data.begin(), data.end());
  return out;
}

}  // namespace

GrayImage load_image(const std::filesystem::path& path) {
  const auto bytes = read_all(path);
  const std::string name = path.string();
  static const std::uint8_t png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), png_sig, 8) == 0) return decode_png(bytes, name);
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '2')) return decode_pgm(bytes, name);
  throw IoError(name + ": unsupported format");
}

void save_image(const GrayImage& img, const std::filesystem::path& path, RasterFormat format) {
  switch (format) {
    case RasterFormat::png: {
      const auto data = to_bytes(img);
      write_file_atomic(path, encode_png(img.width(), img.height(), 1, data.data()));
      return;
    }
    case RasterFormat::pgm_binary:
      write_file_atomic(path, encode_pgm(img, false));
      return;
    case RasterFormat::pgm_ascii:
      write_file_atomic(path, encode_pgm(img, true));
      return;
  }
}

void save_image(const GrayImage& img, const std::filesystem::path& path) {
  auto ext = path.extension().string();
  for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (ext == ".png") return save_image(img, path, RasterFormat::png);
  if (ext == ".pgm") return save_image(img, path, RasterFormat::pgm_binary);
  throw InvalidArgument("unsupported output extension '" + ext + "' (use .png or .pgm)");
}

RgbImage RgbImage::from_gray(const GrayImage& img) {
  RgbImage out(img.width(), img.height());
  auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    const auto v = static_cast<std::uint8_t>(std::lround(px[i] * 255.0));
    out.pixels[i] = {v, v, v};
  }
  return out;
}

void save_rgb_png(const RgbImage& img, const std::filesystem::path& path) {
  std::vector<std::uint8_t> flat;
  flat.reserve(img.pixels.size() * 3);
  for (const auto& p : img.pixels) flat.insert(flat.end(), p.begin(), p.end());
  write_file_atomic(path, encode_png(img.width, img.height, 3, flat.data()));
}

void write_file_atomic(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  static std::atomic<unsigned> counter{0};
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename onto " + path.string());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  write_file_atomic(path, std::vector<std::uint8_t>(text.begin(), text.end()));
}

}  // namespace ssrt
