#include "flowpred/pgm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace flowpred {
namespace {

using Kind = PgmError::Kind;

void skip_space_and_comments(std::istream& in) {
  while (true) {
    const int c = in.peek();
    if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

long read_header_int(std::istream& in, const char* field) {
  skip_space_and_comments(in);
  std::string digits;
  while (std::isdigit(in.peek())) digits.push_back(static_cast<char>(in.get()));
  if (digits.empty() || digits.size() > 9) {
    throw PgmError(Kind::kBadHeader, std::string("PGM header: unreadable ") + field);
  }
  return std::stol(digits);
}

}  // namespace

GrayImage read_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5')) {
    throw PgmError(Kind::kBadMagic, "not a P2/P5 PGM file");
  }
  const bool binary = magic[1] == '5';
  const long width = read_header_int(in, "width");
  const long height = read_header_int(in, "height");
  const long maxval = read_header_int(in, "maxval");
  if (width <= 0 || height <= 0 || width * height > (1L << 28)) {
    throw PgmError(Kind::kBadDimensions, "PGM dimensions " + std::to_string(width) + "x" +
                                             std::to_string(height) + " invalid");
  }
  if (maxval <= 0 || maxval > 255) {
    throw PgmError(Kind::kUnsupportedDepth,
                   "PGM maxval " + std::to_string(maxval) + " unsupported (limit 255)");
  }
  GrayImage image(static_cast<int>(width), static_cast<int>(height));
  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    if (!std::isspace(in.get())) throw PgmError(Kind::kBadHeader, "PGM header not terminated");
    in.read(reinterpret_cast<char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(image.pixels.size())) {
      throw PgmError(Kind::kTruncated, "PGM raster truncated");
    }
  } else {
    for (auto& px : image.pixels) {
      skip_space_and_comments(in);
      if (in.peek() == EOF) throw PgmError(Kind::kTruncated, "PGM raster truncated");
      long value = -1;
      if (!(in >> value) || value < 0 || value > maxval) {
        throw PgmError(Kind::kBadHeader, "PGM raster holds an invalid sample");
      }
      px = static_cast<std::uint8_t>(value);
    }
  }
  // Samples are kept as stored; maxval only bounds them.
  for (auto px : image.pixels) {
    if (px > maxval) throw PgmError(Kind::kBadHeader, "PGM sample exceeds maxval");
  }
  return image;
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const GrayImage& image) {
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ContractError("cannot write " + path.string());
  write_pgm(out, image);
}

}  // namespace flowpred
