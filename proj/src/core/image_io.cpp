#include "corridor/core/image_io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace corridor {

namespace {

[[noreturn]] void io_fail(const std::filesystem::path& path, const std::string& what) {
    raise(ErrorCategory::io, what + ": " + path.string());
}

// Skips whitespace and '#' comment lines, then reads one token.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
            continue;
        }
        if (!std::isspace(c)) {
            tok.push_back(static_cast<char>(c));
            break;
        }
    }
    while ((c = in.get()) != EOF && !std::isspace(c)) tok.push_back(static_cast<char>(c));
    return tok;
}

}  // namespace

void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) io_fail(path, "cannot open for writing");
    out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels().data()),
              static_cast<std::streamsize>(img.pixel_count()));
    if (!out) io_fail(path, "write failed");
}

GrayImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) io_fail(path, "cannot open for reading");
    if (next_token(in) != "P5") io_fail(path, "not a binary PGM (magic != P5)");
    const int w = std::stoi(next_token(in));
    const int h = std::stoi(next_token(in));
    const int maxval = std::stoi(next_token(in));
    if (w <= 0 || h <= 0 || maxval != 255) io_fail(path, "unsupported PGM header");
    GrayImage img(w, h);
    in.read(reinterpret_cast<char*>(img.pixels().data()),
            static_cast<std::streamsize>(img.pixel_count()));
    if (!in) io_fail(path, "truncated PGM data");
    return img;
}

void write_pfm(const FloatImage& img, const std::filesystem::path& path) {
    static_assert(std::endian::native == std::endian::little,
                  "PFM writer assumes a little-endian host");
    std::ofstream out(path, std::ios::binary);
    if (!out) io_fail(path, "cannot open for writing");
    out << "Pf\n" << img.width() << " " << img.height() << "\n-1.0\n";
    // PFM stores rows bottom-to-top.
    for (int y = img.height() - 1; y >= 0; --y)
        out.write(reinterpret_cast<const char*>(img.row(y)),
                  static_cast<std::streamsize>(img.width() * sizeof(float)));
    if (!out) io_fail(path, "write failed");
}

FloatImage read_pfm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) io_fail(path, "cannot open for reading");
    if (next_token(in) != "Pf") io_fail(path, "not a grayscale PFM (magic != Pf)");
    const int w = std::stoi(next_token(in));
    const int h = std::stoi(next_token(in));
    const double scale = std::stod(next_token(in));
    if (w <= 0 || h <= 0 || scale >= 0.0) io_fail(path, "unsupported PFM header (expect scale < 0)");
    FloatImage img(w, h);
    for (int y = h - 1; y >= 0; --y)
        in.read(reinterpret_cast<char*>(img.row(y)),
                static_cast<std::streamsize>(w * sizeof(float)));
    if (!in) io_fail(path, "truncated PFM data");
    return img;
}

}  // namespace corridor
