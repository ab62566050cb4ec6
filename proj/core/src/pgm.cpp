#include "wsnfuse/pgm.hpp"

#include <cctype>
#include <fstream>
#include <vector>

namespace wsnfuse {

namespace {

class HeaderScanner {
public:
    HeaderScanner(const std::vector<unsigned char>& buf, std::size_t pos)
        : buf_(buf), pos_(pos) {}

    // Skips whitespace and '#' comments, then reads one unsigned decimal.
    long next_number() {
        skip();
        if (pos_ >= buf_.size() || !std::isdigit(buf_[pos_]))
            throw PgmError(PgmError::Kind::MalformedHeader,
                           "expected numeric header field");
        long v = 0;
        while (pos_ < buf_.size() && std::isdigit(buf_[pos_])) {
            v = v * 10 + (buf_[pos_] - '0');
            if (v > 1'000'000'000)
                throw PgmError(PgmError::Kind::MalformedHeader, "header field overflow");
            ++pos_;
        }
        return v;
    }

    // One whitespace byte separates the maxval from the raster.
    std::size_t payload_start() {
        if (pos_ >= buf_.size() || !std::isspace(buf_[pos_]))
            throw PgmError(PgmError::Kind::MalformedHeader,
                           "missing separator before raster");
        return pos_ + 1;
    }

private:
    void skip() {
        while (pos_ < buf_.size()) {
            if (std::isspace(buf_[pos_])) {
                ++pos_;
            } else if (buf_[pos_] == '#') {
                while (pos_ < buf_.size() && buf_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<unsigned char>& buf_;
    std::size_t pos_;
};

}  // namespace

Image load_pgm(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw PgmError(PgmError::Kind::Io, "cannot open: " + path);
    std::vector<unsigned char> buf{std::istreambuf_iterator<char>(is),
                                   std::istreambuf_iterator<char>()};
    if (buf.size() < 2 || buf[0] != 'P')
        throw PgmError(PgmError::Kind::UnsupportedFormat, "not a PGM file: " + path);
    if (buf[1] != '5')
        throw PgmError(PgmError::Kind::UnsupportedFormat,
                       std::string("unsupported magic P") + static_cast<char>(buf[1]) +
                           " (binary P5 only)");

    HeaderScanner scan(buf, 2);
    const long w = scan.next_number();
    const long h = scan.next_number();
    const long maxval = scan.next_number();
    if (maxval != 255 && maxval != 65535)
        throw PgmError(PgmError::Kind::UnsupportedMaxval,
                       "maxval " + std::to_string(maxval) + " not supported");
    const std::size_t start = scan.payload_start();

    const int depth = maxval == 255 ? 8 : 16;
    const std::size_t count = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    const std::size_t bytes = count * (depth == 8 ? 1 : 2);
    if (buf.size() - start < bytes)
        throw PgmError(PgmError::Kind::Truncated,
                       "raster has " + std::to_string(buf.size() - start) +
                           " bytes, expected " + std::to_string(bytes));

    std::vector<std::uint32_t> px(count);
    if (depth == 8) {
        for (std::size_t i = 0; i < count; ++i) px[i] = buf[start + i];
    } else {
        for (std::size_t i = 0; i < count; ++i)
            px[i] = (static_cast<std::uint32_t>(buf[start + 2 * i]) << 8) |
                    buf[start + 2 * i + 1];
    }
    try {
        return Image(static_cast<int>(w), static_cast<int>(h), depth, std::move(px));
    } catch (const std::invalid_argument& e) {
        throw PgmError(PgmError::Kind::MalformedHeader, e.what());
    }
}

void save_pgm(const Image& img, const std::string& path) {
    if (img.bit_depth != 8 && img.bit_depth != 16)
        throw std::invalid_argument("PGM supports 8- and 16-bit images only; requantize first");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw PgmError(PgmError::Kind::Io, "cannot open for writing: " + path);
    os << "P5\n" << img.width << ' ' << img.height << '\n'
       << (img.bit_depth == 8 ? 255 : 65535) << '\n';
    if (img.bit_depth == 8) {
        for (std::uint32_t v : img.pixels) os.put(static_cast<char>(v & 0xff));
    } else {
        for (std::uint32_t v : img.pixels) {
            os.put(static_cast<char>((v >> 8) & 0xff));
            os.put(static_cast<char>(v & 0xff));
        }
    }
    if (!os) throw PgmError(PgmError::Kind::Io, "write failed: " + path);
}

}  // namespace wsnfuse
