#pragma once

#include <stdexcept>
#include <string>

#include "wsnfuse/image.hpp"

namespace wsnfuse {

struct PgmError : std::runtime_error {
    enum class Kind {
        Io,                 // unreadable / unwritable path
        UnsupportedFormat,  // magic other than P5
        MalformedHeader,    // bad tokens / non-numeric fields
        UnsupportedMaxval,  // maxval other than 255 or 65535
        Truncated,          // payload shorter than width*height samples
    };
    Kind kind;
    PgmError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// Binary PGM (P5) reader. maxval 255 -> 8-bit, maxval 65535 -> 16-bit
// (big-endian samples). '#' comments in the header are tolerated.
Image load_pgm(const std::string& path);

// Writer for 8- and 16-bit images, emitting exactly
// "P5\n<width> <height>\n<maxval>\n" plus raw samples. Other depths must be
// requantized first.
void save_pgm(const Image& img, const std::string& path);

}  // namespace wsnfuse
