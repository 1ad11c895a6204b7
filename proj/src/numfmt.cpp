#include "dualgeo/numfmt.hpp"

#include <charconv>

#include "dualgeo/error.hpp"

namespace dualgeo {

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    if (res.ec != std::errc()) {
        throw InternalError("number does not fit the formatting buffer");
    }
    return std::string(buf, res.ptr);
}

}  // namespace dualgeo
