#include "negcf/bigint.hpp"

#include <functional>

namespace negcf {

std::string join(const Coefficients& xs, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += xs[i].get_str();
    }
    return out;
}

std::size_t hash_value(const BigInt& x) {
    if (x.fits_slong_p()) return std::hash<long>{}(x.get_si());
    return std::hash<std::string>{}(x.get_str(16));
}

}  // namespace negcf
