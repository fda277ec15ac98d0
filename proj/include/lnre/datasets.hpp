#pragma once

#include <vector>

namespace lnre::data {

// Newcomb's measurements of the passage time of light (66 values, coded).
inline const std::vector<double>& newcomb() {
    static const std::vector<double> v = {
        26, 26, 26, 26, 26, 27, 27, 27, 27, 27, 27,  //
        25, 25, 25, 25, 25, 28, 28, 28, 28, 28, 28,  //
        28, 24, 24, 24, 24, 24, 29, 29, 29, 29, 29,  //
        23, 23, 23, 30, 30, 30, 22, 22, 31, 31, 21,  //
        21, 32, 32, 32, 32, 32, 20, 33, 33, 19, 34,  //
        36, 36, 36, 36, 16, 16, 37, 39, 40, -2, -44};
    return v;
}

} // namespace lnre::data
