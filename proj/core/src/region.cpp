#include "imethod/region.hpp"

#include <algorithm>
#include <cmath>

#include "imethod/error.hpp"

namespace imethod {

std::string to_string(RegionLabel r) {
    switch (r) {
        case RegionLabel::vanishing: return "vanishing";
        case RegionLabel::D1: return "D1";
        case RegionLabel::D2: return "D2";
        case RegionLabel::D3: return "D3";
    }
    return "unknown";
}

RegionLabel classify_region(const FrequencyTuple& t, const MultiplierParams& p,
                            const RegionConstants& c) {
    if (t.size() != 8) throw DomainError("classify_region: expected 8 frequencies");
    if (!(c.c_big > 0.0) || !(c.c_comp >= 1.0)) {
        throw DomainError("classify_region: need c_big > 0 and c_comp >= 1");
    }
    for (std::size_t j : {0, 1, 2, 4, 5, 6}) {
        if (std::abs(t[j]) < std::abs(t[j + 1])) {
            throw DomainError("classify_region: each block of four must be sorted by |xi|");
        }
    }
    const double a1 = std::abs(t[0]);
    const double a3 = std::abs(t[2]);
    const double x1234 = std::abs(t[0] + t[1] + t[2] + t[3]);
    const double thr = c.c_big * p.N();

    if (std::max(a1, x1234) < thr) return RegionLabel::vanishing;
    if (std::abs(t[4]) >= thr) return RegionLabel::D1;
    const bool comparable = a1 <= c.c_comp * a3;
    const bool much_smaller = x1234 < c.c_big * a3;
    return comparable && much_smaller ? RegionLabel::D3 : RegionLabel::D2;
}

}  // namespace imethod
