#pragma once

#include <string>

#include "imethod/multiplier.hpp"

namespace imethod {

enum class RegionLabel { vanishing, D1, D2, D3 };

std::string to_string(RegionLabel r);

struct RegionConstants {
    double c_big = 1.0 / 8.0;  ///< "a >> b" means b < c_big * a; "|x| >~ N" means |x| >= c_big * N
    double c_comp = 4.0;       ///< "a ~ b" means a <= c_comp * b (for a >= b)
};

/// Split of ordered 8-tuples (xi_1..xi_8). Requires |xi_1| >= .. >= |xi_4| and
/// |xi_5| >= .. >= |xi_8|.
///   vanishing: every argument of the first symbol (xi_1..xi_4, xi_1234) is below c_big * N
///   D1: |xi_5| >= c_big * N
///   D3: |xi_1| ~ |xi_2| ~ |xi_3| >> |xi_1234|
///   D2: everything else (the set B)
RegionLabel classify_region(const FrequencyTuple& t, const MultiplierParams& p,
                            const RegionConstants& c = {});

}  // namespace imethod
