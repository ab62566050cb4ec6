#include "wsnfuse/wavelet.hpp"

#include <algorithm>
#include <stdexcept>

namespace wsnfuse {

namespace {

// Coefficient sources: Daubechies extremal-phase lowpass filters after
// I. Daubechies, "Ten Lectures on Wavelets" (SIAM, 1992), Table 6.1;
// spline biorthogonal pairs and the 9/7 pair after A. Cohen, I. Daubechies,
// J.-C. Feauveau, Comm. Pure Appl. Math. 45 (1992). Highpass filters are
// the alternating-sign duals aligned for the periodic analysis/synthesis
// conventions documented in wavelet.hpp; the reconstruction property is
// asserted by tests rather than re-derived here.
const std::vector<FilterBank> kBanks = {
    {"haar",
     {0.70710678118654746, 0.70710678118654746},
     {0.70710678118654746, -0.70710678118654746},
     {0.70710678118654746, 0.70710678118654746},
     {0.70710678118654746, -0.70710678118654746}},
    {"db3",
     {0.33267055295008263, 0.80689150931109266, 0.45987750211849165, -0.13501102001025458, -0.085441273882026658, 0.03522629188570954},
     {0.03522629188570954, 0.085441273882026658, -0.13501102001025458, -0.45987750211849165, 0.80689150931109266, -0.33267055295008263},
     {0.33267055295008263, 0.80689150931109266, 0.45987750211849165, -0.13501102001025458, -0.085441273882026658, 0.03522629188570954},
     {0.03522629188570954, 0.085441273882026658, -0.13501102001025458, -0.45987750211849165, 0.80689150931109266, -0.33267055295008263}},
    {"db4",
     {0.23037781330889653, 0.71484657055291578, 0.63088076792985892, -0.027983769416859858, -0.18703481171909306, 0.030841381835560764, 0.032883011666885203, -0.010597401785069032},
     {-0.010597401785069032, -0.032883011666885203, 0.030841381835560764, 0.18703481171909306, -0.027983769416859858, -0.63088076792985892, 0.71484657055291578, -0.23037781330889653},
     {0.23037781330889653, 0.71484657055291578, 0.63088076792985892, -0.027983769416859858, -0.18703481171909306, 0.030841381835560764, 0.032883011666885203, -0.010597401785069032},
     {-0.010597401785069032, -0.032883011666885203, 0.030841381835560764, 0.18703481171909306, -0.027983769416859858, -0.63088076792985892, 0.71484657055291578, -0.23037781330889653}},
    {"db10",
     {0.026670057900555551, 0.1881768000776915, 0.52720118893172552, 0.68845903945360343, 0.28117234366057747, -0.24984642432731538, -0.19594627437737705, 0.12736934033579322, 0.093057364603572348, -0.071394147166397082, -0.029457536821875813, 0.033212674059341009, 0.0036065535669561697, -0.010733175483330575, 0.0013953517470529013, 0.0019924052951850566, -0.00068585669495971151, -0.00011646685512928544, 9.3588670320069578e-05, -1.3264202894521244e-05},
     {-1.3264202894521244e-05, -9.3588670320069578e-05, -0.00011646685512928544, 0.00068585669495971151, 0.0019924052951850566, -0.0013953517470529013, -0.010733175483330575, -0.0036065535669561697, 0.033212674059341009, 0.029457536821875813, -0.071394147166397082, -0.093057364603572348, 0.12736934033579322, 0.19594627437737705, -0.24984642432731538, -0.28117234366057747, 0.68845903945360343, -0.52720118893172552, 0.1881768000776915, -0.026670057900555551},
     {0.026670057900555551, 0.1881768000776915, 0.52720118893172552, 0.68845903945360343, 0.28117234366057747, -0.24984642432731538, -0.19594627437737705, 0.12736934033579322, 0.093057364603572348, -0.071394147166397082, -0.029457536821875813, 0.033212674059341009, 0.0036065535669561697, -0.010733175483330575, 0.0013953517470529013, 0.0019924052951850566, -0.00068585669495971151, -0.00011646685512928544, 9.3588670320069578e-05, -1.3264202894521244e-05},
     {-1.3264202894521244e-05, -9.3588670320069578e-05, -0.00011646685512928544, 0.00068585669495971151, 0.0019924052951850566, -0.0013953517470529013, -0.010733175483330575, -0.0036065535669561697, 0.033212674059341009, 0.029457536821875813, -0.071394147166397082, -0.093057364603572348, 0.12736934033579322, 0.19594627437737705, -0.24984642432731538, -0.28117234366057747, 0.68845903945360343, -0.52720118893172552, 0.1881768000776915, -0.026670057900555551}},
    {"bior1.1",
     {0.70710678118654757, 0.70710678118654757},
     {0.70710678118654757, -0.70710678118654757},
     {0.70710678118654757, 0.70710678118654757},
     {0.70710678118654757, -0.70710678118654757}},
    {"bior1.3",
     {-0.088388347648318447, 0.088388347648318447, 0.70710678118654757, 0.70710678118654757, 0.088388347648318447, -0.088388347648318447},
     {0, -0, 0.70710678118654757, -0.70710678118654757},
     {0, 0, 0.70710678118654757, 0.70710678118654757},
     {-0.088388347648318447, -0.088388347648318447, 0.70710678118654757, -0.70710678118654757, 0.088388347648318447, 0.088388347648318447}},
    {"bior1.5",
     {0.01657281518405971, -0.01657281518405971, -0.12153397801643787, 0.12153397801643787, 0.70710678118654757, 0.70710678118654757, 0.12153397801643787, -0.12153397801643787, -0.01657281518405971, 0.01657281518405971},
     {0, -0, 0, -0, 0.70710678118654757, -0.70710678118654757},
     {0, 0, 0, 0, 0.70710678118654757, 0.70710678118654757},
     {0.01657281518405971, 0.01657281518405971, -0.12153397801643787, -0.12153397801643787, 0.70710678118654757, -0.70710678118654757, 0.12153397801643787, 0.12153397801643787, -0.01657281518405971, -0.01657281518405971}},
    {"bior2.4",
     {0.033145630368119419, -0.066291260736238838, -0.17677669529663689, 0.4198446513295126, 0.99436891104358249, 0.4198446513295126, -0.17677669529663689, -0.066291260736238838, 0.033145630368119419},
     {0, 0, -0, 0, -0.35355339059327379, 0.70710678118654757, -0.35355339059327379},
     {0, 0, 0, 0.35355339059327379, 0.70710678118654757, 0.35355339059327379},
     {0, 0.033145630368119419, 0.066291260736238838, -0.17677669529663689, -0.4198446513295126, 0.99436891104358249, -0.4198446513295126, -0.17677669529663689, 0.066291260736238838, 0.033145630368119419}},
    {"bior3.7",
     {0.0030210861012608843, -0.0090632583037826529, -0.016831765421310641, 0.074663985074019001, 0.031332978707362888, -0.301159125922835, -0.026499240945345472, 0.95164212189717856, 0.95164212189717856, -0.026499240945345472, -0.301159125922835, 0.031332978707362888, 0.074663985074019001, -0.016831765421310641, -0.0090632583037826529, 0.0030210861012608843},
     {0, -0, 0, -0, 0, -0, 0.17677669529663689, -0.53033008588991071, 0.53033008588991071, -0.17677669529663689},
     {0, 0, 0, 0, 0, 0, 0.17677669529663689, 0.53033008588991071, 0.53033008588991071, 0.17677669529663689},
     {0.0030210861012608843, 0.0090632583037826529, -0.016831765421310641, -0.074663985074019001, 0.031332978707362888, 0.301159125922835, -0.026499240945345472, -0.95164212189717856, 0.95164212189717856, 0.026499240945345472, -0.301159125922835, -0.031332978707362888, 0.074663985074019001, 0.016831765421310641, -0.0090632583037826529, -0.0030210861012608843}},
    {"bior4.4",
     {0.037828455506995463, -0.023849465019380001, -0.1106244044184234, 0.37740285561265374, 0.85269867900940344, 0.37740285561265374, -0.1106244044184234, -0.023849465019380001, 0.037828455506995463},
     {0, 0, 0.064538882628938435, -0.040689417609558437, -0.41809227322221221, 0.78848561640566439, -0.41809227322221221, -0.040689417609558437, 0.064538882628938435},
     {0, -0.064538882628938435, -0.040689417609558437, 0.41809227322221221, 0.78848561640566439, 0.41809227322221221, -0.040689417609558437, -0.064538882628938435},
     {0, 0.037828455506995463, 0.023849465019380001, -0.1106244044184234, -0.37740285561265374, 0.85269867900940344, -0.37740285561265374, -0.1106244044184234, 0.023849465019380001, 0.037828455506995463}},
};

std::vector<std::string> make_names() {
    std::vector<std::string> names;
    names.reserve(kBanks.size());
    for (const auto& b : kBanks) names.push_back(b.name);
    return names;
}

}  // namespace

const FilterBank& basis_filters(std::string_view name) {
    for (const auto& b : kBanks)
        if (b.name == name) return b;
    throw std::invalid_argument("unknown wavelet basis: " + std::string(name));
}

const std::vector<std::string>& supported_bases() {
    static const std::vector<std::string> names = make_names();
    return names;
}

}  // namespace wsnfuse
