#include "mmw/field.hpp"

namespace mmw {

double SampledField::norm_sq() const {
    double s = 0;
    for (const cplx& a : amplitudes) s += std::norm(a);
    return s * grid.spacing();
}

double ModeAmplitudes::norm_sq() const {
    double s = 0;
    for (const cplx& c : coefficients) s += std::norm(c);
    return s;
}

} // namespace mmw
