#include "mmw/permanent.hpp"

#include <string>

#include "mmw/error.hpp"

namespace mmw {

cplx permanent(const cplx* m, int n) {
    switch (n) {
    case 1:
        return m[0];
    case 2:
        return m[0] * m[3] + m[1] * m[2];
    case 3:
        return m[0] * (m[4] * m[8] + m[5] * m[7]) +
               m[1] * (m[3] * m[8] + m[5] * m[6]) +
               m[2] * (m[3] * m[7] + m[4] * m[6]);
    default:
        throw_physics("permanent: unsupported size " + std::to_string(n));
    }
}

} // namespace mmw
