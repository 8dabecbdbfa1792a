#include "mmw/reduce3.hpp"

#include <cmath>

#include "mmw/error.hpp"

namespace mmw {

ReducedMap3 reduce_difference_coords(const CorrelationMap& g3) {
    if (g3.order != 3) throw_physics("reduce_difference_coords: order-3 map required");
    const int n = g3.n();
    ReducedMap3 r;
    r.n = n;
    r.spacing = g3.grid.spacing();
    r.z = g3.z;
    const std::size_t cells = static_cast<std::size_t>(r.size()) * r.size();
    r.value.assign(cells, 0.0);
    r.count.assign(cells, 0);

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double* row = g3.values.data() + (static_cast<std::size_t>(i) * n + j) * n;
            const int d12 = i - j;
            for (int k = 0; k < n; ++k) {
                const std::size_t c = r.index(d12, j - k);
                r.value[c] += row[k];
                r.count[c] += 1;
            }
        }
    for (std::size_t c = 0; c < cells; ++c)
        if (r.count[c] > 0) r.value[c] /= static_cast<double>(r.count[c]);
    return r;
}

CoincidenceClassMasses mass_by_coincidence_class(const ReducedMap3& r, double lobe_spacing) {
    if (!(lobe_spacing > 0)) throw_physics("mass_by_coincidence_class: bad lobe spacing");
    CoincidenceClassMasses out;
    const int m = r.n - 1;
    for (int d12 = -m; d12 <= m; ++d12)
        for (int d23 = -m; d23 <= m; ++d23) {
            const std::size_t c = r.index(d12, d23);
            if (r.count[c] == 0) continue;
            const double mass = r.value[c] * static_cast<double>(r.count[c]);
            const long p = std::lround(r.delta(d12) / lobe_spacing);
            const long q = std::lround(r.delta(d23) / lobe_spacing);
            if (p == 0 && q == 0) out.three_bunch += mass;
            else if (p == 0 || q == 0 || p == -q) out.two_bunch += mass;
            else out.anti_bunch += mass;
        }
    return out;
}

} // namespace mmw
